#include "dynacurve/dynatomic.hpp"

#include <cmath>

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"

namespace dynacurve {

FamilyContext::FamilyContext(int d, ResourceLimits limits) : d_(d), limits_(limits) {
  if (d < 2) throw PreconditionViolated("family degree must be at least 2");
}

double FamilyContext::estimated_bytes(int d, int n, int p) {
  int N = n + p;
  // all coefficients of f^N are nonnegative, so f^N(1, 1) bounds each of them
  double lg = 1;  // log2 f^1(1,1) = log2 2
  for (int k = 1; k < N; ++k) lg = d * lg + std::log2(1 + std::exp2(-d * lg));
  double rows = std::pow(d, N - 1) + 1;
  double terms = rows * (rows / 2 + 1);
  return terms * (lg / 8 + 32) * cyc_rank(d);
}

void FamilyContext::check_cap(int n, int p) const {
  if (n < 0 || p < 1) throw PreconditionViolated("need n >= 0 and p >= 1");
  double deg = std::pow(d_, n + p);
  if (deg > static_cast<double>(limits_.max_degree))
    throw ResourceCapExceeded("degree d^(n+p) = " + std::to_string(static_cast<long long>(deg)) + " exceeds cap " +
                              std::to_string(limits_.max_degree));
  double bytes = estimated_bytes(d_, n, p);
  if (bytes > limits_.max_bytes)
    throw ResourceCapExceeded("estimated storage " + std::to_string(static_cast<long long>(bytes / (1 << 20))) +
                              " MiB exceeds the memory ceiling");
}

const CycPoly2& FamilyContext::iterate(int k) {
  std::lock_guard lock(mu_);
  if (iterates_.empty()) iterates_.push_back(CycPoly2::z(d_));
  while (static_cast<int>(iterates_.size()) <= k) iterates_.push_back(compose_family(iterates_.back()));
  return iterates_[k];
}

const CycPoly2& FamilyContext::phi(int n, int p) {
  std::lock_guard lock(mu_);
  check_cap(n, p);
  auto key = std::make_pair(n, p);
  if (auto it = phi_.find(key); it != phi_.end()) return it->second;
  CycPoly2 r = iterate(n + p) - iterate(n);
  return phi_.emplace(key, std::move(r)).first->second;
}

CycPoly2 FamilyContext::Q_by_division(int n, int p) {
  std::lock_guard lock(mu_);
  check_cap(n, p);
  CycPoly2 den = n == 0 ? CycPoly2::constant(CycInt(d_, 1)) : phi(n - 1, p);
  for (long k : proper_divisors(p)) den = multiply(den, Q(n, static_cast<int>(k)));
  return divide_exact(phi(n, p), den);
}

CycPoly2 FamilyContext::Q_by_composition(int n, int p) {
  if (n < 2) throw PreconditionViolated("composition route needs n >= 2");
  std::lock_guard lock(mu_);
  check_cap(n, p);
  return compose_family(Q(n - 1, p));
}

const CycPoly2& FamilyContext::Q(int n, int p) {
  std::lock_guard lock(mu_);
  check_cap(n, p);
  auto key = std::make_pair(n, p);
  if (auto it = Q_.find(key); it != Q_.end()) return it->second;
  CycPoly2 r = n >= 2 ? Q_by_composition(n, p) : Q_by_division(n, p);
  return Q_.emplace(key, std::move(r)).first->second;
}

const CycPoly2& FamilyContext::factor(int n, int p, int j) {
  if (n < 1 || j < 1 || j >= d_) throw PreconditionViolated("factor needs n >= 1 and 1 <= j <= d-1");
  std::lock_guard lock(mu_);
  check_cap(n, p);
  auto key = std::make_tuple(n, p, j);
  if (auto it = factor_.find(key); it != factor_.end()) return it->second;
  // q^j_1 = Q_0(c, w^-j z), then pull back by f
  CycPoly2 r = n == 1 ? rotate_z(Q(0, p), d_ - j) : compose_family(factor(n - 1, p, j));
  return factor_.emplace(key, std::move(r)).first->second;
}

void FamilyContext::clear() {
  std::lock_guard lock(mu_);
  iterates_.clear();
  phi_.clear();
  Q_.clear();
  factor_.clear();
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks)
    if (c.applicable && !c.pass) return false;
  return true;
}

namespace {

IdentityCheck run(const std::string& name, bool applicable, auto&& body) {
  IdentityCheck c;
  c.name = name;
  c.applicable = applicable;
  if (!applicable) return c;
  try {
    c.pass = body(c.detail);
  } catch (const NonZeroRemainder& e) {
    c.pass = false;
    c.detail = e.what();
  }
  return c;
}

}  // namespace

IdentityReport verify_identities(FamilyContext& ctx, int n, int p) {
  ctx.check_cap(n, p);
  int d = ctx.d();
  IdentityReport rep{d, n, p, {}};
  auto divs = divisors(p);

  rep.checks.push_back(run("product", true, [&](std::string&) {
    CycPoly2 prod = CycPoly2::constant(CycInt(d, 1));
    for (long k : divs) prod = multiply(prod, ctx.Q(n, static_cast<int>(k)));
    if (n >= 1) prod = multiply(prod, ctx.phi(n - 1, p));
    return prod == ctx.phi(n, p);
  }));

  rep.checks.push_back(run("pullback of periodic", n >= 1, [&](std::string&) {
    return compose_family(ctx.Q(0, p)) == multiply(ctx.Q(0, p), ctx.Q(1, p));
  }));

  rep.checks.push_back(run("composition equals division", n >= 2,
                           [&](std::string&) { return ctx.Q_by_composition(n, p) == ctx.Q_by_division(n, p); }));

  rep.checks.push_back(run("factor product", n >= 1, [&](std::string&) {
    CycPoly2 prod = ctx.factor(n, p, 1);
    for (int j = 2; j < d; ++j) prod = multiply(prod, ctx.factor(n, p, j));
    return prod == ctx.Q(n, p);
  }));

  rep.checks.push_back(run("degrees", true, [&](std::string& detail) {
    const auto& q = ctx.Q(n, p);
    bool ok = q.is_monic_z() && mpz_class(q.deg_z()) == degree_Q(d, n, p);
    detail = "deg_z Q = " + std::to_string(q.deg_z());
    if (n >= 1)
      for (int j = 1; j < d; ++j) {
        const auto& f = ctx.factor(n, p, j);
        ok = ok && f.is_monic_z() && mpz_class(f.deg_z()) == degree_factor(d, n, p);
      }
    return ok;
  }));
  return rep;
}

}  // namespace dynacurve
