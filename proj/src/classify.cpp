#include <cmath>
#include <numbers>
#include <numeric>

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

namespace {

constexpr long double kOrbitTol = 1e-9L;
constexpr long double kMultiplierTol = 1e-6L;

lcplx step(int d, lcplx c, lcplx z) {
  lcplx w = 1;
  for (int i = 0; i < d; ++i) w *= z;
  return w + c;
}

lcplx deriv(int d, lcplx z) {
  lcplx w = static_cast<long double>(d);
  for (int i = 1; i < d; ++i) w *= z;
  return w;
}

std::vector<lcplx> orbit(int d, lcplx c, lcplx z, int len) {
  std::vector<lcplx> w{z};
  for (int i = 0; i < len; ++i) w.push_back(step(d, c, w.back()));
  return w;
}

bool near_zero(lcplx z) { return std::abs(z) <= kOrbitTol; }

bool primitive_root_of_unity(lcplx x, int q) {
  for (int r = 1; r < q; ++r) {
    if (std::gcd(r, q) != 1) continue;
    long double a = 2 * std::numbers::pi_v<long double> * r / q;
    if (std::abs(x - lcplx(std::cos(a), std::sin(a))) < kMultiplierTol) return true;
  }
  return false;
}

}  // namespace

bool orbit_close(lcplx a, lcplx b) { return std::abs(a - b) <= kOrbitTol * (1 + std::abs(a)); }

bool in_multibrot(int d, lcplx c, int max_iter) {
  long double R = std::max(std::pow(2.0L, 1.0L / (d - 1)), std::pow(std::abs(c), 1.0L / (d - 1))) + 1;
  lcplx z = 0;
  for (int i = 0; i < max_iter; ++i) {
    z = step(d, c, z);
    if (std::abs(z) > R) return false;
  }
  return true;
}

OrbitType orbit_type(int d, lcplx c0, lcplx z, int max_pre, int per) {
  auto w = orbit(d, c0, z, max_pre + per);
  OrbitType t;
  for (long k : divisors(per)) {
    if (!orbit_close(w[max_pre], w[max_pre + k])) continue;
    t.period = static_cast<int>(k);
    break;
  }
  if (t.period < 0) return t;
  for (int l = 0; l <= max_pre; ++l)
    if (orbit_close(w[l], w[l + t.period])) {
      t.preperiod = l;
      break;
    }
  t.multiplier = 1;
  for (int i = 0; i < t.period; ++i) t.multiplier *= deriv(d, w[max_pre + i]);
  return t;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::C0: return "C0";
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3: return "C3";
    case Condition::C4: return "C4";
    default: return "unclassified";
  }
}

int RootClassification::total_multiplicity() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

int RootClassification::unclassified() const {
  int s = 0;
  for (const auto& r : roots) s += r.condition == Condition::Unclassified;
  return s;
}

namespace {

ClassifiedRoot classify_one(int d, int n, int p, lcplx c0, const RootCluster& rc) {
  ClassifiedRoot out;
  out.z = rc.z;
  out.multiplicity = rc.multiplicity;
  auto w = orbit(d, c0, rc.z, n + p);
  auto t = orbit_type(d, c0, rc.z, n, p);
  out.preperiod = t.preperiod;
  out.period = t.period;
  out.multiplier = t.multiplier;
  bool exact = t.preperiod == n && t.period == p;
  bool hits_zero = false;
  for (int l = 0; l < n; ++l) hits_zero = hits_zero || near_zero(w[l]);

  if (n >= 1 && near_zero(w[n - 1]) && orbit_close(w[n], w[n + p])) {
    out.condition = Condition::C4;
    out.literal_c4 = t.preperiod == n - 1 && t.period == p;
  } else if (exact && hits_zero) {
    out.condition = Condition::C1;
  } else if (exact && std::abs(t.multiplier - lcplx(1)) < kMultiplierTol) {
    out.condition = Condition::C2;
  } else if (t.preperiod == n && t.period > 0 && t.period < p && primitive_root_of_unity(t.multiplier, p / t.period)) {
    out.condition = Condition::C3;
  } else if (exact) {
    out.condition = Condition::C0;
  }
  return out;
}

RootClassification classify_with(FamilyContext& ctx, int n, int p, lcplx c0, const RootOptions& opt, bool extended) {
  const auto& Q = ctx.Q(n, p);
  RootClassification rep;
  rep.d = ctx.d();
  rep.n = n;
  rep.p = p;
  rep.c0 = c0;
  rep.retried = extended;
  auto coeffs = specialize_c(Q, c0, opt.bits);
  for (const auto& rc : specialized_roots(Q, c0, opt, extended)) {
    auto r = classify_one(ctx.d(), n, p, c0, rc);
    r.residual = backward_error(coeffs, rc.z, rc.multiplicity);
    rep.roots.push_back(r);
  }
  return rep;
}

}  // namespace

RootClassification classify_roots(FamilyContext& ctx, int n, int p, lcplx c0, const RootOptions& opt) {
  auto rep = classify_with(ctx, n, p, c0, opt, false);
  if (rep.unclassified() == 0) return rep;
  return classify_with(ctx, n, p, c0, opt, true);
}

std::vector<RootCluster> exact_preperiodic_points(FamilyContext& ctx, int n, int p, lcplx c0, const RootOptions& opt) {
  const int d = ctx.d();
  // Newton on f^(n+p) - f^n evaluated along the orbit.
  auto polish = [&](lcplx z) {
    auto gap = [&](lcplx x, lcplx& dg) {
      lcplx w = x, dw = 1, a = 0, da = 0;
      for (int k = 0; k < n + p; ++k) {
        if (k == n) {
          a = w;
          da = dw;
        }
        dw *= deriv(d, w);
        w = step(d, c0, w);
      }
      dg = dw - da;
      return w - a;
    };
    lcplx dg;
    lcplx g = gap(z, dg);
    for (int it = 0; it < 8 && dg != lcplx(0); ++it) {
      lcplx next = z - g / dg, dn;
      lcplx gn = gap(next, dn);
      if (!(std::abs(gn) < std::abs(g))) break;
      z = next;
      g = gn;
      dg = dn;
    }
    return z;
  };
  std::vector<RootCluster> out;
  for (auto rc : specialized_roots(ctx.phi(n, p), c0, opt)) {
    if (rc.multiplicity == 1) rc.z = polish(rc.z);
    auto t = orbit_type(d, c0, rc.z, n, p);
    if (t.preperiod == n && t.period == p) out.push_back(rc);
  }
  return out;
}

}  // namespace dynacurve
