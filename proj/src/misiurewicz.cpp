#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

namespace {

lcplx f(int d, lcplx c, lcplx z) { return std::pow(z, d) + c; }
lcplx df(int d, lcplx z) { return static_cast<long double>(d) * std::pow(z, d - 1); }

ParameterRoots parameter_roots(const CycPoly1& poly, const RootOptions& opt) {
  ParameterRoots out;
  out.roots = roots_complex(to_complex(poly, opt.bits), opt);
  out.min_separation = INFINITY;
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t k = i + 1; k < out.roots.size(); ++k)
      out.min_separation = std::min(out.min_separation, std::abs(out.roots[i] - out.roots[k]));
  return out;
}

lcplx eval_c(const CycPoly1& p, lcplx c0, int bits) { return horner(p.embed(bits), c0); }

}  // namespace

ParameterRoots find_misiurewicz(FamilyContext& ctx, int n, int p, int j, const RootOptions& opt) {
  if (n < 1) throw PreconditionViolated("parameter roots need n >= 1");
  return parameter_roots(ctx.factor(n, p, j).zcoeff(0), opt);
}

ParameterRoots find_centers(FamilyContext& ctx, int p, const RootOptions& opt) {
  return parameter_roots(ctx.Q(0, p).zcoeff(0), opt);
}

bool is_superattracting(int d, lcplx c0, int max_period) {
  lcplx z = 0;
  for (int k = 1; k <= max_period; ++k) {
    z = f(d, c0, z);
    if (std::abs(z) <= 1e-9L) return true;
  }
  return false;
}

bool TransversalityReport::pass(long double rel_tol, long double sys_tol) const {
  return relative_error < rel_tol && system_residual < sys_tol && solve_discrepancy < sys_tol;
}

TransversalityReport transversality_check(FamilyContext& ctx, int n, int p, lcplx c0) {
  const int d = ctx.d();
  if (n < 2 || p < 1) throw PreconditionViolated("transversality needs n >= 2, p >= 1");
  if (is_superattracting(d, c0, n + p)) throw PreconditionViolated("critical point is periodic at this parameter");
  TransversalityReport r;
  r.d = d;
  r.n = n;
  r.p = p;
  r.c0 = c0;

  std::vector<lcplx> orbit{0};
  for (int m = 1; m <= n + p; ++m) orbit.push_back(f(d, c0, orbit.back()));
  for (int l = 1; l <= n - 1; ++l) r.epsilon.push_back(df(d, orbit[l]));
  for (int k = 0; k < p; ++k) r.delta.push_back(df(d, orbit[n + k]));
  if (std::abs(orbit[n + p] - orbit[n]) > 1e-6L * (1 + std::abs(orbit[n])))
    throw PreconditionViolated("critical orbit is not preperiodic at this parameter");
  for (auto e : r.epsilon)
    if (std::abs(e) < 1e-12L) throw PreconditionViolated("critical orbit passes through 0 before the cycle");
  for (auto e : r.delta)
    if (std::abs(e) < 1e-12L) throw PreconditionViolated("cycle passes through the critical point");

  lcplx Delta = 1;
  for (auto x : r.delta) Delta *= x;
  lcplx chain = 0, prod = 1;  // sum over l of eps_{n-1} ... eps_{l}, plus 1
  for (int l = n - 1; l >= 1; --l) {
    chain += prod;
    prod *= r.epsilon[l - 1];
  }
  chain += prod;
  r.alpha = (Delta - lcplx(1)) * chain;

  r.rho.assign(p, 1);
  for (int k = p - 1; k >= 0; --k) r.rho[k] = r.delta[k] * (k + 1 < p ? r.rho[k + 1] : lcplx(1));
  r.lambda.assign(n - 1, 0);
  lcplx tail = Delta - lcplx(1);
  for (int l = n - 1; l >= 1; --l) {
    tail *= r.epsilon[l - 1];
    r.lambda[l - 1] = tail;
  }

  r.rhs_closed_form = r.alpha;
  for (int k = 0; k < p; ++k) r.rhs_closed_form += r.rho[k] / r.delta[k];

  r.lhs_symbolic = eval_c(derivative_c(ctx.phi(n, p)).zcoeff(0), c0, default_precision_bits());
  r.relative_error = std::abs(r.lhs_symbolic - r.rhs_closed_form) / std::max(1.0L, std::abs(r.lhs_symbolic));

  // unknowns: rho_0..rho_{p-1}, then lambda_1..lambda_{n-1}
  const int N = p + n - 1;
  using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>;
  Mat A = Mat::Zero(N, N);
  Vec b = Vec::Zero(N);
  auto cd = [](lcplx x) { return std::complex<double>(static_cast<double>(x.real()), static_cast<double>(x.imag())); };
  auto lam = [&](int l) { return p + l - 1; };
  auto eps = [&](int l) { return cd(r.epsilon[l - 1]); };
  A(0, 0) = -1.0;
  A(0, p - 1) += 1.0 / cd(r.delta[p - 1]);
  A(0, lam(n - 1)) += 1.0 / eps(n - 1);
  for (int k = 1; k < p; ++k) {
    A(k, k - 1) = 1.0 / cd(r.delta[k - 1]);
    A(k, k) = -1.0;
  }
  A(p, lam(1)) = 1.0 + 1.0 / eps(1);
  for (int l = 2; l <= n - 1; ++l) A(p, lam(l)) = 1.0 / eps(l);
  b(p) = cd(r.alpha);
  for (int l = 1; l <= n - 2; ++l) {
    A(p + l, lam(l)) = 1.0 / eps(l);
    A(p + l, lam(l + 1)) = -1.0;
  }

  Vec x(N);
  for (int k = 0; k < p; ++k) x(k) = cd(r.rho[k]);
  for (int l = 1; l <= n - 1; ++l) x(lam(l)) = cd(r.lambda[l - 1]);
  double scale = std::max(1.0, A.norm() * x.norm() + b.norm());
  r.system_residual = (A * x - b).norm() / scale;
  Vec y = A.partialPivLu().solve(b);
  r.solve_discrepancy = (y - x).norm() / std::max(1.0, x.norm());
  return r;
}

int SingularReport::total_multiplicity() const {
  int s = 0;
  for (const auto& pt : points) s += pt.multiplicity;
  return s;
}

bool SingularReport::gradients_nonzero(long double tol) const {
  for (const auto& pt : points)
    if (pt.min_gradient <= tol) return false;
  return true;
}

bool SingularReport::tangents_distinct(long double angle_tol) const {
  for (const auto& pt : points)
    if (pt.min_angle <= angle_tol) return false;
  return true;
}

SingularReport singular_point_report(FamilyContext& ctx, int n, int p, const RootOptions& opt) {
  const int d = ctx.d();
  if (n < 1) throw PreconditionViolated("singular points need n >= 1");
  SingularReport rep;
  rep.d = d;
  rep.n = n;
  rep.p = p;
  if (d == 2) return rep;  // a single factor has no common roots with another

  std::vector<CycPoly2> dc, dz;
  for (int j = 1; j < d; ++j) {
    dc.push_back(derivative_c(ctx.factor(n, p, j)));
    dz.push_back(derivative_z(ctx.factor(n, p, j)));
  }

  for (lcplx c0 : find_centers(ctx, p, opt).roots) {
    std::vector<RootCluster> pre;
    if (n == 1)
      pre.push_back({lcplx(0), 1});
    else
      pre = specialized_roots(ctx.iterate(n - 1), c0, opt);
    for (const auto& rc : pre) {
      SingularPoint pt;
      pt.c0 = c0;
      pt.z0 = rc.z;
      pt.multiplicity = rc.multiplicity;
      pt.min_gradient = INFINITY;
      pt.min_angle = std::numbers::pi_v<long double> / 2;
      for (int j = 1; j < d; ++j) {
        pt.values.push_back(eval_point(ctx.factor(n, p, j), c0, rc.z, opt.bits));
        lcplx gc = eval_point(dc[j - 1], c0, rc.z, opt.bits);
        lcplx gz = eval_point(dz[j - 1], c0, rc.z, opt.bits);
        pt.gradients.emplace_back(gc, gz);
        pt.min_gradient = std::min(pt.min_gradient, std::hypot(std::abs(gc), std::abs(gz)));
      }
      // tangent direction of q = 0 is (-dq/dz, dq/dc)
      for (std::size_t a = 0; a < pt.gradients.size(); ++a)
        for (std::size_t b = a + 1; b < pt.gradients.size(); ++b) {
          auto [ac, az] = pt.gradients[a];
          auto [bc, bz] = pt.gradients[b];
          lcplx inner = std::conj(-az) * -bz + std::conj(ac) * bc;
          long double na = std::hypot(std::abs(ac), std::abs(az)), nb = std::hypot(std::abs(bc), std::abs(bz));
          if (na == 0 || nb == 0) {
            pt.min_angle = 0;
            continue;
          }
          long double cosv = std::min(1.0L, std::abs(inner) / (na * nb));
          pt.min_angle = std::min(pt.min_angle, std::acos(cosv));
        }
      rep.points.push_back(std::move(pt));
    }
  }
  return rep;
}

void require_ordinary(const SingularReport& r, long double angle_tol) {
  for (const auto& pt : r.points) {
    if (pt.min_angle > angle_tol && pt.min_gradient > 1e-8L) continue;
    std::ostringstream os;
    os << "degenerate tangency at c=" << pt.c0 << ", z=" << pt.z0 << " (angle " << pt.min_angle << ", gradient "
       << pt.min_gradient << ")";
    throw DegenerateTangent(os.str());
  }
}

}  // namespace dynacurve
