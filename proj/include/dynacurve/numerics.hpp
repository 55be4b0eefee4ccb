#pragma once
// Floating-point side: polynomial roots, Multibrot membership, classification
// of the roots of a specialized Q_{n,p}(c0, .), Misiurewicz parameters,
// the transversality identity and tangent checks at singular points.

#include <vector>

#include "dynacurve/cycpoly.hpp"
#include "dynacurve/dynatomic.hpp"

namespace dynacurve {

using ComplexPoly = std::vector<lcplx>;  // ascending powers

struct RootOptions {
  int bits = default_precision_bits();  // working precision; above 64 uses MPFR
  int max_iter = 3000;
};

lcplx horner(const ComplexPoly& p, lcplx z);
// |p(z)| divided by sum |a_k| |z|^k.
long double backward_error(const ComplexPoly& p, lcplx z);
// Backward error of a root cluster, measured on the (multiplicity-1)-th derivative.
long double backward_error(const ComplexPoly& p, lcplx z, int multiplicity);

// All roots, repeated according to multiplicity as a cluster of nearby
// values.  Aberth-Ehrlich iteration; companion eigenvalues as fallback up
// to degree 12.  Throws NonConvergence.
std::vector<lcplx> roots_complex(const ComplexPoly& p, const RootOptions& opt = {});

// Coefficients in z of p(c0, z).
ComplexPoly specialize_c(const CycPoly2& p, lcplx c0, int bits = default_precision_bits());
// Coefficients in c of a univariate polynomial.
ComplexPoly to_complex(const CycPoly1& p, int bits = default_precision_bits());
lcplx eval_point(const CycPoly2& p, lcplx c0, lcplx z0, int bits = default_precision_bits());

struct RootCluster {
  lcplx z;
  int multiplicity = 1;
};

// Roots of p(c0, .) with multiplicities.  Integer c0 with rational p goes
// through an exact squarefree decomposition; otherwise nearby roots are
// merged into clusters.  `extended` reruns the iteration with MPFR.
std::vector<RootCluster> specialized_roots(const CycPoly2& p, lcplx c0, const RootOptions& opt = {},
                                           bool extended = false);

// Escape-time test: false is certain, true means no escape within max_iter.
bool in_multibrot(int d, lcplx c, int max_iter = 2000);

// Smallest (preperiod, period) with preperiod <= max_pre and period | per
// such that f^(pre+period)(z) ~ f^pre(z); preperiod -1 when none.
struct OrbitType {
  int preperiod = -1, period = -1;
  lcplx multiplier;  // of the cycle reached
};
OrbitType orbit_type(int d, lcplx c0, lcplx z, int max_pre, int per);
bool orbit_close(lcplx a, lcplx b);

enum class Condition { C0, C1, C2, C3, C4, Unclassified };
const char* condition_name(Condition c);

struct ClassifiedRoot {
  lcplx z;
  int multiplicity = 1;
  Condition condition = Condition::Unclassified;
  int preperiod = -1, period = -1;
  lcplx multiplier;
  long double residual = 0;
  bool literal_c4 = false;  // z itself has preperiod n-1 and period p
};

struct RootClassification {
  int d = 0, n = 0, p = 0;
  lcplx c0;
  bool retried = false;
  std::vector<ClassifiedRoot> roots;
  int total_multiplicity() const;
  int unclassified() const;
};

RootClassification classify_roots(FamilyContext& ctx, int n, int p, lcplx c0, const RootOptions& opt = {});

// Points of exact preperiod n and period p found among the roots of
// Phi_{n,p}(c0, .), with multiplicities.
std::vector<RootCluster> exact_preperiodic_points(FamilyContext& ctx, int n, int p, lcplx c0,
                                                  const RootOptions& opt = {});

// Roots of q^j_{n,p}(c, 0): Misiurewicz parameters for n >= 2, centers for n = 1.
struct ParameterRoots {
  std::vector<lcplx> roots;
  long double min_separation = 0;
};
ParameterRoots find_misiurewicz(FamilyContext& ctx, int n, int p, int j, const RootOptions& opt = {});
// Centers of period-p components: roots of Q_{0,p}(c, 0).
ParameterRoots find_centers(FamilyContext& ctx, int p, const RootOptions& opt = {});
bool is_superattracting(int d, lcplx c0, int max_period);

struct TransversalityReport {
  int d = 0, n = 0, p = 0;
  lcplx c0;
  std::vector<lcplx> delta, epsilon, rho, lambda;  // epsilon[l-1], lambda[l-1] for l = 1..n-1
  lcplx alpha, lhs_symbolic, rhs_closed_form;
  long double relative_error = 0;
  long double system_residual = 0;    // closed-form solution plugged into the system
  long double solve_discrepancy = 0;  // against a direct LU solve
  bool pass(long double rel_tol = 1e-8L, long double sys_tol = 1e-10L) const;
};
TransversalityReport transversality_check(FamilyContext& ctx, int n, int p, lcplx c0);

struct SingularPoint {
  lcplx c0, z0;
  int multiplicity = 1;
  std::vector<lcplx> values;                          // q^j(c0, z0)
  std::vector<std::pair<lcplx, lcplx>> gradients;     // (d/dc, d/dz) per factor
  long double min_gradient = 0, min_angle = 0;
};

struct SingularReport {
  int d = 0, n = 0, p = 0;
  std::vector<SingularPoint> points;
  int total_multiplicity() const;
  bool gradients_nonzero(long double tol = 1e-8L) const;
  bool tangents_distinct(long double angle_tol = 1e-4L) const;
};
// Common roots of the q-factors (empty for d = 2).  Throws nothing on
// degenerate tangents; see require_ordinary.
SingularReport singular_point_report(FamilyContext& ctx, int n, int p, const RootOptions& opt = {});
void require_ordinary(const SingularReport& r, long double angle_tol = 1e-4L);

}  // namespace dynacurve
