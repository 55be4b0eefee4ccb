#pragma once
// Numerical monodromy of the z-roots of Q_{n,p}(c, z) over the c-plane:
// critical values, a comb of generator loops, root continuation, the
// permutation group the loops generate and its structural checks.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "dynacurve/dynatomic.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

// perm[i] is the image of index i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
// Apply `first`, then `then`.
Perm compose(const Perm& first, const Perm& then);
Perm inverse(const Perm& p);
int cycle_count(const Perm& p);
// Permutation induced on `subset` (indices into the subset); throws
// PreconditionViolated if p does not preserve it.
Perm restrict_to(const Perm& p, const std::vector<int>& subset);

struct PathPiece {
  bool arc = false;
  lcplx a, b;                // line endpoints
  lcplx center;              // arc data
  long double radius = 0, t0 = 0, t1 = 0;
  static PathPiece line(lcplx from, lcplx to);
  static PathPiece circle(lcplx center, long double radius, long double from_angle, long double to_angle);
  lcplx at(long double s) const;  // s in [0, 1]
};
using Path = std::vector<PathPiece>;

struct LoopSpec {
  lcplx basepoint;
  std::vector<lcplx> critical_values;  // in loop order
  std::vector<Path> loops;             // one positive loop per critical value
  Path outer;                          // positive loop around all of them
  long double frame_angle = 0;
  long double min_clearance = 0;       // smallest distance from a loop to a critical value it avoids
};

// Distinct roots of the discriminant of Q_{n,p} in z.
std::vector<lcplx> critical_values(FamilyContext& ctx, int n, int p, const RootOptions& opt = {});

// Teeth hang off a straight spine through the basepoint; the spine is tilted
// so that no two teeth run close to each other.  The product of the loops in
// the returned order equals the outer loop.
LoopSpec comb_loops(lcplx basepoint, const std::vector<lcplx>& critical);

// Continues each root of P(c, .) along the path.  Throws TrackingFailure when
// the step size collapses.
class RootTracker {
 public:
  explicit RootTracker(const CycPoly2& P);
  std::vector<lcplx> roots_at(lcplx c) const;
  std::vector<lcplx> track(const Path& path, std::vector<lcplx> roots) const;
  // Tracks around a closed path and matches end roots to start roots.
  Perm loop_permutation(const Path& path, const std::vector<lcplx>& start) const;
  long double residual(lcplx c, lcplx z) const;

 private:
  void eval(lcplx c, lcplx z, lcplx& P, lcplx& Pz, lcplx& Pc) const;
  std::vector<std::vector<lcplx>> coef_;  // coef_[a][b]: z^a c^b
};

// Nearest-neighbour matching of end to start within a third of the smallest
// start separation.  Throws TrackingFailure if not a bijection.
Perm match_roots(const std::vector<lcplx>& start, const std::vector<lcplx>& end);

struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;
  mpz_class order;
  bool contains(const Perm& p) const;
};
// Breadth-first closure.  Throws GroupTooLarge beyond cap elements.
PermGroup generate_group(const std::vector<Perm>& generators, std::size_t cap = 1000000);
bool is_transitive(const std::vector<Perm>& generators, const std::vector<int>& subset);

struct MonodromyData {
  int d = 0, n = 0, p = 0;
  LoopSpec loops;
  std::vector<lcplx> roots;     // roots of Q_{n,p} at the basepoint
  std::vector<int> factor_of;   // factor index j of each root (0 for n = 0)
  std::vector<Perm> generators;
  Perm outer;
};

MonodromyData compute_monodromy(FamilyContext& ctx, int n, int p, lcplx basepoint = 3,
                                const RootOptions& opt = {});

struct GaloisReport {
  int d = 0, n = 0, p = 0;
  mpz_class order, expected_order;
  bool order_matches = false;
  bool global_relation = false;        // product of generators equals the outer loop
  bool commutes_with_map = false;      // f o sigma = sigma' o f
  bool commutes_with_rotation = false; // sigma(w z) = w sigma(z) whenever w z is a root
  long double max_map_error = 0, max_rotation_error = 0;
  int rotation_pairs = 0;
  std::vector<bool> factor_transitive;  // per factor j = 1..d-1 (one entry for n = 0)
  std::vector<mpz_class> factor_orders;
  bool factors_preserved = false;
  bool pass() const;
};

GaloisReport verify_galois_properties(FamilyContext& ctx, const MonodromyData& m, const PermGroup& g);

// Element of the wreath product: a permutation of the columns and a shift
// per column, with (s, g) * (t, h) = (s o t, i -> g[t(i)] + h[i]).
struct WreathElement {
  Perm base;
  std::vector<int> twist;
  int modulus = 2;
  friend WreathElement operator*(const WreathElement& a, const WreathElement& b);
  friend bool operator==(const WreathElement& a, const WreathElement& b) = default;
};

// Columns are the fibres {w^k z} of z -> z^d over the roots of Q_{n-1,p}.
struct ColumnLabels {
  std::vector<int> column;  // column of each root
  std::vector<int> shift;   // root = w^shift * representative of its column
  int columns = 0;
};
ColumnLabels column_labels(const MonodromyData& m);
// Throws PreconditionViolated if sigma does not respect the columns.
WreathElement wreath_decompose(const Perm& sigma, const ColumnLabels& cols, int d);

struct WreathReport {
  int columns = 0;
  int pairs_checked = 0;
  bool homomorphism = false;
  bool columns_preserved = false;
  mpz_class kernel_size, expected_kernel_size;  // elements with trivial base
  bool pass() const;
};
WreathReport wreath_check(const MonodromyData& m, const PermGroup& g, int pairs = 64, std::uint64_t seed = 1);

// Genus of the normalisation of the curve traced by `subset` of the roots,
// from Riemann-Hurwitz on the loop permutations (outer loop included).
mpq_class monodromy_genus(const MonodromyData& m, const std::vector<int>& subset);
std::vector<int> factor_roots(const MonodromyData& m, int j);

}  // namespace dynacurve
