#pragma once
// Symbolic dynamics of z^d + c for c outside the Multibrot set: preperiodic
// symbol sequences, their rotation classes (which label the ends of the
// factor curves), and a numerical itinerary tracer.

#include <compare>
#include <string>
#include <tuple>
#include <vector>

#include "dynacurve/dynatomic.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

// pre[0] is the symbol of the point itself; the sequence continues with
// per repeated forever.
struct Itinerary {
  int d = 2;
  std::vector<int> pre, per;
  std::vector<int> symbols(int length) const;
  Itinerary rotated(int s) const;  // every symbol plus s
  // Exact preperiod pre.size() and exact period per.size().
  bool exact() const;
  // (last preperiodic symbol) - (symbol of the periodic preimage), mod d.
  int factor_index() const;
  std::string str() const;
  friend bool operator==(const Itinerary&, const Itinerary&) = default;
  friend auto operator<=>(const Itinerary& a, const Itinerary& b) {
    return std::tie(a.pre, a.per) <=> std::tie(b.pre, b.per);
  }
};

// All sequences of exact preperiod n and exact period p.  Throws
// ResourceCapExceeded above `cap` candidate words.
std::vector<Itinerary> enumerate_preperiodic(int d, int n, int p, long cap = 1L << 22);

struct EndLabel {
  Itinerary representative;      // smallest member
  std::vector<Itinerary> orbit;  // representative rotated by 0..d-1
  int factor = 0;
};
std::vector<EndLabel> end_classes(int d, int n, int p);
std::vector<EndLabel> end_classes_for_factor(int d, int n, int p, int j);

// Green's function of the critical value, G_c(c).
long double parameter_potential(int d, lcplx c);
// External angle of c in [0, 1), found by following the parameter ray out
// to large potential.  Requires c outside the Multibrot set.
long double external_angle(int d, lcplx c);

// Points of the dynamical ray of the given angle, from potential g_start
// down to g_stop, `per_halving` points per halving of the potential.
std::vector<lcplx> trace_dynamical_ray(int d, lcplx c, long double angle, long double g_start, long double g_stop,
                                       int per_halving = 64);

// Partition of the plane by the d rays that crash on the critical point.
class SectorPartition {
 public:
  SectorPartition(int d, lcplx c, int per_halving = 64);
  // Index k of the sector U_k containing x; U_0 holds the ray of angle 0
  // and the others follow counterclockwise.  Throws RayTraceUnresolved
  // within the guard distance of a boundary ray.
  int sector(lcplx x) const;
  int degree() const { return d_; }
  lcplx parameter() const { return c_; }
  long double angle() const { return theta_; }
  const std::vector<std::vector<lcplx>>& rays() const { return rays_; }

 private:
  int d_;
  lcplx c_;
  long double theta_;
  long double far_radius_;
  std::vector<std::vector<lcplx>> rays_;  // ray s has angle (theta + s) / d
  std::vector<long double> start_args_;
};

// First `length` symbols of the orbit of z.
std::vector<int> trace_itinerary(const SectorPartition& part, lcplx z, int length);
std::vector<int> trace_itinerary(int d, lcplx c, lcplx z, int length);
// Sector by the sign of the real part, valid for d = 2 and real c < -2.
int real_sector(lcplx z);

struct EndMatchReport {
  int d = 0, n = 0, p = 0, j = 0;
  lcplx c0;
  std::vector<lcplx> roots;
  std::vector<Itinerary> itineraries;
  bool all_exact = false;
  bool labels_match = false;  // multiset equals the factor-j sequences
  int classes = 0;
  bool class_sizes_ok = false;  // every class present contributes d roots
  bool pass() const { return all_exact && labels_match && class_sizes_ok; }
};
EndMatchReport match_roots_to_ends(FamilyContext& ctx, int n, int p, int j, lcplx c0, const RootOptions& opt = {});

// Tracks the roots of Q_{n,p} once around the circle |c| = |c0| (counter-
// clockwise, crossing the zero parameter ray once) and compares itineraries.
struct RotationReport {
  int d = 0, n = 0, p = 0;
  lcplx c0;
  std::vector<Itinerary> before, after;  // after[i]: itinerary of the image of root i
  int shift = -1;                        // common all-symbol shift, -1 if none
  bool pass() const { return shift == 1; }
};
RotationReport loop_rotation_check(FamilyContext& ctx, int n, int p, lcplx c0 = -3);

}  // namespace dynacurve
