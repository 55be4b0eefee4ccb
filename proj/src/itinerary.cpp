#include "dynacurve/itinerary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "dynacurve/errors.hpp"
#include "dynacurve/monodromy.hpp"

namespace dynacurve {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;
// |f^m(z)| is kept near e^kEscapeLog so that the Boettcher map is the identity
// to working precision.
constexpr long double kEscapeLog = 30;
constexpr long double kCriticalExcess = 1e-10L;
constexpr long double kGuard = 1e-7L;

int mod(int a, int d) { return ((a % d) + d) % d; }

long double frac(long double x) { return x - std::floor(x); }

// Smallest m with d^m * g >= kEscapeLog.
int escape_depth(int d, long double g) {
  int m = 0;
  for (long double s = g; s < kEscapeLog; s *= d) ++m;
  return m;
}

// log(w) - target with the imaginary part wrapped into (-pi, pi].
lcplx log_gap(lcplx w, lcplx target) {
  return {std::log(std::abs(w)) - target.real(), std::remainder(std::arg(w) - target.imag(), kTwoPi)};
}

bool least_period_is(const std::vector<int>& w) {
  const int p = static_cast<int>(w.size());
  for (int q = 1; q < p; ++q) {
    if (p % q) continue;
    bool periodic = true;
    for (int i = q; i < p && periodic; ++i) periodic = w[i] == w[i - q];
    if (periodic) return false;
  }
  return true;
}

// Segment [a, b] meets segment [u, v] with the parameter on [u, v] in [0, 1);
// returns the parameter along [a, b].
bool segment_cross(lcplx a, lcplx b, lcplx u, lcplx v, long double& s) {
  lcplx r = b - a, q = v - u, w = u - a;
  long double den = r.real() * q.imag() - r.imag() * q.real();
  if (std::abs(den) <= 1e-12L * std::abs(r) * std::abs(q)) return false;  // parallel
  s = (w.real() * q.imag() - w.imag() * q.real()) / den;
  long double t = (w.real() * r.imag() - w.imag() * r.real()) / den;
  return s >= 0 && s <= 1 && t >= 0 && t < 1;
}

long double point_segment_distance(lcplx x, lcplx u, lcplx v) {
  lcplx q = v - u;
  long double len2 = std::norm(q);
  long double t = len2 > 0 ? std::clamp(((x - u) * std::conj(q)).real() / len2, 0.0L, 1.0L) : 0.0L;
  return std::abs(x - (u + t * q));
}

}  // namespace

std::vector<int> Itinerary::symbols(int length) const {
  std::vector<int> out;
  for (int k = 0; k < length; ++k) {
    int n = static_cast<int>(pre.size());
    out.push_back(k < n ? pre[k] : per[(k - n) % per.size()]);
  }
  return out;
}

Itinerary Itinerary::rotated(int s) const {
  Itinerary r = *this;
  for (int& x : r.pre) x = mod(x + s, d);
  for (int& x : r.per) x = mod(x + s, d);
  return r;
}

bool Itinerary::exact() const {
  if (per.empty() || !least_period_is(per)) return false;
  for (int x : pre)
    if (x < 0 || x >= d) return false;
  for (int x : per)
    if (x < 0 || x >= d) return false;
  return pre.empty() || pre.back() != per.back();
}

int Itinerary::factor_index() const {
  if (pre.empty()) return 0;
  return mod(pre.back() - per.back(), d);
}

std::string Itinerary::str() const {
  std::ostringstream os;
  for (int x : pre) os << x;
  os << '(';
  for (int x : per) os << x;
  os << ')';
  return os.str();
}

std::vector<Itinerary> enumerate_preperiodic(int d, int n, int p, long cap) {
  if (d < 2 || n < 0 || p < 1) throw PreconditionViolated("enumeration needs d >= 2, n >= 0, p >= 1");
  long total = 1;
  for (int k = 0; k < n + p; ++k) {
    total *= d;
    if (total > cap) throw ResourceCapExceeded("too many symbol words");
  }
  std::vector<Itinerary> out;
  std::vector<int> per(p, 0);
  auto advance = [d](std::vector<int>& w) {
    for (int& x : w) {
      if (++x < d) return true;
      x = 0;
    }
    return false;
  };
  do {
    if (!least_period_is(per)) continue;
    std::vector<int> pre(n, 0);
    do {
      if (n > 0 && pre.back() == per.back()) continue;
      out.push_back({d, pre, per});
    } while (advance(pre));
  } while (advance(per));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EndLabel> end_classes(int d, int n, int p) {
  auto all = enumerate_preperiodic(d, n, p);
  std::set<Itinerary> seen;
  std::vector<EndLabel> out;
  for (const auto& it : all) {
    if (seen.count(it)) continue;
    EndLabel e;
    e.representative = it;
    e.factor = it.factor_index();
    for (int s = 0; s < d; ++s) {
      e.orbit.push_back(it.rotated(s));
      if (!seen.insert(e.orbit.back()).second) throw IdentityViolation("rotation action is not free");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EndLabel> end_classes_for_factor(int d, int n, int p, int j) {
  std::vector<EndLabel> out;
  for (auto& e : end_classes(d, n, p))
    if (e.factor == mod(j, d)) out.push_back(std::move(e));
  return out;
}

long double parameter_potential(int d, lcplx c) {
  lcplx w = c;
  long double scale = 1;
  for (int k = 0; k < 100000; ++k) {
    if (std::abs(w) > 1e30L) return std::log(std::abs(w)) / scale;
    w = std::pow(w, d) + c;
    scale *= d;
  }
  return 0;
}

long double external_angle(int d, lcplx c) {
  long double g = parameter_potential(d, c);
  if (!(g > 0)) throw PreconditionViolated("parameter lies in the Multibrot set");
  // Climb the parameter ray: keep arg f^m_c(c) fixed while the potential grows.
  auto orbit = [d](lcplx c, int m, lcplx& dw) {
    lcplx w = c;
    dw = 1;
    for (int k = 0; k < m; ++k) {
      dw = static_cast<long double>(d) * std::pow(w, d - 1) * dw + 1.0L;
      w = std::pow(w, d) + c;
    }
    return w;
  };
  long double step = std::pow(2.0L, 0.125L);
  while (g < 12) {
    long double g_new = std::min(g * step, 12.0L);
    int m = escape_depth(d, g_new);
    lcplx dw;
    lcplx w = orbit(c, m, dw);
    lcplx target(std::pow(static_cast<long double>(d), m) * g_new, std::arg(w));
    lcplx x = c;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      w = orbit(x, m, dw);
      lcplx dx = log_gap(w, target) / (dw / w);
      x -= dx;
      if (!std::isfinite(std::abs(x))) break;
      if (std::abs(dx) < 1e-16L * (1 + std::abs(x))) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      step = std::sqrt(step);
      if (step < 1 + 1e-6L) throw NonConvergence("parameter ray ascent stalled");
      continue;
    }
    c = x;
    g = g_new;
  }
  // Product formula for the Boettcher coordinate at large |c|.
  long double a = std::arg(c), scale = 1;
  lcplx w = c;
  for (int k = 1; k < 64 && std::abs(w) < 1e200L; ++k) {
    lcplx next = std::pow(w, d) + c;
    scale *= d;
    a += std::arg(next / std::pow(w, d)) / scale;
    w = next;
  }
  long double theta = frac(a / kTwoPi);
  return theta >= 1 ? 0 : theta;
}

std::vector<lcplx> trace_dynamical_ray(int d, lcplx c, long double angle, long double g_start, long double g_stop,
                                       int per_halving) {
  if (!(g_start > g_stop) || per_halving < 1) throw PreconditionViolated("bad ray tracing range");
  std::vector<lcplx> out;
  lcplx z = std::exp(lcplx(g_start, kTwoPi * angle));
  // Potentials approach g_stop geometrically in their excess over `floor`.
  const long double floor = g_stop / (1 + kCriticalExcess);
  const long double ratio = std::pow(2.0L, -1.0L / per_halving);
  for (long double excess = g_start - floor;; excess *= ratio) {
    long double g = std::max(floor + excess, g_stop);
    int m = escape_depth(d, g);
    long double t = angle;
    for (int k = 0; k < m; ++k) t = frac(t * d);
    lcplx target(std::pow(static_cast<long double>(d), m) * g, kTwoPi * t);
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      lcplx w = z, dw = 1;
      for (int k = 0; k < m; ++k) {
        dw *= static_cast<long double>(d) * std::pow(w, d - 1);
        w = std::pow(w, d) + c;
      }
      lcplx gap = log_gap(w, target);
      if (std::abs(gap) < 1e-16L * std::abs(target)) {
        ok = true;
        break;
      }
      lcplx dz = gap / (dw / w);
      z -= dz;
      if (!std::isfinite(std::abs(z))) break;
      if (std::abs(dz) < 1e-15L * (1 + std::abs(z))) {
        ok = true;
        break;
      }
    }
    if (!ok) throw RayTraceUnresolved("ray point did not converge");
    out.push_back(z);
    if (g <= g_stop) break;
  }
  return out;
}

SectorPartition::SectorPartition(int d, lcplx c, int per_halving) : d_(d), c_(c) {
  theta_ = external_angle(d, c);
  long double g0 = parameter_potential(d, c) / d;  // potential of the critical point
  long double g_start = std::max(8.0L, std::log1p(std::abs(c)) + 4);
  long double far = 0;
  for (int s = 0; s < d; ++s) {
    auto ray = trace_dynamical_ray(d, c, (theta_ + s) / d, g_start, g0 * (1 + kCriticalExcess), per_halving);
    ray.push_back(0);
    far = std::max(far, std::abs(ray.front()));
    rays_.push_back(std::move(ray));
  }
  for (auto& ray : rays_) {
    start_args_.push_back(std::arg(ray.front()));
    ray.insert(ray.begin(), ray.front() / std::abs(ray.front()) * (4 * far));
  }
  far_radius_ = 2 * far;
}

int SectorPartition::sector(lcplx x) const {
  for (const auto& ray : rays_)
    for (std::size_t k = 0; k + 1 < ray.size(); ++k)
      if (point_segment_distance(x, ray[k], ray[k + 1]) < kGuard * (1 + std::abs(x)))
        throw RayTraceUnresolved("point lies on a sector boundary");
  lcplx far = far_radius_ * x / std::abs(x);
  // Sector V_s lies counterclockwise of ray s and clockwise of ray s + 1.
  int cur = 0;
  long double best = INFINITY;
  for (int s = 0; s < d_; ++s) {
    long double rel = std::fmod(std::arg(far) - start_args_[s] + 2 * kTwoPi, kTwoPi);
    if (rel < best) {
      best = rel;
      cur = s;
    }
  }
  std::vector<std::pair<long double, int>> hits;
  for (int s = 0; s < d_; ++s) {
    const auto& ray = rays_[s];
    for (std::size_t k = 0; k + 1 < ray.size(); ++k) {
      long double u;
      if (segment_cross(far, x, ray[k], ray[k + 1], u)) hits.emplace_back(u, s);
    }
  }
  std::sort(hits.begin(), hits.end());
  for (auto [u, s] : hits) {
    if (cur == s)
      cur = mod(s - 1, d_);
    else if (cur == mod(s - 1, d_))
      cur = s;
    else
      throw RayTraceUnresolved("inconsistent boundary crossing");
  }
  return mod(cur + 1, d_);
}

std::vector<int> trace_itinerary(const SectorPartition& part, lcplx z, int length) {
  std::vector<int> out;
  for (int k = 0; k < length; ++k) {
    out.push_back(part.sector(z));
    z = std::pow(z, part.degree()) + part.parameter();
  }
  return out;
}

std::vector<int> trace_itinerary(int d, lcplx c, lcplx z, int length) {
  SectorPartition part(d, c);
  return trace_itinerary(part, z, length);
}

int real_sector(lcplx z) { return z.real() > 0 ? 0 : 1; }

namespace {

Itinerary split(int d, const std::vector<int>& sym, int n, int p) {
  Itinerary it;
  it.d = d;
  it.pre.assign(sym.begin(), sym.begin() + n);
  it.per.assign(sym.begin() + n, sym.begin() + n + p);
  return it;
}

// Roots of q^j(c0, .) that pass the orbit test, retrying at higher precision.
std::vector<lcplx> factor_roots_at(FamilyContext& ctx, int n, int p, int j, lcplx c0, RootOptions opt) {
  const int d = ctx.d();
  auto orbit_ok = [&](lcplx z) {
    for (int k = 0; k < n; ++k) z = std::pow(z, d) + c0;
    lcplx w = z;
    for (int k = 0; k < p; ++k) w = std::pow(w, d) + c0;
    return std::abs(w - z) < 1e-8L * (1 + std::abs(z));
  };
  for (;;) {
    std::vector<lcplx> out;
    bool ok = true;
    for (const auto& cl : specialized_roots(ctx.factor(n, p, j), c0, opt))
      for (int k = 0; k < cl.multiplicity; ++k) {
        out.push_back(cl.z);
        ok = ok && orbit_ok(cl.z);
      }
    if (ok || opt.bits >= 2048) return out;
    opt.bits = std::max(256, 2 * opt.bits);
  }
}

Itinerary canonical(const Itinerary& it) {
  Itinerary best = it;
  for (int s = 1; s < it.d; ++s) best = std::min(best, it.rotated(s));
  return best;
}

}  // namespace

EndMatchReport match_roots_to_ends(FamilyContext& ctx, int n, int p, int j, lcplx c0, const RootOptions& opt) {
  const int d = ctx.d();
  if (n < 1 || j < 1 || j >= d) throw PreconditionViolated("end matching needs n >= 1 and 1 <= j < d");
  EndMatchReport r;
  r.d = d;
  r.n = n;
  r.p = p;
  r.j = j;
  r.c0 = c0;
  SectorPartition part(d, c0);
  r.roots = factor_roots_at(ctx, n, p, j, c0, opt);
  r.all_exact = true;
  std::map<Itinerary, int> class_count;
  for (lcplx z : r.roots) {
    r.itineraries.push_back(split(d, trace_itinerary(part, z, n + p), n, p));
    r.all_exact = r.all_exact && r.itineraries.back().exact();
    ++class_count[canonical(r.itineraries.back())];
  }
  std::vector<Itinerary> expected;
  for (const auto& e : end_classes_for_factor(d, n, p, j))
    expected.insert(expected.end(), e.orbit.begin(), e.orbit.end());
  auto got = r.itineraries;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  r.labels_match = got == expected;
  r.classes = static_cast<int>(class_count.size());
  r.class_sizes_ok = std::all_of(class_count.begin(), class_count.end(), [d](const auto& kv) { return kv.second == d; });
  return r;
}

RotationReport loop_rotation_check(FamilyContext& ctx, int n, int p, lcplx c0) {
  const int d = ctx.d();
  RotationReport r;
  r.d = d;
  r.n = n;
  r.p = p;
  r.c0 = c0;
  RootTracker tracker(ctx.Q(n, p));
  auto start = tracker.roots_at(c0);
  long double a = std::arg(c0);
  Path loop{PathPiece::circle(0, std::abs(c0), a, a + kTwoPi)};
  Perm sigma = tracker.loop_permutation(loop, start);
  SectorPartition part(d, c0);
  for (lcplx z : start) r.before.push_back(split(d, trace_itinerary(part, z, n + p), n, p));
  for (std::size_t i = 0; i < start.size(); ++i) r.after.push_back(r.before[sigma[i]]);
  for (int s = 0; s < d; ++s) {
    bool all = true;
    for (std::size_t i = 0; i < start.size() && all; ++i) all = r.after[i] == r.before[i].rotated(s);
    if (all) {
      r.shift = s;
      break;
    }
  }
  return r;
}

}  // namespace dynacurve
