#include "dynacurve/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <random>
#include <unordered_set>

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"

namespace dynacurve {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double min_separation(const std::vector<lcplx>& z) {
  long double s = INFINITY;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t k = i + 1; k < z.size(); ++k) s = std::min(s, std::abs(z[i] - z[k]));
  return s;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

lcplx unit(long double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm compose(const Perm& first, const Perm& then) {
  Perm r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

int cycle_count(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int k = static_cast<int>(i); !seen[k]; k = p[k]) seen[k] = 1;
  }
  return cycles;
}

Perm restrict_to(const Perm& p, const std::vector<int>& subset) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) pos[subset[i]] = static_cast<int>(i);
  Perm r(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto it = pos.find(p[subset[i]]);
    if (it == pos.end()) throw PreconditionViolated("permutation does not preserve the subset");
    r[i] = it->second;
  }
  return r;
}

PathPiece PathPiece::line(lcplx from, lcplx to) {
  PathPiece p;
  p.a = from;
  p.b = to;
  return p;
}

PathPiece PathPiece::circle(lcplx center, long double radius, long double from_angle, long double to_angle) {
  PathPiece p;
  p.arc = true;
  p.center = center;
  p.radius = radius;
  p.t0 = from_angle;
  p.t1 = to_angle;
  return p;
}

lcplx PathPiece::at(long double s) const {
  if (arc) return center + radius * unit(t0 + s * (t1 - t0));
  return a + s * (b - a);
}

std::vector<lcplx> critical_values(FamilyContext& ctx, int n, int p, const RootOptions& opt) {
  const auto& Q = ctx.Q(n, p);
  CycPoly1 disc = squarefree_part(resultant_z(Q, derivative_z(Q)));
  if (disc.degree() < 1) return {};
  ComplexPoly co = to_complex(disc, opt.bits);
  std::vector<lcplx> roots;
  try {
    roots = roots_complex(co, opt);
  } catch (const NonConvergence&) {
    // treat the discriminant as a polynomial in z and use the MPFR path
    std::vector<CycPoly1> zc;
    for (int b = 0; b <= disc.degree(); ++b) zc.push_back(CycPoly1::constant(disc.coeff(b)));
    for (auto& rc : specialized_roots(CycPoly2(ctx.d(), zc), lcplx(0.5L, 0.5L), opt, true))
      for (int m = 0; m < rc.multiplicity; ++m) roots.push_back(rc.z);
  }
  return roots;
}

LoopSpec comb_loops(lcplx basepoint, const std::vector<lcplx>& critical) {
  LoopSpec spec;
  spec.basepoint = basepoint;
  if (critical.empty()) return spec;
  // frame: w = -(c - basepoint) e^{-i theta}; critical values sit at Re w > 0
  long double best_gap = -1, best_theta = 0;
  for (int k = 0; k < 97; ++k) {
    long double theta = -0.35L + 0.7L * k / 96;
    std::vector<long double> ys;
    bool right = true;
    for (lcplx v : critical) {
      lcplx w = -(v - basepoint) * unit(-theta);
      right = right && w.real() > 0;
      ys.push_back(w.imag());
    }
    if (!right) continue;
    std::sort(ys.begin(), ys.end());
    long double gap = INFINITY;
    for (std::size_t i = 1; i < ys.size(); ++i) gap = std::min(gap, ys[i] - ys[i - 1]);
    if (gap > best_gap) {
      best_gap = gap;
      best_theta = theta;
    }
  }
  if (best_gap < 0) throw PreconditionViolated("basepoint must lie to one side of all critical values");
  spec.frame_angle = best_theta;
  lcplx rot = -unit(best_theta);  // c = basepoint + rot * w
  auto to_c = [&](lcplx w) { return basepoint + rot * w; };

  std::vector<std::pair<lcplx, lcplx>> order;  // (w, c) sorted by height
  for (lcplx v : critical) order.emplace_back((v - basepoint) / rot, v);
  std::sort(order.begin(), order.end(), [](auto& x, auto& y) { return x.first.imag() < y.first.imag(); });

  long double ymax = 0, xmax = 0;
  for (auto& [w, v] : order) {
    ymax = std::max(ymax, std::fabs(w.imag()));
    xmax = std::max(xmax, w.real());
  }
  spec.min_clearance = INFINITY;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto [w, v] = order[k];
    long double r = 0.25L;
    if (std::isfinite(best_gap)) r = std::min(r, 0.3L * best_gap);
    for (auto& [w2, v2] : order)
      if (v2 != v) r = std::min(r, 0.4L * std::abs(v2 - v));
    lcplx top = lcplx(0, w.imag()), near = w - r;
    Path loop{PathPiece::line(basepoint, to_c(top)), PathPiece::line(to_c(top), to_c(near)),
              PathPiece::circle(v, r, best_theta, best_theta + 2 * kPi), PathPiece::line(to_c(near), to_c(top)),
              PathPiece::line(to_c(top), basepoint)};
    spec.critical_values.push_back(v);
    spec.loops.push_back(std::move(loop));
    spec.min_clearance = std::min(spec.min_clearance, r);
  }
  long double Y = ymax + 1, X = xmax + 1;
  spec.outer = {PathPiece::line(basepoint, to_c({0, -Y})), PathPiece::line(to_c({0, -Y}), to_c({X, -Y})),
                PathPiece::line(to_c({X, -Y}), to_c({X, Y})), PathPiece::line(to_c({X, Y}), to_c({0, Y})),
                PathPiece::line(to_c({0, Y}), basepoint)};
  return spec;
}

RootTracker::RootTracker(const CycPoly2& P) : coef_(embed_complex(P, 64)) {}

void RootTracker::eval(lcplx c, lcplx z, lcplx& P, lcplx& Pz, lcplx& Pc) const {
  P = Pz = Pc = 0;
  for (auto row = coef_.rbegin(); row != coef_.rend(); ++row) {
    lcplx a = 0, da = 0;
    for (auto it = row->rbegin(); it != row->rend(); ++it) {
      da = da * c + a;
      a = a * c + *it;
    }
    Pz = Pz * z + P;
    P = P * z + a;
    Pc = Pc * z + da;
  }
}

long double RootTracker::residual(lcplx c, lcplx z) const {
  lcplx P, Pz, Pc;
  eval(c, z, P, Pz, Pc);
  long double scale = 0, az = std::abs(z), ac = std::abs(c);
  for (auto row = coef_.rbegin(); row != coef_.rend(); ++row) {
    long double a = 0;
    for (auto it = row->rbegin(); it != row->rend(); ++it) a = a * ac + std::abs(*it);
    scale = scale * az + a;
  }
  return scale == 0 ? 0 : std::abs(P) / scale;
}

std::vector<lcplx> RootTracker::roots_at(lcplx c) const {
  ComplexPoly a;
  for (const auto& row : coef_) a.push_back(horner(row, c));
  return roots_complex(a);
}

std::vector<lcplx> RootTracker::track(const Path& path, std::vector<lcplx> roots) const {
  const long double tol = 1e-13L;
  std::vector<lcplx> next(roots.size());
  for (const auto& piece : path) {
    long double s = 0, h = 1.0L / 64;
    while (s < 1) {
      long double s1 = std::min(1.0L, s + h);
      lcplx c_old = piece.at(s), c_new = piece.at(s1), dc = c_new - c_old;
      long double sep = roots.size() > 1 ? min_separation(roots) : 1;
      bool ok = true;
      for (std::size_t i = 0; i < roots.size() && ok; ++i) {
        lcplx P, Pz, Pc;
        eval(c_old, roots[i], P, Pz, Pc);
        lcplx z = roots[i] - dc * Pc / Pz;
        lcplx pred = z;
        bool converged = false;
        for (int it = 0; it < 12; ++it) {
          eval(c_new, z, P, Pz, Pc);
          lcplx step = P / Pz;
          z -= step;
          if (std::abs(step) <= tol * (1 + std::abs(z))) {
            converged = true;
            break;
          }
        }
        ok = converged && std::abs(z - pred) < 0.5L * sep && std::abs(z - roots[i]) < 0.5L * sep;
        next[i] = z;
      }
      if (ok && roots.size() > 1 && min_separation(next) < 0.25L * sep) ok = false;
      if (!ok) {
        h /= 2;
        if (h < 1e-14L) throw TrackingFailure("continuation step collapsed near c = " + std::to_string((double)c_old.real()) +
                                              (c_old.imag() < 0 ? "" : "+") + std::to_string((double)c_old.imag()) + "i");
        continue;
      }
      roots.swap(next);
      s = s1;
      h = std::min(h * 1.5L, 1.0L / 16);
    }
  }
  return roots;
}

Perm match_roots(const std::vector<lcplx>& start, const std::vector<lcplx>& end) {
  long double radius = start.size() > 1 ? min_separation(start) / 3 : INFINITY;
  Perm p(start.size(), -1);
  std::vector<char> hit(start.size(), 0);
  for (std::size_t i = 0; i < start.size(); ++i) {
    int best = -1;
    long double bd = radius;
    for (std::size_t k = 0; k < start.size(); ++k)
      if (std::abs(end[i] - start[k]) < bd) {
        bd = std::abs(end[i] - start[k]);
        best = static_cast<int>(k);
      }
    if (best < 0 || hit[best]) throw TrackingFailure("tracked roots do not match the start roots bijectively");
    hit[best] = 1;
    p[i] = best;
  }
  return p;
}

Perm RootTracker::loop_permutation(const Path& path, const std::vector<lcplx>& start) const {
  return match_roots(start, track(path, start));
}

bool PermGroup::contains(const Perm& p) const { return std::find(elements.begin(), elements.end(), p) != elements.end(); }

PermGroup generate_group(const std::vector<Perm>& generators, std::size_t cap) {
  PermGroup g;
  g.generators = generators;
  g.degree = generators.empty() ? 0 : static_cast<int>(generators[0].size());
  std::unordered_set<Perm, PermHash> seen;
  Perm id = identity_perm(g.degree);
  seen.insert(id);
  g.elements.push_back(id);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : generators) {
      Perm x = compose(g.elements[head], s);
      if (!seen.insert(x).second) continue;
      if (g.elements.size() >= cap) throw GroupTooLarge("group closure exceeded " + std::to_string(cap) + " elements");
      g.elements.push_back(std::move(x));
    }
  }
  g.order = static_cast<unsigned long>(g.elements.size());
  return g;
}

bool is_transitive(const std::vector<Perm>& generators, const std::vector<int>& subset) {
  if (subset.empty()) return true;
  std::vector<char> in(generators.empty() ? 0 : generators[0].size(), 0), seen(in.size(), 0);
  for (int i : subset) in[i] = 1;
  std::vector<int> stack{subset[0]};
  seen[subset[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : generators) {
      int y = g[x];
      if (!in[y]) return false;
      if (seen[y]) continue;
      seen[y] = 1;
      ++reached;
      stack.push_back(y);
    }
  }
  return reached == subset.size();
}

MonodromyData compute_monodromy(FamilyContext& ctx, int n, int p, lcplx basepoint, const RootOptions& opt) {
  if (in_multibrot(ctx.d(), basepoint)) throw PreconditionViolated("basepoint must lie outside the Multibrot set");
  MonodromyData m;
  m.d = ctx.d();
  m.n = n;
  m.p = p;
  m.loops = comb_loops(basepoint, critical_values(ctx, n, p, opt));
  RootTracker tracker(ctx.Q(n, p));
  m.roots = tracker.roots_at(basepoint);

  m.factor_of.assign(m.roots.size(), 0);
  if (n >= 1)
    for (std::size_t i = 0; i < m.roots.size(); ++i) {
      long double best = INFINITY;
      for (int j = 1; j < m.d; ++j) {
        long double v = std::abs(eval_point(ctx.factor(n, p, j), basepoint, m.roots[i], opt.bits));
        if (v < best) {
          best = v;
          m.factor_of[i] = j;
        }
      }
    }

  std::vector<std::future<Perm>> jobs;
  for (const auto& loop : m.loops.loops)
    jobs.push_back(std::async(std::launch::async, [&tracker, &loop, &m] { return tracker.loop_permutation(loop, m.roots); }));
  for (auto& j : jobs) m.generators.push_back(j.get());
  m.outer = tracker.loop_permutation(m.loops.outer, m.roots);
  return m;
}

bool GaloisReport::pass() const {
  bool tr = std::all_of(factor_transitive.begin(), factor_transitive.end(), [](bool b) { return b; });
  return order_matches && global_relation && commutes_with_map && commutes_with_rotation && tr && factors_preserved;
}

GaloisReport verify_galois_properties(FamilyContext& ctx, const MonodromyData& m, const PermGroup& g) {
  const int d = m.d;
  const long double tol = 1e-6L;
  GaloisReport r;
  r.d = d;
  r.n = m.n;
  r.p = m.p;
  r.order = g.order;
  r.expected_order = galois_order(d, m.n, m.p);
  r.order_matches = r.order == r.expected_order;

  Perm prod = identity_perm(static_cast<int>(m.roots.size()));
  for (const auto& s : m.generators) prod = compose(prod, s);
  r.global_relation = prod == m.outer;

  // the map: roots of Q_{n,p} to roots of Q_{n-1,p}, tracked independently
  lcplx c0 = m.loops.basepoint;
  std::vector<lcplx> lower = m.roots;
  std::vector<Perm> lower_gens = m.generators;
  if (m.n >= 1) {
    RootTracker low(ctx.Q(m.n - 1, m.p));
    lower = low.roots_at(c0);
    lower_gens.clear();
    for (const auto& loop : m.loops.loops) lower_gens.push_back(low.loop_permutation(loop, lower));
  }
  auto image_index = [&](lcplx z, long double& err) {
    lcplx w = std::pow(z, d) + c0;
    int best = -1;
    err = INFINITY;
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (std::abs(w - lower[k]) < err) {
        err = std::abs(w - lower[k]);
        best = static_cast<int>(k);
      }
    return best;
  };
  std::vector<int> fimg(m.roots.size());
  r.commutes_with_map = true;
  for (std::size_t i = 0; i < m.roots.size(); ++i) {
    long double e;
    fimg[i] = image_index(m.roots[i], e);
    r.max_map_error = std::max(r.max_map_error, e);
    if (e > tol * (1 + std::abs(m.roots[i]))) r.commutes_with_map = false;
  }
  for (std::size_t k = 0; k < m.generators.size(); ++k)
    for (std::size_t i = 0; i < m.roots.size(); ++i)
      if (fimg[m.generators[k][i]] != lower_gens[k][fimg[i]]) r.commutes_with_map = false;

  // rotation pairs (z, w^s z) inside the root set
  r.commutes_with_rotation = true;
  std::vector<std::vector<int>> rot(d, std::vector<int>(m.roots.size(), -1));
  for (int s = 1; s < d; ++s) {
    lcplx w = unit(2 * kPi * s / d);
    for (std::size_t i = 0; i < m.roots.size(); ++i)
      for (std::size_t k = 0; k < m.roots.size(); ++k) {
        long double e = std::abs(w * m.roots[i] - m.roots[k]);
        if (e < 1e-6L * (1 + std::abs(m.roots[i]))) {
          rot[s][i] = static_cast<int>(k);
          r.max_rotation_error = std::max(r.max_rotation_error, e);
          ++r.rotation_pairs;
        }
      }
  }
  for (const auto& sigma : m.generators)
    for (int s = 1; s < d; ++s)
      for (std::size_t i = 0; i < m.roots.size(); ++i) {
        int k = rot[s][i];
        if (k < 0) continue;
        if (rot[s][sigma[i]] != sigma[k]) r.commutes_with_rotation = false;
      }

  r.factors_preserved = true;
  int nfactors = m.n == 0 ? 1 : d - 1;
  for (int j = (m.n == 0 ? 0 : 1); j < (m.n == 0 ? 1 : d); ++j) {
    auto sub = factor_roots(m, j);
    r.factor_transitive.push_back(is_transitive(m.generators, sub));
    try {
      std::vector<Perm> restricted;
      for (const auto& s : m.generators) restricted.push_back(restrict_to(s, sub));
      r.factor_orders.push_back(generate_group(restricted).order);
    } catch (const PreconditionViolated&) {
      r.factors_preserved = false;
      r.factor_orders.push_back(0);
    }
  }
  (void)nfactors;
  return r;
}

std::vector<int> factor_roots(const MonodromyData& m, int j) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.roots.size(); ++i)
    if (m.factor_of[i] == j) out.push_back(static_cast<int>(i));
  return out;
}

WreathElement operator*(const WreathElement& a, const WreathElement& b) {
  WreathElement r;
  r.modulus = a.modulus;
  r.base = compose(b.base, a.base);
  r.twist.resize(a.twist.size());
  for (std::size_t i = 0; i < a.twist.size(); ++i) r.twist[i] = (a.twist[b.base[i]] + b.twist[i]) % a.modulus;
  return r;
}

ColumnLabels column_labels(const MonodromyData& m) {
  const int d = m.d;
  ColumnLabels cl;
  cl.column.assign(m.roots.size(), -1);
  cl.shift.assign(m.roots.size(), 0);
  for (std::size_t i = 0; i < m.roots.size(); ++i) {
    if (cl.column[i] >= 0) continue;
    int col = cl.columns++;
    cl.column[i] = col;
    for (int s = 1; s < d; ++s) {
      lcplx target = unit(2 * kPi * s / d) * m.roots[i];
      for (std::size_t k = 0; k < m.roots.size(); ++k)
        if (cl.column[k] < 0 && std::abs(m.roots[k] - target) < 1e-6L * (1 + std::abs(target))) {
          cl.column[k] = col;
          cl.shift[k] = s;
        }
    }
  }
  return cl;
}

WreathElement wreath_decompose(const Perm& sigma, const ColumnLabels& cols, int d) {
  WreathElement e;
  e.modulus = d;
  e.base.assign(cols.columns, -1);
  e.twist.assign(cols.columns, -1);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    int c = cols.column[i], img = sigma[i];
    int base = cols.column[img];
    int tw = ((cols.shift[img] - cols.shift[i]) % d + d) % d;
    if ((e.base[c] >= 0 && e.base[c] != base) || (e.twist[c] >= 0 && e.twist[c] != tw))
      throw PreconditionViolated("permutation does not act on columns by cyclic shifts");
    e.base[c] = base;
    e.twist[c] = tw;
  }
  return e;
}

bool WreathReport::pass() const {
  return homomorphism && columns_preserved && kernel_size == expected_kernel_size;
}

WreathReport wreath_check(const MonodromyData& m, const PermGroup& g, int pairs, std::uint64_t seed) {
  if (m.n < 2) throw PreconditionViolated("wreath structure needs n >= 2");
  WreathReport r;
  auto cols = column_labels(m);
  r.columns = cols.columns;
  r.columns_preserved = true;
  bool full = true;
  for (int c = 0; c < cols.columns; ++c) {
    int members = 0;
    for (int x : cols.column) members += x == c;
    full = full && members == m.d;
  }
  r.columns_preserved = full;
  std::vector<WreathElement> psi;
  try {
    for (const auto& e : g.elements) psi.push_back(wreath_decompose(e, cols, m.d));
  } catch (const PreconditionViolated&) {
    r.columns_preserved = false;
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.elements.size() - 1);
  r.homomorphism = true;
  for (int t = 0; t < pairs; ++t) {
    std::size_t a = pick(rng), b = pick(rng);
    // sigma o tau applies tau first
    Perm st = compose(g.elements[b], g.elements[a]);
    if (wreath_decompose(st, cols, m.d) != psi[a] * psi[b]) r.homomorphism = false;
    ++r.pairs_checked;
  }
  Perm id = identity_perm(cols.columns);
  long kernel = 0;
  for (const auto& w : psi) kernel += w.base == id;
  r.kernel_size = kernel;
  r.expected_kernel_size = 1;
  for (int c = 0; c < cols.columns; ++c) r.expected_kernel_size *= m.d;
  return r;
}

mpq_class monodromy_genus(const MonodromyData& m, const std::vector<int>& subset) {
  long N = static_cast<long>(subset.size());
  long ram = 0;
  for (const auto& s : m.generators) ram += N - cycle_count(restrict_to(s, subset));
  ram += N - cycle_count(restrict_to(m.outer, subset));
  mpq_class g = 1 - N + mpq_class(ram, 2);
  g.canonicalize();
  return g;
}

}  // namespace dynacurve
