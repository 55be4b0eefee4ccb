#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <numbers>

#include "dynacurve/errors.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

namespace {

using mp = boost::multiprecision::mpfr_float;

long double as_ld(long double x) { return x; }
long double as_ld(const mp& x) { return x.convert_to<long double>(); }

template <class R>
struct Cx {
  R re{0}, im{0};
  Cx() = default;
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    R s = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / s, (a.im * b.re - a.re * b.im) / s};
  }
  R norm2() const { return re * re + im * im; }
  R abs() const {
    using std::sqrt;
    return sqrt(norm2());
  }
  lcplx ld() const { return {as_ld(re), as_ld(im)}; }
};

// Starting points on circles read off the upper convex hull of
// (k, log|a_k|), one circle per hull edge.
template <class R>
std::vector<Cx<R>> initial_guesses(const std::vector<Cx<R>>& a) {
  int n = static_cast<int>(a.size()) - 1;
  std::vector<int> idx;
  std::vector<long double> lg(n + 1, -INFINITY);
  for (int k = 0; k <= n; ++k) {
    long double m = std::abs(a[k].ld());
    if (m > 0) lg[k] = std::log(m);
  }
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(lg[k])) continue;
    while (idx.size() >= 2) {
      int i = idx[idx.size() - 2], j = idx.back();
      if ((lg[j] - lg[i]) * (k - i) <= (lg[k] - lg[i]) * (j - i))
        idx.pop_back();
      else
        break;
    }
    idx.push_back(k);
  }
  std::vector<Cx<R>> z;
  z.reserve(n);
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (std::size_t e = 1; e < idx.size(); ++e) {
    int i = idx[e - 1], j = idx[e], m = j - i;
    long double r = std::exp((lg[i] - lg[j]) / m);
    for (int t = 0; t < m; ++t) {
      long double ang = two_pi * t / m + two_pi * i / n + 0.7L;
      z.emplace_back(R(r * std::cos(ang)), R(r * std::sin(ang)));
    }
  }
  return z;
}

template <class R>
bool aberth(const std::vector<Cx<R>>& a, std::vector<Cx<R>>& z, const R& eps, int max_iter) {
  int n = static_cast<int>(a.size()) - 1;
  z = initial_guesses(a);
  std::vector<R> absa(n + 1);
  for (int k = 0; k <= n; ++k) absa[k] = a[k].abs();
  std::vector<char> done(n, 0);
  int remaining = n;
  for (int it = 0; it < max_iter && remaining > 0; ++it) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      Cx<R> p = a[n], dp;
      R scale = absa[n], az = z[i].abs();
      for (int k = n - 1; k >= 0; --k) {
        dp = dp * z[i] + p;
        p = p * z[i] + a[k];
        scale = scale * az + absa[k];
      }
      // backward-stable at this precision: nothing more to gain
      if (p.abs() <= eps * R(8 * n) * scale) {
        done[i] = 1;
        --remaining;
        continue;
      }
      Cx<R> ratio = p / dp, s;
      for (int j = 0; j < n; ++j)
        if (j != i) s = s + Cx<R>(R(1), R(0)) / (z[i] - z[j]);
      Cx<R> w = ratio / (Cx<R>(R(1), R(0)) - ratio * s);
      z[i] = z[i] - w;
      if (w.abs() <= eps * (R(1) + z[i].abs())) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

std::vector<lcplx> companion_roots(const ComplexPoly& a) {
  int n = static_cast<int>(a.size()) - 1;
  Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic> M =
      Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -a[i] / a[n];
  Eigen::ComplexEigenSolver<decltype(M)> es(M, false);
  if (es.info() != Eigen::Success) throw NonConvergence("companion eigenvalues did not converge");
  std::vector<lcplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

// Splits off exact zero roots; returns how many.
int strip_zeros(ComplexPoly& p) {
  int k = 0;
  while (k < static_cast<int>(p.size()) && p[k] == lcplx(0)) ++k;
  p.erase(p.begin(), p.begin() + k);
  return k;
}

struct MpPrecision {
  unsigned saved;
  explicit MpPrecision(int bits) : saved(mp::default_precision()) {
    mp::default_precision(static_cast<unsigned>(bits * 0.30103) + 2);
  }
  ~MpPrecision() { mp::default_precision(saved); }
};

mp mp_from(const mpz_class& v) { return mp(v.get_str()); }

Cx<mp> embed_mp(const CycInt& x, const std::vector<Cx<mp>>& powers) {
  Cx<mp> s;
  for (std::size_t k = 0; k < x.coords().size(); ++k)
    if (sgn(x[k]) != 0) s = s + Cx<mp>(mp_from(x[k]), mp(0)) * powers[k];
  return s;
}

std::vector<Cx<mp>> omega_powers_mp(int d) {
  std::vector<Cx<mp>> w;
  mp two_pi = 2 * boost::math::constants::pi<mp>();
  for (int k = 0; k < cyc_rank(d); ++k) {
    mp t = two_pi * k / d;
    w.emplace_back(boost::multiprecision::cos(t), boost::multiprecision::sin(t));
  }
  return w;
}

// Aberth iteration on ascending coefficients at the current MPFR precision.
std::vector<lcplx> aberth_mp(std::vector<Cx<mp>> a, int bits, int max_iter) {
  int zeros = 0;
  while (zeros < static_cast<int>(a.size()) && a[zeros].norm2() == 0) ++zeros;
  a.erase(a.begin(), a.begin() + zeros);
  std::vector<lcplx> out(zeros, lcplx(0));
  if (a.size() <= 1) return out;
  std::vector<Cx<mp>> z;
  mp eps = boost::multiprecision::ldexp(mp(1), -bits);
  if (!aberth(a, z, eps, max_iter)) throw NonConvergence("extended-precision root iteration did not converge");
  for (const auto& r : z) out.push_back(r.ld());
  return out;
}

std::vector<lcplx> roots_mp(const CycPoly2& p, lcplx c0, int bits, int max_iter) {
  MpPrecision guard(bits);
  auto w = omega_powers_mp(p.d());
  Cx<mp> c(mp(c0.real()), mp(c0.imag()));
  std::vector<Cx<mp>> a;
  for (int k = 0; k <= p.deg_z(); ++k) {
    const auto& row = p.zcoeff(k);
    Cx<mp> acc;
    for (int b = row.degree(); b >= 0; --b) acc = acc * c + embed_mp(row.coeff(b), w);
    a.push_back(acc);
  }
  return aberth_mp(std::move(a), bits, max_iter);
}

std::vector<lcplx> roots_mp(const CycPoly1& p, int bits, int max_iter) {
  MpPrecision guard(bits);
  auto w = omega_powers_mp(p.d());
  std::vector<Cx<mp>> a;
  for (int k = 0; k <= p.degree(); ++k) a.push_back(embed_mp(p.coeff(k), w));
  return aberth_mp(std::move(a), bits, max_iter);
}

std::vector<RootCluster> cluster(const std::vector<lcplx>& roots, int bits) {
  // long double output cannot resolve clusters finer than this
  long double tau = std::max(std::ldexp(1.0L, -bits / 3), std::ldexp(1.0L, -50));
  std::vector<int> parent(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= tau * (1 + std::abs(roots[i]))) parent[find(i)] = find(j);
  std::vector<RootCluster> out;
  std::vector<int> slot(roots.size(), -1);
  std::vector<lcplx> sum;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({lcplx(0), 0});
      sum.push_back(0);
    }
    out[slot[r]].multiplicity++;
    sum[slot[r]] += roots[i];
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].z = sum[k] / static_cast<long double>(out[k].multiplicity);
  return out;
}

bool is_integer_point(lcplx c, long& v) {
  if (c.imag() != 0 || std::fabs(c.real()) > 1e15L || c.real() != std::floor(c.real())) return false;
  v = static_cast<long>(c.real());
  return true;
}

}  // namespace

lcplx horner(const ComplexPoly& p, lcplx z) {
  lcplx acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

long double backward_error(const ComplexPoly& p, lcplx z) {
  long double s = 0, az = std::abs(z);
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * az + std::abs(*it);
  return s == 0 ? 0 : std::abs(horner(p, z)) / s;
}

long double backward_error(const ComplexPoly& p, lcplx z, int multiplicity) {
  ComplexPoly q = p;
  for (int k = 1; k < multiplicity && q.size() > 1; ++k) {
    for (std::size_t i = 1; i < q.size(); ++i) q[i - 1] = q[i] * static_cast<long double>(i);
    q.pop_back();
  }
  return backward_error(q, z);
}

std::vector<lcplx> roots_complex(const ComplexPoly& poly, const RootOptions& opt) {
  ComplexPoly a = poly;
  while (!a.empty() && a.back() == lcplx(0)) a.pop_back();
  if (a.size() < 2) throw PreconditionViolated("root finding needs degree >= 1");
  int zeros = strip_zeros(a);
  std::vector<lcplx> out(zeros, lcplx(0));
  if (a.size() == 1) return out;
  std::vector<Cx<long double>> ca;
  for (auto& x : a) ca.emplace_back(x.real(), x.imag());
  std::vector<Cx<long double>> z;
  long double eps = std::numeric_limits<long double>::epsilon();
  if (aberth(ca, z, eps, opt.max_iter)) {
    for (const auto& r : z) out.push_back(r.ld());
    return out;
  }
  if (a.size() - 1 <= 12) {
    auto r = companion_roots(a);
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
  throw NonConvergence("root iteration did not converge at degree " + std::to_string(a.size() - 1));
}

ComplexPoly to_complex(const CycPoly1& p, int bits) { return p.embed(bits); }

ComplexPoly specialize_c(const CycPoly2& p, lcplx c0, int bits) {
  ComplexPoly out(p.deg_z() + 1);
  for (int k = 0; k <= p.deg_z(); ++k) out[k] = horner(p.zcoeff(k).embed(bits), c0);
  return out;
}

lcplx eval_point(const CycPoly2& p, lcplx c0, lcplx z0, int bits) { return horner(specialize_c(p, c0, bits), z0); }

std::vector<RootCluster> specialized_roots(const CycPoly2& p, lcplx c0, const RootOptions& opt, bool extended) {
  long v;
  if (p.is_rational() && is_integer_point(c0, v)) {
    std::vector<CycInt> co;
    CycInt x(p.d(), v);
    for (int k = 0; k <= p.deg_z(); ++k) co.push_back(p.zcoeff(k).eval(x));
    std::vector<RootCluster> out;
    for (const auto& [f, mult] : squarefree_decomposition(CycPoly1(p.d(), co)))
      for (lcplx r : (extended || opt.bits > 64) ? roots_mp(f, std::max(opt.bits, 256), opt.max_iter)
                                                 : roots_complex(f.embed(opt.bits), opt))
        out.push_back({r, mult});
    return out;
  }
  if (extended || opt.bits > 64) {
    int bits = std::max(opt.bits, extended ? 256 : 64);
    return cluster(roots_mp(p, c0, bits, opt.max_iter), bits);
  }
  return cluster(roots_complex(specialize_c(p, c0, opt.bits), opt), 64);
}

}  // namespace dynacurve
