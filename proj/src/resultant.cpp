#include <algorithm>

#include "dynacurve/cycpoly.hpp"
#include "dynacurve/errors.hpp"

namespace dynacurve {

namespace {

using ZPoly = std::vector<CycPoly1>;  // coefficients in z, entries in Z[w][c]

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ZPoly prem(const ZPoly& a, const ZPoly& b) {
  int d = a.front().d();
  int db = zdeg(b);
  const CycPoly1& lb = b.back();
  ZPoly r = a;
  int e = zdeg(a) - db + 1;
  while (!r.empty() && zdeg(r) >= db) {
    CycPoly1 lr = r.back();
    int s = zdeg(r) - db;
    for (auto& x : r) x = x * lb;
    for (int j = 0; j <= db; ++j) r[s + j] -= lr * b[j];
    r.pop_back();
    ztrim(r);
    --e;
  }
  if (e > 0) {
    CycPoly1 f = lb.pow(static_cast<unsigned>(e));
    for (auto& x : r) x = x * f;
  }
  (void)d;
  return r;
}

}  // namespace

CycPoly1 resultant_z(const CycPoly2& pa, const CycPoly2& pb) {
  if (pa.d() != pb.d()) throw RingMismatch("resultant across different rings");
  int d = pa.d();
  if (pa.is_zero() || pb.is_zero()) return CycPoly1(d);
  ZPoly a = pa.zcoeffs(), b = pb.zcoeffs();
  int sign = 1;
  if (zdeg(a) < zdeg(b)) {
    std::swap(a, b);
    if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) sign = -sign;
  }
  if (zdeg(b) == 0) return b[0].pow(static_cast<unsigned>(zdeg(a))).scale(CycInt(d, sign));
  CycPoly1 g = CycPoly1::constant(CycInt(d, 1)), h = g;
  while (true) {
    int delta = zdeg(a) - zdeg(b);
    if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) sign = -sign;
    ZPoly r = prem(a, b);
    a = std::move(b);
    CycPoly1 div = g * h.pow(static_cast<unsigned>(delta));
    for (auto& x : r) x = x.divexact(div);
    b = std::move(r);
    g = a.back();
    if (delta >= 1) h = g.pow(static_cast<unsigned>(delta)).divexact(h.pow(static_cast<unsigned>(delta - 1)));
    if (b.empty()) return CycPoly1(d);
    if (zdeg(b) == 0) break;
  }
  int da = zdeg(a);
  CycPoly1 res = b[0].pow(static_cast<unsigned>(da)).divexact(h.pow(static_cast<unsigned>(da - 1)));
  return sign > 0 ? res : -res;
}

CycPoly1 resultant_sylvester(const CycPoly2& pa, const CycPoly2& pb) {
  if (pa.d() != pb.d()) throw RingMismatch("resultant across different rings");
  int d = pa.d();
  int m = pa.deg_z(), n = pb.deg_z();
  if (m < 0 || n < 0) return CycPoly1(d);
  int N = m + n;
  if (N == 0) return CycPoly1::constant(CycInt(d, 1));
  std::vector<std::vector<CycPoly1>> M(N, std::vector<CycPoly1>(N, CycPoly1(d)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = pa.zcoeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = pb.zcoeff(n - j);
  // Bareiss fraction-free elimination.
  int sign = 1;
  CycPoly1 prev = CycPoly1::constant(CycInt(d, 1));
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int r = k + 1;
      while (r < N && M[r][k].is_zero()) ++r;
      if (r == N) return CycPoly1(d);
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        CycPoly1 t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = t.divexact(prev);
      }
      M[i][k] = CycPoly1(d);
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

namespace {

using IPoly = std::vector<mpz_class>;

void itrim(IPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

IPoly primitive(IPoly p) {
  itrim(p);
  if (p.empty()) return p;
  mpz_class g = 0;
  for (const auto& x : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (sgn(p.back()) < 0) g = -g;
  for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return p;
}

IPoly iprem(const IPoly& a, const IPoly& b) {
  IPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    mpz_class lr = r.back();
    int s = static_cast<int>(r.size()) - 1 - db;
    for (auto& x : r) x *= b.back();
    for (int j = 0; j <= db; ++j) r[s + j] -= lr * b[j];
    r.pop_back();
    itrim(r);
  }
  return r;
}

IPoly igcd(IPoly a, IPoly b) {
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IPoly r = primitive(iprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IPoly idivexact(const IPoly& a, const IPoly& b) {
  if (a.empty()) return a;
  IPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  int dq = static_cast<int>(a.size()) - 1 - db;
  IPoly q(dq + 1);
  for (int i = dq; i >= 0; --i) {
    if (!mpz_divisible_p(r[i + db].get_mpz_t(), b.back().get_mpz_t()))
      throw NonZeroRemainder("integer polynomial not divisible");
    mpz_divexact(q[i].get_mpz_t(), r[i + db].get_mpz_t(), b.back().get_mpz_t());
    for (int j = 0; j <= db; ++j) r[i + j] -= q[i] * b[j];
  }
  itrim(r);
  if (!r.empty()) throw NonZeroRemainder("integer polynomial not divisible");
  return q;
}

IPoly ideriv(const IPoly& a) {
  IPoly da(a.empty() ? 0 : a.size() - 1);
  for (std::size_t b = 1; b < a.size(); ++b) da[b - 1] = a[b] * static_cast<unsigned long>(b);
  return da;
}

IPoly isub(IPoly a, const IPoly& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  itrim(a);
  return a;
}

IPoly to_ipoly(const CycPoly1& p) {
  if (!p.is_rational()) throw PreconditionViolated("needs rational coefficients");
  IPoly a(p.degree() + 1);
  for (int b = 0; b <= p.degree(); ++b) a[b] = p.raw()[static_cast<std::size_t>(b) * p.phi()];
  itrim(a);
  return a;
}

CycPoly1 from_ipoly(int d, const IPoly& s) {
  int phi = cyc_rank(d);
  CycPoly1 out(d);
  out.raw().resize(s.size() * phi);
  for (std::size_t b = 0; b < s.size(); ++b) out.raw()[b * phi] = s[b];
  out.trim();
  return out;
}

}  // namespace

CycPoly1 squarefree_part(const CycPoly1& p) {
  IPoly a = to_ipoly(p);
  if (a.size() <= 1) return p;
  IPoly g = igcd(a, ideriv(a));
  return from_ipoly(p.d(), primitive(idivexact(primitive(a), g)));
}

// Yun's algorithm over Z, keeping every intermediate primitive.
std::vector<std::pair<CycPoly1, int>> squarefree_decomposition(const CycPoly1& p) {
  IPoly a = primitive(to_ipoly(p));
  std::vector<std::pair<CycPoly1, int>> out;
  if (a.size() <= 1) return out;
  IPoly da = ideriv(a);
  IPoly b = igcd(a, da);
  IPoly c = idivexact(a, b);
  IPoly w = isub(idivexact(da, b), ideriv(c));
  for (int i = 1; c.size() > 1; ++i) {
    IPoly f = w.empty() ? c : igcd(c, w);
    c = idivexact(c, f);
    w = isub(idivexact(w, f), ideriv(c));
    if (f.size() > 1) out.emplace_back(from_ipoly(p.d(), primitive(f)), i);
  }
  return out;
}

}  // namespace dynacurve
