#include <algorithm>

#include "dynacurve/cycpoly.hpp"
#include "dynacurve/errors.hpp"
#include "internal.hpp"

namespace dynacurve {

CycPoly2 compose_z(const CycPoly2& p, const CycPoly2& g) {
  if (p.d() != g.d()) throw RingMismatch("composition across different rings");
  if (g == CycPoly2::quadratic_family(p.d())) return compose_family(p);
  CycPoly2 acc(p.d());
  for (int a = p.deg_z(); a >= 0; --a) {
    acc = acc * g;
    acc += CycPoly2::from_c(p.zcoeff(a));
  }
  return acc;
}

// P(c, w + c) by Horner, where each step acc <- acc * (w + c) + P_i is pure
// addition on a (w, c) grid; then w -> z^d.
CycPoly2 compose_family(const CycPoly2& p) {
  int d = p.d(), phi = cyc_rank(d);
  int n = p.deg_z();
  if (n < 0) return CycPoly2(d);
  int cmax = 0;
  for (int i = 0; i <= n; ++i) cmax = std::max(cmax, p.zcoeff(i).degree() + i);
  std::size_t row = static_cast<std::size_t>(cmax + 1) * phi;
  std::vector<mpz_class> grid(static_cast<std::size_t>(n + 1) * row);
  std::vector<int> cd(n + 1, -1);
  auto cell = [&](int j, int b) { return &grid[j * row + static_cast<std::size_t>(b) * phi]; };
  auto add_row0 = [&](const CycPoly1& q) {
    const auto& raw = q.raw();
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (sgn(raw[i]) != 0) grid[i] += raw[i];
    cd[0] = std::max(cd[0], q.degree());
  };
  add_row0(p.zcoeff(n));
  int top = 0;
  for (int i = n - 1; i >= 0; --i) {
    ++top;
    for (int j = top; j >= 0; --j) {
      int lo = j > 0 ? cd[j - 1] : -1;
      int hi = cd[j] >= 0 ? cd[j] + 1 : -1;
      int nb = std::max(lo, hi);
      for (int b = nb; b >= 0; --b) {
        mpz_class* dst = cell(j, b);
        const mpz_class* up = j > 0 && b <= cd[j - 1] ? cell(j - 1, b) : nullptr;
        const mpz_class* left = b > 0 && b - 1 <= cd[j] ? cell(j, b - 1) : nullptr;
        for (int k = 0; k < phi; ++k) {
          bool u = up && sgn(up[k]) != 0, l = left && sgn(left[k]) != 0;
          if (u && l)
            mpz_add(dst[k].get_mpz_t(), up[k].get_mpz_t(), left[k].get_mpz_t());
          else if (u)
            dst[k] = up[k];
          else if (l)
            dst[k] = left[k];
          else
            dst[k] = 0;
        }
      }
      cd[j] = nb;
    }
    add_row0(p.zcoeff(i));
  }
  std::vector<CycPoly1> out(static_cast<std::size_t>(d) * top + 1, CycPoly1(d));
  for (int j = 0; j <= top; ++j) {
    if (cd[j] < 0) continue;
    CycPoly1 q(d);
    q.raw().resize(static_cast<std::size_t>(cd[j] + 1) * phi);
    for (std::size_t t = 0; t < q.raw().size(); ++t) mpz_swap(q.raw()[t].get_mpz_t(), grid[j * row + t].get_mpz_t());
    q.trim();
    out[static_cast<std::size_t>(d) * j] = std::move(q);
  }
  return CycPoly2(d, std::move(out));
}

CycPoly2 rotate_z(const CycPoly2& p, long k) {
  int d = p.d();
  CycPoly2 r(d);
  auto& rows = r.zcoeffs();
  rows.reserve(p.deg_z() + 1);
  for (int a = 0; a <= p.deg_z(); ++a) {
    long e = (k % d) * (a % d);
    rows.push_back(p.zcoeff(a).is_zero() ? CycPoly1(d) : p.zcoeff(a).scale(CycInt::omega_pow(d, e)));
  }
  r.trim();
  return r;
}

CycPoly1 diagonal(const CycPoly2& p) {
  CycPoly1 acc(p.d());
  for (int a = 0; a <= p.deg_z(); ++a) acc += p.zcoeff(a).shift(a);
  return acc;
}

CycPoly2 derivative_z(const CycPoly2& p) {
  int d = p.d();
  std::vector<CycPoly1> rows;
  for (int a = 1; a <= p.deg_z(); ++a) rows.push_back(p.zcoeff(a).scale(CycInt(d, a)));
  return CycPoly2(d, std::move(rows));
}

CycPoly2 derivative_c(const CycPoly2& p) {
  std::vector<CycPoly1> rows;
  for (int a = 0; a <= p.deg_z(); ++a) rows.push_back(p.zcoeff(a).derivative());
  return CycPoly2(p.d(), std::move(rows));
}

std::vector<std::vector<lcplx>> embed_complex(const CycPoly2& p, int bits) {
  std::vector<std::vector<lcplx>> out;
  out.reserve(p.deg_z() + 1);
  for (int a = 0; a <= p.deg_z(); ++a) out.push_back(p.zcoeff(a).embed(bits));
  return out;
}

}  // namespace dynacurve
