#pragma once
// Random generators and small exact oracles shared by the unit tests.

#include <gmpxx.h>

#include <random>
#include <vector>

#include "dynacurve/cycpoly.hpp"

namespace testgen {

using dynacurve::CycInt;
using dynacurve::CycPoly1;
using dynacurve::CycPoly2;

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(0x5eed1234);
  return r;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline mpz_class big(int bits) {
  static gmp_randclass gr(gmp_randinit_default);
  static bool seeded = [] {
    gr.seed(20240611);
    return true;
  }();
  (void)seeded;
  mpz_class v = gr.get_z_bits(bits);
  return uniform(0, 1) ? v : mpz_class(-v);
}

inline CycInt cycint(int d, int bits = 20) {
  std::vector<mpz_class> c(dynacurve::cyc_rank(d));
  for (auto& x : c) x = big(uniform(1, bits));
  return CycInt(d, std::move(c));
}

inline CycInt small_cycint(int d, long mag = 3) {
  std::vector<mpz_class> c(dynacurve::cyc_rank(d));
  for (auto& x : c) x = uniform(-mag, mag);
  return CycInt(d, std::move(c));
}

inline CycPoly2 poly2(int d, int dz, int dc, int bits = 20, double density = 0.7, bool rational = false) {
  CycPoly2 p(d);
  std::uniform_real_distribution<double> u(0, 1);
  for (int a = 0; a <= dz; ++a)
    for (int b = 0; b <= dc; ++b)
      if (u(rng()) < density) p.set_coeff(a, b, rational ? CycInt(d, big(bits)) : cycint(d, bits));
  return p;
}

inline CycPoly2 monic(CycPoly2 p, int deg) {
  for (int a = deg; a <= p.deg_z(); ++a)
    for (int b = 0; b <= p.deg_c(); ++b) p.set_coeff(a, b, CycInt(p.d()));
  p.set_coeff(deg, 0, CycInt(p.d(), 1));
  return p;
}

// Exact value at (c0, z0) computed term by term.
inline CycInt eval2(const CycPoly2& p, const CycInt& c0, const CycInt& z0) {
  CycInt s(p.d()), zp(p.d(), 1);
  for (int a = 0; a <= p.deg_z(); ++a) {
    CycInt cp(p.d(), 1);
    for (int b = 0; b <= p.zcoeff(a).degree(); ++b) {
      s += p.coeff(a, b) * cp * zp;
      cp *= c0;
    }
    zp *= z0;
  }
  return s;
}

// Product in Z[x]/(x^d - 1) followed by long division by the cyclotomic
// polynomial, computed here from scratch.
inline std::vector<mpz_class> cyclic_product_oracle(int d, const CycInt& a, const CycInt& b) {
  std::vector<mpz_class> t(d);
  for (std::size_t i = 0; i < a.coords().size(); ++i)
    for (std::size_t j = 0; j < b.coords().size(); ++j) t[(i + j) % d] += a[i] * b[j];
  // cyclotomic polynomial by repeated division of x^n - 1
  std::vector<std::vector<mpz_class>> cyc(d + 1);
  for (int n = 1; n <= d; ++n) {
    if (d % n) continue;
    std::vector<mpz_class> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int k = 1; k < n; ++k) {
      if (n % k || d % k) continue;
      const auto& den = cyc[k];
      int dd = static_cast<int>(den.size()) - 1;
      std::vector<mpz_class> q(num.size() - dd);
      for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        q[i] = num[i + dd];
        for (int j = 0; j <= dd; ++j) num[i + j] -= q[i] * den[j];
      }
      num = q;
    }
    cyc[n] = num;
  }
  const auto& phi = cyc[d];
  int deg = static_cast<int>(phi.size()) - 1;
  for (int e = d - 1; e >= deg; --e) {
    mpz_class top = t[e];
    for (int j = 0; j <= deg; ++j) t[e - deg + j] -= top * phi[j];
  }
  t.resize(deg);
  return t;
}

}  // namespace testgen
