#include <cmath>

#include "doctest.h"
#include "dynacurve/cycpoly.hpp"
#include "dynacurve/errors.hpp"
#include "gen.hpp"

using namespace dynacurve;
using testgen::cycint;
using testgen::eval2;
using testgen::small_cycint;

namespace {
const int kRings[] = {2, 3, 4, 5, 6, 7, 8, 12};
}

TEST_CASE("cyclotomic polynomials of small order") {
  CHECK(cyclotomic_coeffs(2) == std::vector<long>{1, 1});
  CHECK(cyclotomic_coeffs(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomic_coeffs(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_coeffs(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_coeffs(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyc_rank(7) == 6);
}

TEST_CASE("omega is a primitive d-th root of unity") {
  for (int d : kRings) {
    CycInt w = CycInt::omega_pow(d, 1), p(d, 1);
    for (int k = 1; k < d; ++k) {
      p *= w;
      CHECK_FALSE(p.is_one());
    }
    p *= w;
    CHECK(p.is_one());
    CHECK(CycInt::omega_pow(d, -1) * w == CycInt(d, 1));
  }
  // w^2 = -w - 1 in Z[w_3]
  CycInt w3 = CycInt::omega_pow(3, 2);
  CHECK(w3[0] == -1);
  CHECK(w3[1] == -1);
}

TEST_CASE("ring axioms hold on random elements") {
  for (int d : kRings)
    for (int t = 0; t < 20; ++t) {
      CycInt a = cycint(d), b = cycint(d), c = cycint(d);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == CycInt(d));
    }
}

TEST_CASE("multiplication agrees with cyclic convolution oracle") {
  for (int d : kRings)
    for (int t = 0; t < 20; ++t) {
      CycInt a = cycint(d, 60), b = cycint(d, 60);
      CHECK((a * b).coords() == testgen::cyclic_product_oracle(d, a, b));
    }
}

TEST_CASE("embedding is a ring homomorphism within the stated bound") {
  for (int d : kRings)
    for (int t = 0; t < 20; ++t) {
      CycInt a = cycint(d, 30), b = cycint(d, 30);
      CycInt ab = a * b;
      long double sum = 0;
      for (const auto& x : ab.coords()) sum += std::fabs(mpz_get_d(x.get_mpz_t()));
      for (int bits : {53, 64, 128}) {
        lcplx lhs = ab.embed(bits), rhs = a.embed(bits) * b.embed(bits);
        // the product on the right carries its own rounding; scale by |a||b|
        long double sa = 0, sb = 0;
        for (const auto& x : a.coords()) sa += std::fabs(mpz_get_d(x.get_mpz_t()));
        for (const auto& x : b.coords()) sb += std::fabs(mpz_get_d(x.get_mpz_t()));
        CHECK(std::abs(lhs - rhs) <= std::ldexp(8.0L, -std::min(bits, 62)) * (sum + 4 * sa * sb));
      }
    }
}

TEST_CASE("norm and exact division") {
  for (int d : kRings)
    for (int t = 0; t < 10; ++t) {
      CycInt a = cycint(d, 30), b = small_cycint(d);
      if (b.is_zero()) continue;
      CHECK((a * b).divexact(b) == a);
      CHECK(b.norm() == (b * b.galois(d - 1)).norm() / b.galois(d - 1).norm());
    }
  CHECK_THROWS_AS(CycInt(3, 5).divexact(CycInt(3, 2)), NonZeroRemainder);
  // 1 - w has norm p in Z[w_p]
  CHECK((CycInt(5, 1) - CycInt::omega_pow(5, 1)).norm() == 5);
  CHECK_THROWS_AS(CycInt(3, 1) + CycInt(4, 1), RingMismatch);
}

TEST_CASE("bivariate product: both kernels match pointwise evaluation") {
  for (int d : {2, 3, 4, 5}) {
    for (int t = 0; t < 6; ++t) {
      CycPoly2 a = testgen::poly2(d, testgen::uniform(0, 7), testgen::uniform(0, 5), 40);
      CycPoly2 b = testgen::poly2(d, testgen::uniform(0, 7), testgen::uniform(0, 5), 40, 0.7, t % 2 == 0);
      CycPoly2 p1 = multiply(a, b, MulKernel::Schoolbook);
      CycPoly2 p2 = multiply(a, b, MulKernel::Kronecker);
      CHECK(p1 == p2);
      for (int s = 0; s < 3; ++s) {
        CycInt c0 = small_cycint(d), z0 = small_cycint(d);
        CHECK(eval2(p1, c0, z0) == eval2(a, c0, z0) * eval2(b, c0, z0));
      }
    }
  }
}

TEST_CASE("packed product with a sparse z-stride") {
  CycPoly2 f = CycPoly2::quadratic_family(3);
  CycPoly2 g = f.pow(3);  // polynomial in z^3
  CHECK(g.z_stride() == 3);
  CHECK(multiply(g, g, MulKernel::Kronecker) == multiply(g, g, MulKernel::Schoolbook));
  CycPoly2 h = testgen::poly2(3, 5, 3, 100);
  CHECK(multiply(g, h, MulKernel::Kronecker) == multiply(g, h, MulKernel::Schoolbook));
}

TEST_CASE("exact division round trip and remainder detection") {
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 6; ++t) {
      CycPoly2 a = testgen::poly2(d, testgen::uniform(0, 6), testgen::uniform(0, 4), 30);
      bool rational = t % 2 == 0;
      CycPoly2 b = testgen::monic(testgen::poly2(d, 5, 3, 30, 0.7, rational), testgen::uniform(1, 5));
      CycPoly2 ab = a * b;
      CHECK(divide_exact(ab, b, DivKernel::Schoolbook) == a);
      if (rational) CHECK(divide_exact(ab, b, DivKernel::Kronecker) == a);
      CycPoly2 off = ab + CycPoly2::constant(CycInt(d, 1));
      CHECK_THROWS_AS(divide_exact(off, b, DivKernel::Schoolbook), NonZeroRemainder);
      if (rational) CHECK_THROWS_AS(divide_exact(off, b, DivKernel::Kronecker), NonZeroRemainder);
    }
  }
  // non-monic divisor over Z[w]: leading coefficient 2 + w
  CycPoly2 b(3);
  b.set_coeff(2, 0, CycInt(3, 2) + CycInt::omega_pow(3, 1));
  b.set_coeff(0, 1, CycInt(3, 1));
  CycPoly2 a = testgen::poly2(3, 3, 2, 10);
  CHECK(divide_exact(a * b, b) == a);
}

TEST_CASE("composition routes agree") {
  for (int d : {2, 3, 4}) {
    CycPoly2 f = CycPoly2::quadratic_family(d);
    for (int t = 0; t < 4; ++t) {
      CycPoly2 p = testgen::poly2(d, testgen::uniform(0, 6), testgen::uniform(0, 3), 25);
      CycPoly2 fast = compose_family(p);
      CycPoly2 slow(d);
      for (int a = p.deg_z(); a >= 0; --a) slow = multiply(slow, f, MulKernel::Schoolbook) + CycPoly2::from_c(p.zcoeff(a));
      CHECK(fast == slow);
      CHECK(compose_z(p, f) == fast);
      CycInt c0 = small_cycint(d, 2), z0 = small_cycint(d, 2);
      CycInt fz = z0;
      for (int k = 1; k < d; ++k) fz *= z0;
      CHECK(eval2(fast, c0, z0) == eval2(p, c0, fz + c0));
    }
    CycPoly2 g = testgen::poly2(d, 2, 2, 5);
    CycPoly2 p = testgen::poly2(d, 3, 2, 5);
    CycInt c0 = small_cycint(d, 2), z0 = small_cycint(d, 2);
    CHECK(eval2(compose_z(p, g), c0, z0) == eval2(p, c0, eval2(g, c0, z0)));
  }
}

TEST_CASE("rotation, diagonal and derivatives evaluate correctly") {
  for (int d : {2, 3, 4, 6}) {
    CycPoly2 p = testgen::poly2(d, 5, 3, 20);
    for (long k : {1L, 2L, -1L}) {
      CycInt c0 = small_cycint(d, 2), z0 = small_cycint(d, 2);
      CHECK(eval2(rotate_z(p, k), c0, z0) == eval2(p, c0, CycInt::omega_pow(d, k) * z0));
    }
    CHECK(rotate_z(rotate_z(p, 1), d - 1) == p);
    CycInt c0 = small_cycint(d, 2);
    CHECK(diagonal(p).eval(c0) == eval2(p, c0, c0));
    CycPoly2 q = testgen::poly2(d, 4, 3, 20);
    CHECK(derivative_z(p * q) == derivative_z(p) * q + p * derivative_z(q));
    CHECK(derivative_c(p * q) == derivative_c(p) * q + p * derivative_c(q));
  }
}

TEST_CASE("resultant: known value, PRS against Sylvester, specialization") {
  // res_z(z^2 + c, 2z) = 4c
  CycPoly2 a = CycPoly2::quadratic_family(2);
  CycPoly2 b = derivative_z(a);
  CycPoly1 r = resultant_z(a, b);
  CHECK(r == CycPoly1(2, {CycInt(2, 0), CycInt(2, 4)}));
  CHECK(resultant_sylvester(a, b) == r);
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      CycPoly2 p = testgen::poly2(d, testgen::uniform(1, 5), testgen::uniform(0, 2), 6);
      CycPoly2 q = testgen::poly2(d, testgen::uniform(1, 4), testgen::uniform(0, 2), 6);
      if (p.deg_z() < 1 || q.deg_z() < 1) continue;
      CycPoly1 prs = resultant_z(p, q);
      CHECK(prs == resultant_sylvester(p, q));
      // res(q, p) = (-1)^(deg p deg q) res(p, q)
      CycPoly1 swapped = resultant_z(q, p);
      CHECK(((p.deg_z() * q.deg_z()) % 2 == 0 ? swapped : -swapped) == prs);
    }
  }
  // res(z^2 + z + c, 2z + 1) = (2a+1)(2b+1) = 4c - 1
  CycPoly2 per(2);
  per.set_coeff(2, 0, CycInt(2, 1));
  per.set_coeff(1, 0, CycInt(2, 1));
  per.set_coeff(0, 1, CycInt(2, 1));
  CycPoly1 disc = resultant_z(per, derivative_z(per));
  CHECK(disc == CycPoly1(2, {CycInt(2, -1), CycInt(2, 4)}));
}

TEST_CASE("squarefree part") {
  // (c - 1)^3 (c + 2)^2 (2c + 1)
  CycPoly1 x = CycPoly1::variable(2);
  CycPoly1 one = CycPoly1::constant(CycInt(2, 1));
  CycPoly1 two = CycPoly1::constant(CycInt(2, 2));
  CycPoly1 p = (x - one).pow(3) * (x + two).pow(2) * (two * x + one);
  CycPoly1 s = squarefree_part(p);
  CHECK(s == (x - one) * (x + two) * (two * x + one));
}

TEST_CASE("json round trip and malformed input") {
  for (int d : {2, 3, 5}) {
    CycPoly2 p = testgen::poly2(d, 4, 3, 200);
    CHECK(poly_from_json(to_json(p)) == p);
    CHECK(poly_from_json(nlohmann::json::parse(to_json(p).dump())) == p);
  }
  auto j = to_json(CycPoly2::quadratic_family(3));
  CHECK(j["schema"] == 1);
  CHECK(j["d"] == 3);
  auto bad = j;
  bad["z_coeffs"][0][0] = nlohmann::json::array({"1"});
  CHECK_THROWS_AS(poly_from_json(bad), MalformedInput);
  bad = j;
  bad["z_coeffs"][0][0][0] = "12x";
  CHECK_THROWS_AS(poly_from_json(bad), MalformedInput);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse("{\"schema\":2}")), MalformedInput);
}
