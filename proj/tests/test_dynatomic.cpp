#include "doctest.h"
#include "dynacurve/dynatomic.hpp"
#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "gen.hpp"

using namespace dynacurve;
using testgen::eval2;

namespace {

CycPoly2 Z(int d) { return CycPoly2::z(d); }
CycPoly2 C(int d) { return CycPoly2::c(d); }
CycPoly2 K(int d, long v) { return CycPoly2::constant(CycInt(d, v)); }

// f_c^k(z) by repeated exact evaluation
CycInt orbit(const CycInt& c, CycInt z, int k) {
  for (int i = 0; i < k; ++i) {
    CycInt w(c.d(), 1);
    for (int e = 0; e < c.d(); ++e) w *= z;
    z = w + c;
  }
  return z;
}

}  // namespace

TEST_CASE("iterate differences by hand") {
  FamilyContext two(2), three(3);
  CHECK(two.phi(0, 1) == Z(2).pow(2) + C(2) - Z(2));
  auto f = Z(2).pow(2) + C(2);
  CHECK(two.phi(1, 1) == f.pow(2) + C(2) - f);
  auto g = Z(3).pow(3) + C(3);
  CHECK(three.phi(0, 2) == g.pow(3) + C(3) - Z(3));
  CHECK(three.phi(1, 2).deg_z() == 27);
}

TEST_CASE("iterate differences agree with orbits") {
  for (int d : {2, 3, 4}) {
    FamilyContext ctx(d);
    for (int n = 0; n <= 2; ++n)
      for (int p = 1; n + p <= 4 && (d < 4 || n + p <= 3); ++p)
        for (int t = 0; t < 4; ++t) {
          CycInt c0 = testgen::small_cycint(d, 2), z0 = testgen::small_cycint(d, 2);
          CHECK(eval2(ctx.phi(n, p), c0, z0) == orbit(c0, z0, n + p) - orbit(c0, z0, n));
        }
  }
}

TEST_CASE("small dynatomic polynomials by hand") {
  FamilyContext ctx(2);
  CHECK(ctx.Q(0, 1) == Z(2).pow(2) - Z(2) + C(2));
  CHECK(ctx.Q(0, 2) == Z(2).pow(2) + Z(2) + C(2) + K(2, 1));
  CHECK(ctx.Q(1, 1) == Z(2).pow(2) + Z(2) + C(2));
  auto f = Z(2).pow(2) + C(2);
  CHECK(ctx.Q(2, 1) == f.pow(2) + f + C(2));
  CHECK(ctx.Q(1, 2).deg_z() == 2);
  CHECK(ctx.Q(2, 1) == ctx.Q_by_division(2, 1));
  // the only factor for d = 2 is Q itself, and it is Q_0(c, -z)
  CHECK(ctx.factor(1, 3, 1) == ctx.Q(1, 3));
  CHECK(ctx.factor(1, 3, 1) == rotate_z(ctx.Q(0, 3), 1));
  FamilyContext three(3);
  CHECK(three.Q(0, 1) == Z(3).pow(3) - Z(3) + C(3));
  CHECK(multiply(three.factor(1, 1, 1), three.factor(1, 1, 2)) == three.Q(1, 1));
  CHECK(three.Q(1, 1) == divide_exact(three.phi(1, 1), three.phi(0, 1)));
}

TEST_CASE("factors are rotations of the periodic polynomial") {
  for (int d : {3, 4, 5}) {
    FamilyContext ctx(d);
    for (int j = 1; j < d; ++j) {
      const auto& q = ctx.factor(1, 1, j);
      // q^j(c, z) = Q_0(c, w^-j z) checked pointwise
      for (int t = 0; t < 3; ++t) {
        CycInt c0 = testgen::small_cycint(d), z0 = testgen::small_cycint(d);
        CHECK(eval2(q, c0, z0) == eval2(ctx.Q(0, 1), c0, CycInt::omega_pow(d, -j) * z0));
      }
      if (2 * j != d) CHECK(!q.is_rational());
    }
  }
}

TEST_CASE("defining identities hold on the desk grid") {
  struct Cell {
    int d, n, p;
  };
  std::vector<Cell> cells;
  for (int n = 0; n <= 3; ++n)
    for (int p = 1; p <= 4; ++p) {
      if (n + p <= 6) cells.push_back({2, n, p});
      if (n + p <= 4) cells.push_back({3, n, p});
      if (n + p <= 3) cells.push_back({4, n, p});
    }
  for (int d : {2, 3, 4}) {
    FamilyContext ctx(d);
    for (const auto& c : cells) {
      if (c.d != d) continue;
      CAPTURE(c.d);
      CAPTURE(c.n);
      CAPTURE(c.p);
      auto rep = verify_identities(ctx, c.n, c.p);
      for (const auto& chk : rep.checks) {
        CAPTURE(chk.name);
        CHECK((!chk.applicable || chk.pass));
      }
      CHECK(rep.all_pass());
    }
  }
}

TEST_CASE("pullback holds pointwise") {
  FamilyContext ctx(3);
  for (int t = 0; t < 6; ++t) {
    CycInt c0 = testgen::small_cycint(3), z0 = testgen::small_cycint(3);
    CHECK(eval2(ctx.Q(2, 1), c0, z0) == eval2(ctx.Q(1, 1), c0, orbit(c0, z0, 1)));
    CHECK(eval2(ctx.factor(2, 2, 2), c0, z0) == eval2(ctx.factor(1, 2, 2), c0, orbit(c0, z0, 1)));
  }
}

TEST_CASE("resource limits") {
  FamilyContext ctx(2);
  CHECK_THROWS_AS(ctx.phi(10, 5), ResourceCapExceeded);
  CHECK_NOTHROW(ctx.check_cap(3, 4));
  FamilyContext four(4);
  CHECK_NOTHROW(four.check_cap(2, 4));
  CHECK_NOTHROW(four.check_cap(3, 3));
  // at the cap boundary the storage estimate rules the cell out
  CHECK_THROWS_AS(four.check_cap(3, 4), ResourceCapExceeded);
  ResourceLimits tight;
  tight.max_degree = 64;
  FamilyContext small(2, tight);
  CHECK_THROWS_AS(small.Q(3, 4), ResourceCapExceeded);
  CHECK_THROWS_AS(ctx.factor(1, 1, 0), PreconditionViolated);
}
