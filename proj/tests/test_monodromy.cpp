#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/monodromy.hpp"
#include "gen.hpp"

using namespace dynacurve;

namespace {

bool has_near(const std::vector<lcplx>& v, lcplx x, long double tol = 1e-8L) {
  return std::any_of(v.begin(), v.end(), [&](lcplx y) { return std::abs(x - y) < tol; });
}

Perm random_perm(int n) {
  Perm p = identity_perm(n);
  std::shuffle(p.begin(), p.end(), testgen::rng());
  return p;
}

// Order of the group generated by `gens`, closing under left multiplication
// with a linear-scan membership test.
long brute_order(const std::vector<Perm>& gens, int n) {
  std::vector<Perm> all{identity_perm(n)};
  for (std::size_t head = 0; head < all.size(); ++head)
    for (const auto& g : gens) {
      Perm x(n);
      for (int i = 0; i < n; ++i) x[i] = g[all[head][i]];
      if (std::find(all.begin(), all.end(), x) == all.end()) all.push_back(x);
    }
  return static_cast<long>(all.size());
}

}  // namespace

TEST_CASE("permutation helpers") {
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(testgen::uniform(1, 9));
    Perm a = random_perm(n), b = random_perm(n), c = random_perm(n);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, inverse(a)) == identity_perm(n));
    CHECK(cycle_count(a) == cycle_count(inverse(a)));
    for (int i = 0; i < n; ++i) CHECK(compose(a, b)[i] == b[a[i]]);
  }
  CHECK(cycle_count(identity_perm(5)) == 5);
  CHECK(cycle_count({1, 2, 0}) == 1);
  CHECK(restrict_to({1, 0, 3, 2}, {2, 3}) == Perm{1, 0});
  CHECK_THROWS_AS(restrict_to({1, 2, 0}, {0, 1}), PreconditionViolated);
}

TEST_CASE("group closure") {
  CHECK(generate_group({{1, 0}}).order == 2);
  CHECK(generate_group({{1, 0, 2}, {1, 2, 0}}).order == 6);
  CHECK(generate_group({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}).order == 120);
  CHECK_THROWS_AS(generate_group({{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, 50), GroupTooLarge);
  for (int t = 0; t < 20; ++t) {
    int n = static_cast<int>(testgen::uniform(2, 5));
    std::vector<Perm> gens{random_perm(n), random_perm(n)};
    auto g = generate_group(gens);
    CHECK(g.order == brute_order(gens, n));
    for (const auto& x : g.elements) CHECK(g.contains(inverse(x)));
  }
  CHECK(is_transitive({{1, 2, 0, 3}}, {0, 1, 2}));
  CHECK_FALSE(is_transitive({{1, 0, 2}}, {0, 1, 2}));
}

TEST_CASE("wreath multiplication is associative with identity and inverses") {
  auto rand_el = [](int k, int d) {
    WreathElement e;
    e.modulus = d;
    e.base = random_perm(k);
    for (int i = 0; i < k; ++i) e.twist.push_back(static_cast<int>(testgen::uniform(0, d - 1)));
    return e;
  };
  for (int t = 0; t < 100; ++t) {
    int k = static_cast<int>(testgen::uniform(1, 6)), d = static_cast<int>(testgen::uniform(2, 4));
    auto a = rand_el(k, d), b = rand_el(k, d), c = rand_el(k, d);
    CHECK((a * b) * c == a * (b * c));
    WreathElement id{identity_perm(k), std::vector<int>(k, 0), d};
    CHECK(a * id == a);
    CHECK(id * a == a);
    // inverse: base^{-1} with twist i -> -g[base^{-1}(i)]
    WreathElement inv{inverse(a.base), std::vector<int>(k), d};
    for (int i = 0; i < k; ++i) inv.twist[i] = (d - a.twist[inv.base[i]]) % d;
    CHECK(a * inv == id);
    CHECK(inv * a == id);
  }
}

TEST_CASE("critical values") {
  FamilyContext two(2);
  auto a = critical_values(two, 1, 1);
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a[0] - lcplx(0.25L)) < 1e-12L);

  auto b = critical_values(two, 0, 2);
  REQUIRE(b.size() == 1);
  CHECK(std::abs(b[0] - lcplx(-0.75L)) < 1e-12L);

  auto c = critical_values(two, 2, 1);
  for (lcplx v : {lcplx(0), lcplx(-2), lcplx(0.25L)}) CHECK(has_near(c, v));

  // Misiurewicz parameters are critical values
  auto e = critical_values(two, 2, 2);
  for (lcplx v : find_misiurewicz(two, 2, 2, 1).roots) CHECK(has_near(e, v, 1e-7L));

  // for d >= 3 the factor curves cross over the centers, so those are critical too
  FamilyContext three(3);
  for (int n : {1, 2}) {
    auto f = critical_values(three, n, 2);
    for (lcplx v : find_centers(three, 2).roots) CHECK(has_near(f, v, 1e-7L));
  }
}

TEST_CASE("tracking single loops") {
  FamilyContext two(2);
  RootTracker t11(two.Q(1, 1));
  auto start = t11.roots_at(0.5L);
  Path around{PathPiece::circle(0.25L, 0.25L, 0, 2 * std::numbers::pi_v<long double>)};
  CHECK(t11.loop_permutation(around, start) == Perm{1, 0});
  Path away{PathPiece::circle(2.5L, 0.3L, 0, 2 * std::numbers::pi_v<long double>)};
  auto s2 = t11.roots_at(2.8L);
  CHECK(t11.loop_permutation(away, s2) == identity_perm(2));

  // small loop around the superattracting center c = 0 for Q_{2,1}
  RootTracker t21(two.Q(2, 1));
  auto s3 = t21.roots_at(0.05L);
  Path center{PathPiece::circle(0, 0.05L, 0, 2 * std::numbers::pi_v<long double>)};
  Perm sigma = t21.loop_permutation(center, s3);
  for (std::size_t i = 0; i < s3.size(); ++i) {
    bool small = std::abs(s3[i]) < 0.5L;
    if (small)
      CHECK(sigma[i] != static_cast<int>(i));
    else
      CHECK(sigma[i] == static_cast<int>(i));
  }
  for (std::size_t i = 0; i < s3.size(); ++i) CHECK(t21.residual(0.05L, s3[i]) < 1e-15L);
}

TEST_CASE("comb loops stay clear of the other critical values") {
  std::vector<lcplx> crit{0, -2, 0.25L, lcplx(-1, 0.3L), lcplx(-1, -0.3L), -1.75L};
  auto spec = comb_loops(3, crit);
  CHECK(spec.loops.size() == crit.size());
  CHECK(spec.min_clearance > 0);
  for (std::size_t k = 0; k < spec.loops.size(); ++k) {
    const auto& loop = spec.loops[k];
    CHECK(std::abs(loop.front().at(0) - lcplx(3)) < 1e-15L);
    CHECK(std::abs(loop.back().at(1) - lcplx(3)) < 1e-15L);
    // sampled points stay clear of the other critical values
    for (const auto& piece : loop)
      for (int s = 0; s <= 200; ++s)
        for (lcplx v : spec.critical_values) {
          if (v == spec.critical_values[k]) continue;
          CHECK(std::abs(piece.at(s / 200.0L) - v) > 0.5L * spec.min_clearance);
        }
  }
}

TEST_CASE("monodromy groups match the Galois recursion") {
  struct Cell {
    int d, n, p;
  };
  for (auto c : {Cell{2, 1, 1}, Cell{2, 0, 2}, Cell{2, 1, 2}, Cell{2, 2, 1}, Cell{2, 2, 2}, Cell{2, 1, 3},
                 Cell{3, 1, 1}, Cell{3, 2, 1}, Cell{2, 0, 3}, Cell{3, 0, 2}, Cell{3, 1, 2}, Cell{2, 2, 3}}) {
    CAPTURE(c.d);
    CAPTURE(c.n);
    CAPTURE(c.p);
    FamilyContext ctx(c.d);
    auto m = compute_monodromy(ctx, c.n, c.p);
    CHECK(static_cast<long>(m.roots.size()) == degree_Q(c.d, c.n, c.p).get_si());
    auto g = generate_group(m.generators);
    auto r = verify_galois_properties(ctx, m, g);
    CHECK(r.order == galois_order(c.d, c.n, c.p));
    CHECK(r.global_relation);
    CHECK(r.commutes_with_map);
    CHECK(r.commutes_with_rotation);
    CHECK(r.factors_preserved);
    for (bool b : r.factor_transitive) CHECK(b);
    if (c.n >= 1)
      for (const auto& o : r.factor_orders) CHECK(o == galois_order_factor(c.d, c.n, c.p));

    // genus of each factor from the branching of the loops
    if (c.n == 0) {
      CHECK(monodromy_genus(m, factor_roots(m, 0)) == genus_periodic_from_branching(c.d, c.p));
    } else {
      for (int j = 1; j < c.d; ++j) CHECK(monodromy_genus(m, factor_roots(m, j)) == genus_preperiodic_value(c.d, c.n, c.p));
    }
    if (c.n >= 2) {
      auto w = wreath_check(m, g, 64);
      CHECK(w.pass());
      CHECK(w.pairs_checked >= 50);
      CHECK(w.columns == kappa(c.d, c.n, c.p).get_si());
    }
  }
}

TEST_CASE("loops around Misiurewicz points twist a single column") {
  FamilyContext two(2);
  auto m = compute_monodromy(two, 2, 1);
  auto cols = column_labels(m);
  for (std::size_t k = 0; k < m.generators.size(); ++k) {
    if (std::abs(m.loops.critical_values[k] - lcplx(-2)) > 1e-9L) continue;
    auto w = wreath_decompose(m.generators[k], cols, 2);
    CHECK(w.base == identity_perm(cols.columns));
    CHECK(std::count(w.twist.begin(), w.twist.end(), 1) == 1);
  }
}
