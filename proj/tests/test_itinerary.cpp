#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/itinerary.hpp"
#include "gen.hpp"

using namespace dynacurve;

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

// Smallest (preperiod, period) of the eventually periodic word `s`, read off
// a long prefix by direct comparison.
std::pair<int, int> brute_type(const std::vector<int>& s, int max_pre, int max_per) {
  for (int pre = 0; pre <= max_pre; ++pre)
    for (int per = 1; per <= max_per; ++per) {
      bool ok = true;
      for (std::size_t k = pre; k + per < s.size() && ok; ++k) ok = s[k] == s[k + per];
      if (ok) return {pre, per};
    }
  return {-1, -1};
}

// Every word of length n + p, extended periodically, kept when its type is (n, p).
std::set<std::vector<int>> brute_words(int d, int n, int p) {
  std::set<std::vector<int>> out;
  long total = 1;
  for (int k = 0; k < n + p; ++k) total *= d;
  for (long code = 0; code < total; ++code) {
    std::vector<int> w;
    long x = code;
    for (int k = 0; k < n + p; ++k, x /= d) w.push_back(static_cast<int>(x % d));
    std::vector<int> s = w;
    for (int k = 0; k < 3 * (n + p); ++k) s.push_back(w[n + (k % p)]);
    if (brute_type(s, n + p, n + p) == std::pair{n, p}) out.insert(w);
  }
  return out;
}

lcplx random_outside(int d) {
  for (;;) {
    long double r = 0.5L + testgen::uniform(0, 1000) / 250.0L, a = testgen::uniform(0, 10000) / 10000.0L * kTwoPi;
    lcplx c = std::polar(r, a);
    if (parameter_potential(d, c) > 0.05L) return c;
  }
}

// Boettcher argument, in turns, of a point far from the filled Julia set.
long double boettcher_turns(int d, lcplx c, lcplx z) {
  long double a = std::arg(z), scale = 1;
  for (int k = 1; k < 60 && std::abs(z) < 1e200L; ++k) {
    lcplx next = std::pow(z, d) + c;
    scale *= d;
    a += std::arg(next / std::pow(z, d)) / scale;
    z = next;
  }
  long double t = a / kTwoPi;
  return t - std::floor(t);
}

long double turn_distance(long double a, long double b) {
  long double x = std::fmod(std::abs(a - b), 1.0L);
  return std::min(x, 1 - x);
}

}  // namespace

TEST_CASE("small itinerary sets") {
  auto a = enumerate_preperiodic(2, 1, 1);
  REQUIRE(a.size() == 2);
  CHECK(a[0].str() == "0(1)");
  CHECK(a[1].str() == "1(0)");
  CHECK(enumerate_preperiodic(2, 2, 1).size() == 4);
  CHECK(enumerate_preperiodic(3, 1, 1).size() == 6);
  CHECK(enumerate_preperiodic(2, 0, 3).size() == 6);
  CHECK_THROWS_AS(enumerate_preperiodic(4, 8, 8), ResourceCapExceeded);

  Itinerary x{3, {2, 0}, {1, 2}};
  CHECK(x.exact());
  CHECK(x.symbols(7) == std::vector<int>{2, 0, 1, 2, 1, 2, 1});
  CHECK(x.rotated(1).str() == "01(20)");
  CHECK(x.factor_index() == 1);
  CHECK_FALSE((Itinerary{2, {1}, {1}}).exact());
  CHECK_FALSE((Itinerary{2, {}, {0, 0}}).exact());
}

TEST_CASE("enumeration agrees with brute force and the degree formula") {
  for (int d = 2; d <= 4; ++d)
    for (int n = 0; n <= 3; ++n)
      for (int p = 1; p <= 3; ++p) {
        if (std::pow(d, n + p) > 4096) continue;
        CAPTURE(d);
        CAPTURE(n);
        CAPTURE(p);
        auto all = enumerate_preperiodic(d, n, p);
        std::set<std::vector<int>> got;
        for (const auto& it : all) {
          CHECK(it.exact());
          got.insert(it.symbols(n + p));
        }
        CHECK(got == brute_words(d, n, p));
        CHECK(mpz_class(static_cast<long>(all.size())) == degree_Q(d, n, p));
      }
}

TEST_CASE("end classes per factor match the end count") {
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n)
      for (int p = 1; p <= 4; ++p) {
        CAPTURE(d);
        CAPTURE(n);
        CAPTURE(p);
        auto all = end_classes(d, n, p);
        std::size_t members = 0;
        for (const auto& e : all) {
          CHECK(e.orbit.size() == static_cast<std::size_t>(d));
          for (const auto& m : e.orbit) CHECK(m.factor_index() == e.factor);
          CHECK(e.representative == *std::min_element(e.orbit.begin(), e.orbit.end()));
          members += e.orbit.size();
        }
        CHECK(mpz_class(static_cast<long>(members)) == degree_Q(d, n, p));
        for (int j = 1; j < d; ++j)
          CHECK(mpz_class(static_cast<long>(end_classes_for_factor(d, n, p, j).size())) == ends_count(d, n, p));
        CHECK(end_classes_for_factor(d, n, p, 0).empty());
      }
}

TEST_CASE("external angles") {
  CHECK(std::abs(external_angle(2, -3) - 0.5L) < 1e-15L);
  CHECK(std::abs(external_angle(2, -2.01L) - 0.5L) < 1e-12L);
  CHECK(std::abs(external_angle(3, -3) - 0.5L) < 1e-15L);
  CHECK(turn_distance(external_angle(2, 0.3L), 0) < 1e-12L);
  CHECK_THROWS_AS(external_angle(2, 0), PreconditionViolated);
  CHECK_THROWS_AS(external_angle(2, -1), PreconditionViolated);

  for (int t = 0; t < 40; ++t) {
    int d = static_cast<int>(testgen::uniform(2, 4));
    lcplx c = random_outside(d);
    CAPTURE(d);
    CAPTURE(c);
    long double th = external_angle(d, c);
    CHECK(th >= 0);
    CHECK(th < 1);
    // conjugate symmetry and the (d-1)-fold rotational symmetry of the set
    CHECK(turn_distance(external_angle(d, std::conj(c)), 1 - th) < 1e-10L);
    lcplx rot = std::polar(1.0L, kTwoPi / (d - 1));
    CHECK(turn_distance(external_angle(d, rot * c), th + 1.0L / (d - 1)) < 1e-10L);
    // far out the angle is the argument of c
    lcplx far = std::polar(1e4L, std::arg(c));
    CHECK(turn_distance(external_angle(d, far), boettcher_turns(d, far, far)) < 1e-12L);
  }
}

TEST_CASE("traced dynamical rays keep their angle and potential") {
  for (int t = 0; t < 12; ++t) {
    int d = static_cast<int>(testgen::uniform(2, 4));
    lcplx c = random_outside(d);
    long double angle = testgen::uniform(0, 9999) / 10000.0L;
    long double g0 = parameter_potential(d, c) / d;
    auto ray = trace_dynamical_ray(d, c, angle, 8, 2 * g0 + 1, 16);
    CAPTURE(d);
    CAPTURE(c);
    for (std::size_t k = 0; k < ray.size(); k += 7) {
      lcplx z = ray[k];
      long double scale = 1;
      while (std::abs(z) < 1e30L) {
        z = std::pow(z, d) + c;
        scale *= d;
      }
      long double g = std::log(std::abs(z)) / scale;
      CHECK(g > 2 * g0 + 1 - 1e-9L);
      CHECK(turn_distance(boettcher_turns(d, c, ray[k]), angle) < 1e-9L);
    }
  }
}

TEST_CASE("sector partition against the real shortcut") {
  for (long double c : {-3.0L, -2.5L, -5.0L}) {
    CAPTURE(c);
    SectorPartition part(2, c);
    CHECK(std::abs(part.angle() - 0.5L) < 1e-15L);
    FamilyContext two(2);
    for (auto [n, p] : {std::pair{0, 3}, std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 1}})
      for (const auto& cl : specialized_roots(two.Q(n, p), c)) {
        lcplx z = cl.z;
        for (int k = 0; k < n + p; ++k) {
          CHECK(part.sector(z) == real_sector(z));
          z = z * z + c;
        }
      }
    // boundary rays are the imaginary axis
    CHECK_THROWS_AS(part.sector(lcplx(0, 0.7L)), RayTraceUnresolved);
  }
  long double beta = (1 + std::sqrt(13.0L)) / 2;
  CHECK(trace_itinerary(2, -3, beta, 4) == std::vector<int>{0, 0, 0, 0});
  CHECK(trace_itinerary(2, -3, -beta, 4) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("sectors rotate with z") {
  for (int t = 0; t < 6; ++t) {
    int d = static_cast<int>(testgen::uniform(2, 4));
    lcplx c = random_outside(d);
    SectorPartition part(d, c);
    CAPTURE(d);
    CAPTURE(c);
    FamilyContext ctx(d);
    lcplx w = std::polar(1.0L, kTwoPi / d);
    for (const auto& cl : specialized_roots(ctx.Q(0, 2), c)) {
      int s = part.sector(cl.z);
      for (int k = 1; k < d; ++k) CHECK(part.sector(std::pow(w, k) * cl.z) == (s + k) % d);
    }
  }
}

TEST_CASE("roots of each factor carry the itineraries of its ends") {
  struct Cell {
    int d, n, p;
  };
  for (auto cell : {Cell{2, 1, 1}, Cell{2, 1, 2}, Cell{2, 2, 1}, Cell{2, 2, 2}, Cell{2, 1, 3}, Cell{2, 3, 2},
                    Cell{3, 1, 1}, Cell{3, 2, 1}, Cell{3, 1, 2}, Cell{3, 2, 2}, Cell{4, 1, 1}, Cell{4, 2, 1},
                    Cell{4, 1, 2}}) {
    FamilyContext ctx(cell.d);
    for (lcplx c0 : {lcplx(-3), lcplx(0.5L, 2.5L)})
      for (int j = 1; j < cell.d; ++j) {
        CAPTURE(cell.d);
        CAPTURE(cell.n);
        CAPTURE(cell.p);
        CAPTURE(j);
        CAPTURE(c0);
        auto r = match_roots_to_ends(ctx, cell.n, cell.p, j, c0);
        CHECK(r.all_exact);
        CHECK(r.labels_match);
        CHECK(r.class_sizes_ok);
        CHECK(mpz_class(r.classes) == ends_count(cell.d, cell.n, cell.p));
        for (const auto& it : r.itineraries) CHECK(it.factor_index() == j);
      }
  }
}

TEST_CASE("a loop around the set shifts every itinerary by one") {
  FamilyContext two(2), three(3);
  for (auto [n, p] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{1, 1}, std::pair{2, 2}}) {
    auto r = loop_rotation_check(two, n, p);
    CAPTURE(n);
    CAPTURE(p);
    CHECK(r.shift == 1);
    CHECK(r.pass());
  }
  CHECK(loop_rotation_check(three, 2, 1).shift == 1);
  CHECK(loop_rotation_check(three, 1, 1, lcplx(0.5L, 2.5L)).shift == 1);
}
