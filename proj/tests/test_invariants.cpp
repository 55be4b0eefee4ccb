#include <numeric>

#include "doctest.h"
#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"

using namespace dynacurve;

namespace {

long brute_totient(long n) {
  long c = 0;
  for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

long brute_mobius(long n) {
  int primes = 0;
  for (long q = 2; q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    ++primes;
  }
  return primes % 2 ? -1 : 1;
}

// Points of exact period p of z -> z^d: the origin when p = 1, plus the
// angles k/(d^p - 1) whose orbit under multiplication by d has length p.
long brute_nu(long d, long p) {
  long m = 1;
  for (int i = 0; i < p; ++i) m *= d;
  m -= 1;
  long count = 0;
  for (long k = 0; k < m; ++k) {
    long x = k, len = 0;
    do {
      x = (x * d) % m;
      ++len;
    } while (x != k);
    count += len == p;
  }
  return count + (p == 1);
}

}  // namespace

TEST_CASE("arithmetic functions agree with brute force") {
  for (long n = 1; n <= 200; ++n) {
    CHECK(totient(n) == brute_totient(n));
    CHECK(mobius(n) == brute_mobius(n));
    long s = 0;
    for (long k : divisors(n)) s += totient(k);
    CHECK(s == n);
  }
}

TEST_CASE("periodic point counts") {
  CHECK(nu(2, 1) == 2);
  CHECK(nu(2, 4) == 12);
  CHECK(nu(3, 2) == 6);
  CHECK(nu(2, 5) == 30);
  for (long d = 2; d <= 5; ++d)
    for (long p = 1; p <= 6; ++p) {
      mpz_class s = 0, dp;
      for (long k : divisors(p)) s += nu(d, k);
      mpz_ui_pow_ui(dp.get_mpz_t(), d, p);
      CHECK(s == dp);
      CHECK(nu(d, p) % d == 0);
      if (d <= 3 && p <= 5) CHECK(nu(d, p) == brute_nu(d, p));
    }
}

TEST_CASE("genus of small factor curves") {
  CHECK(genus_preperiodic(2, 1, 1) == 0);
  CHECK(genus_preperiodic(2, 2, 1) == 0);
  CHECK(genus_preperiodic(2, 1, 4) == 2);
  CHECK(genus_preperiodic(2, 1, 5) == 14);
  const int expect[] = {0, 0, 0, 2, 14};
  for (int p = 1; p <= 5; ++p) {
    CHECK(genus_preperiodic(2, 1, p) == expect[p - 1]);
    // the n = 1 factor is the periodic curve up to z -> -z
    CHECK(genus_periodic_from_branching(2, p) == expect[p - 1]);
  }
  for (long d = 2; d <= 6; ++d)
    for (long p = 1; p <= 5; ++p) CHECK(genus_periodic_from_branching(d, p) == genus_preperiodic_value(d, 1, p));
}

TEST_CASE("quoted periodic genus expression") {
  CHECK(genus_periodic(2, 1) == 1);
  CHECK(genus_periodic(2, 3) == 3);
  CHECK(genus_periodic(2, 2) == 1);
  // it overshoots the branching count by nu/d
  for (long d = 2; d <= 5; ++d)
    for (long p = 1; p <= 5; ++p)
      CHECK(genus_periodic(d, p) - genus_periodic_from_branching(d, p) == mpq_class(nu(d, p)) / d);
}

TEST_CASE("critical census by hand") {
  auto c = critical_census(2, 1, 1);
  CHECK(c.b1 == 0);
  CHECK(c.b2 == 1);
  CHECK(c.b3 == 0);
  CHECK(c.binf == 1);
  c = critical_census(2, 2, 1);
  CHECK(c.b1 == 2);
  CHECK(c.b2 == 2);
  CHECK(c.binf == 2);
  CHECK(c.total() == 6);
  c = critical_census(2, 1, 4);
  CHECK(c.b3 == 8);
  CHECK(c.b2 == 12);
  CHECK(c.binf == 6);
  CHECK(c.total() == 26);
}

TEST_CASE("Riemann-Hurwitz closes on the grid and beyond") {
  for (long d = 2; d <= 6; ++d)
    for (long n = 1; n <= 5; ++n)
      for (long p = 1; p <= 6; ++p) {
        CAPTURE(d);
        CAPTURE(n);
        CAPTURE(p);
        CHECK(riemann_hurwitz_closes(d, n, p));
        auto c = critical_census(d, n, p);
        CHECK((c.b3 == 0) == (p == 1));
        for (const auto* q : {&c.b1, &c.b2, &c.b3, &c.binf}) CHECK(sgn(*q) >= 0);
        CHECK(genus_preperiodic(d, n, p) >= 0);
        CHECK(ends_count(d, n, p) >= 1);
        CHECK(kappa(d, n, p) == ends_count(d, n, p) * (d - 1));
        CHECK(degree_Q(d, n, p) == (d - 1) * degree_factor(d, n, p));
        // ideal points carry the ends
        CHECK(c.ideal_points == mpq_class(ends_count(d, n, p)));
      }
}

TEST_CASE("ends, singular points and kappa") {
  CHECK(ends_count(2, 1, 1) == 1);
  CHECK(singular_count(3, 1, 1) == 1);
  CHECK(kappa(2, 2, 2) == 2);
  CHECK(ends_count(2, 1, 4) == 6);
}

TEST_CASE("Galois group orders") {
  CHECK(galois_order(2, 0, 3) == 18);
  CHECK(galois_order(2, 1, 1) == 2);
  CHECK(galois_order(2, 2, 2) == 8);
  CHECK(galois_order(2, 1, 4) == 384);
  CHECK(galois_order(3, 1, 1) == 6);
  for (long d = 2; d <= 4; ++d)
    for (long p = 1; p <= 4; ++p) {
      CHECK(galois_order(d, 1, p) == galois_order(d, 0, p));
      CHECK(galois_order_factor(d, 1, p) == galois_order(d, 1, p));
      for (long n = 2; n <= 4; ++n) {
        mpz_class step;
        mpz_ui_pow_ui(step.get_mpz_t(), d, kappa(d, n, p).get_ui());
        CHECK(galois_order(d, n, p) == galois_order(d, n - 1, p) * step);
      }
    }
  // with one factor the two towers coincide
  for (long n = 1; n <= 4; ++n)
    for (long p = 1; p <= 4; ++p) CHECK(galois_order_factor(2, n, p) == galois_order(2, n, p));
}

TEST_CASE("out of range inputs") {
  CHECK_THROWS_AS(genus_preperiodic(2, 0, 1), PreconditionViolated);
  CHECK_THROWS_AS(nu(1, 2), PreconditionViolated);
  CHECK_THROWS_AS(mobius(0), PreconditionViolated);
}
