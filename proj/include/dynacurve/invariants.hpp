#pragma once
// Closed-form invariants of the curves cut out by the (n, p) dynatomic
// polynomials of f_c(z) = z^d + c.  Everything is evaluated in exact
// integers or rationals.

#include <gmpxx.h>

#include <vector>

namespace dynacurve {

long mobius(long n);
long totient(long n);
std::vector<long> divisors(long n);        // ascending, includes 1 and n
std::vector<long> proper_divisors(long n);  // divisors strictly below n

// Number of points of exact period p of z^d + c, for any c.
mpz_class nu(long d, long p);

// z-degree of Q_{n,p}, and of one of its factors q^j_{n,p} (n >= 1).
mpz_class degree_Q(long d, long n, long p);
mpz_class degree_factor(long d, long n, long p);

// Genus of one factor curve; throws NonIntegerGenus unless the value is a
// nonnegative integer.
mpz_class genus_preperiodic(long d, long n, long p);
mpq_class genus_preperiodic_value(long d, long n, long p);

// The periodic-curve genus expression in the form usually quoted for it.
// Returned as a rational; it is not used by any check.
mpq_class genus_periodic(long d, long p);

// Genus of the periodic curve from its own branch data (parabolic
// parameters and the points over infinity).
mpq_class genus_periodic_from_branching(long d, long p);

// Ramification over each kind of critical value for one factor curve.
struct Census {
  mpq_class b1;    // pre-critical points, ramification d - 1 each
  mpq_class b2;    // primitive parabolic points
  mpq_class b3;    // satellite parabolic points
  mpq_class binf;  // ideal points
  mpq_class c1_points, c2_points, c3_points, ideal_points;
  mpq_class total() const { return b1 + b2 + b3 + binf; }
};
Census critical_census(long d, long n, long p);

// 2 - 2g + B == 2 * degree for the factor curve.
bool riemann_hurwitz_closes(long d, long n, long p);

mpz_class ends_count(long d, long n, long p);     // per factor
mpz_class kappa(long d, long n, long p);          // new columns at level n
mpz_class singular_count(long d, long n, long p); // common roots of the factors, with multiplicity
mpz_class galois_order(long d, long n, long p);
mpz_class galois_order_factor(long d, long n, long p);

}  // namespace dynacurve
