#include "dynacurve/invariants.hpp"

#include <string>

#include "dynacurve/errors.hpp"

namespace dynacurve {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw PreconditionViolated(what);
}

mpz_class power(long d, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
  return r;
}

// d^e for possibly negative e (only e = -1 occurs).
mpq_class qpower(long d, long e) {
  if (e >= 0) return mpq_class(power(d, e));
  mpq_class q(1, power(d, -e));
  q.canonicalize();
  return q;
}

mpq_class frac(const mpz_class& a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

mpz_class as_integer(const mpq_class& q, const char* what) {
  if (q.get_den() != 1) throw Error(std::string(what) + " is not an integer: " + q.get_str());
  return q.get_num();
}

}  // namespace

long mobius(long n) {
  require(n >= 1, "mobius needs n >= 1");
  long r = 1;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

long totient(long n) {
  require(n >= 1, "totient needs n >= 1");
  long r = n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    r -= r / q;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::vector<long> divisors(long n) {
  require(n >= 1, "divisors needs n >= 1");
  std::vector<long> out;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

std::vector<long> proper_divisors(long n) {
  auto all = divisors(n);
  all.pop_back();
  return all;
}

mpz_class nu(long d, long p) {
  require(d >= 2 && p >= 1, "nu needs d >= 2, p >= 1");
  mpz_class s = 0;
  for (long k : divisors(p)) s += mobius(p / k) * power(d, k);
  return s;
}

mpz_class degree_Q(long d, long n, long p) {
  require(n >= 0, "degree needs n >= 0");
  if (n == 0) return nu(d, p);
  return nu(d, p) * (d - 1) * power(d, n - 1);
}

mpz_class degree_factor(long d, long n, long p) {
  require(n >= 1, "factors exist for n >= 1");
  return nu(d, p) * power(d, n - 1);
}

mpq_class genus_preperiodic_value(long d, long n, long p) {
  require(d >= 2 && n >= 1 && p >= 1, "genus needs d >= 2, n >= 1, p >= 1");
  mpq_class scale = qpower(d, n - 2);
  mpq_class sum = 0;
  for (long k : proper_divisors(p)) sum += mpq_class(k * totient(p / k)) * nu(d, k);
  mpq_class g = 1 + mpq_class(nu(d, p)) * scale * ((d - 1) * (n + p) - 2 * d) / 2 - scale * (d - 1) * sum / 2;
  g.canonicalize();
  return g;
}

mpz_class genus_preperiodic(long d, long n, long p) {
  mpq_class g = genus_preperiodic_value(d, n, p);
  if (g.get_den() != 1 || sgn(g) < 0)
    throw NonIntegerGenus("genus formula gives " + g.get_str() + " at (d,n,p)=(" + std::to_string(d) + "," +
                          std::to_string(n) + "," + std::to_string(p) + ")");
  return g.get_num();
}

mpq_class genus_periodic(long d, long p) {
  require(d >= 2 && p >= 1, "genus needs d >= 2, p >= 1");
  mpq_class sum = 0;
  for (long k : proper_divisors(p)) sum += mpq_class(totient(p / k) * k) * nu(d, k);
  mpq_class g = 1 + frac((d - 1) * (p - 1), 2 * d) * nu(d, p) - frac(d - 1, 2 * d) * sum;
  g.canonicalize();
  return g;
}

namespace {

// Number of satellite parabolic parameters of period p sitting on period-k
// components, summed over the proper divisors k.
mpq_class satellite_roots(long d, long p) {
  mpq_class s = 0;
  for (long k : proper_divisors(p)) s += frac(nu(d, k), d) * (d - 1) * totient(p / k);
  return s;
}

// Branch data of the periodic curve over the c-line.
struct PeriodicBranching {
  mpq_class c2_points, b2, c3_points, b3, ideal_points, binf;
};

PeriodicBranching periodic_branching(long d, long p) {
  PeriodicBranching r;
  mpq_class roots = frac(nu(d, p), d) * (d - 1);
  r.c2_points = p * (roots - satellite_roots(d, p));
  r.b2 = r.c2_points;
  for (long k : proper_divisors(p)) {
    mpq_class pts = frac(nu(d, k), d) * (d - 1) * totient(p / k) * k;
    r.c3_points += pts;
    r.b3 += pts * (p / k - 1);
  }
  r.ideal_points = frac(nu(d, p), d);
  r.binf = r.ideal_points * (d - 1);
  for (auto* q : {&r.c2_points, &r.b2, &r.c3_points, &r.b3, &r.ideal_points, &r.binf}) q->canonicalize();
  return r;
}

}  // namespace

mpq_class genus_periodic_from_branching(long d, long p) {
  require(d >= 2 && p >= 1, "genus needs d >= 2, p >= 1");
  auto br = periodic_branching(d, p);
  mpq_class g = 1 - mpq_class(nu(d, p)) + (br.b2 + br.b3 + br.binf) / 2;
  g.canonicalize();
  return g;
}

Census critical_census(long d, long n, long p) {
  require(d >= 2 && n >= 1 && p >= 1, "census needs d >= 2, n >= 1, p >= 1");
  auto br = periodic_branching(d, p);
  mpq_class lift = qpower(d, n - 1);
  mpq_class scale = qpower(d, n - 2);
  Census c;
  // every level s = 2..n contributes nu * d^(n-2) simple pre-critical points
  c.c1_points = mpq_class(n - 1) * nu(d, p) * scale;
  c.b1 = c.c1_points * (d - 1);
  c.c2_points = lift * br.c2_points;
  c.b2 = lift * br.b2;
  c.c3_points = lift * br.c3_points;
  c.b3 = lift * br.b3;
  c.ideal_points = nu(d, p) * scale;
  c.binf = c.ideal_points * (d - 1);
  for (auto* q : {&c.b1, &c.b2, &c.b3, &c.binf, &c.c1_points, &c.c2_points, &c.c3_points, &c.ideal_points})
    q->canonicalize();
  return c;
}

bool riemann_hurwitz_closes(long d, long n, long p) {
  mpq_class lhs = 2 - 2 * genus_preperiodic_value(d, n, p) + critical_census(d, n, p).total();
  return lhs == mpq_class(2 * degree_factor(d, n, p));
}

mpz_class ends_count(long d, long n, long p) {
  require(d >= 2 && n >= 1 && p >= 1, "ends need d >= 2, n >= 1, p >= 1");
  return as_integer(mpq_class(nu(d, p)) * qpower(d, n - 2), "end count");
}

mpz_class kappa(long d, long n, long p) {
  require(d >= 2 && n >= 1 && p >= 1, "kappa needs d >= 2, n >= 1, p >= 1");
  return as_integer(mpq_class(nu(d, p) * (d - 1)) * qpower(d, n - 2), "kappa");
}

mpz_class singular_count(long d, long n, long p) {
  require(d >= 2 && n >= 1 && p >= 1, "singular count needs d >= 2, n >= 1, p >= 1");
  // n = 1: centers of period-p components; n >= 2: roots of q_{n-1}(c, c)
  return as_integer(mpq_class(nu(d, p)) * qpower(d, n - 2), "singular count");
}

mpz_class galois_order(long d, long n, long p) {
  require(d >= 2 && n >= 0 && p >= 1, "galois order needs d >= 2, n >= 0, p >= 1");
  mpz_class v = nu(d, p);
  unsigned long cycles = mpz_class(v / p).get_ui();
  mpz_class g;
  mpz_fac_ui(g.get_mpz_t(), cycles);
  g *= power(p, static_cast<long>(cycles));
  for (long s = 2; s <= n; ++s) g *= power(d, kappa(d, s, p).get_si());
  return g;
}

mpz_class galois_order_factor(long d, long n, long p) {
  require(n >= 1, "factor groups exist for n >= 1");
  mpz_class g = galois_order(d, 1, p);
  for (long s = 2; s <= n; ++s) g *= power(d, ends_count(d, s, p).get_si());
  return g;
}

}  // namespace dynacurve
