#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "dynacurve/cycpoly.hpp"
#include "dynacurve/errors.hpp"
#include "internal.hpp"

namespace dynacurve {

namespace {

std::vector<long> poly_divexact_long(std::vector<long> a, const std::vector<long>& b) {
  int db = static_cast<int>(b.size()) - 1;
  int dq = static_cast<int>(a.size()) - 1 - db;
  std::vector<long> q(dq + 1, 0);
  for (int i = dq; i >= 0; --i) {
    long t = a[i + db] / b[db];
    q[i] = t;
    for (int j = 0; j <= db; ++j) a[i + j] -= t * b[j];
  }
  return q;
}

}  // namespace

const std::vector<long>& cyclotomic_coeffs(int d) {
  static std::map<int, std::vector<long>> cache;
  if (d < 1) throw MalformedInput("cyclotomic order must be positive");
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<long> num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (int k = 1; k < d; ++k)
    if (d % k == 0) num = poly_divexact_long(num, cyclotomic_coeffs(k));
  return cache.emplace(d, num).first->second;
}

int cyc_rank(int d) { return static_cast<int>(cyclotomic_coeffs(d).size()) - 1; }

int default_precision_bits() {
  static const int bits = [] {
    const char* s = std::getenv("DYNACURVE_PRECISION");
    if (!s || !*s) return 64;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 24 || v > 1 << 16)
      throw MalformedInput("DYNACURVE_PRECISION must be an integer in [24, 65536]");
    return static_cast<int>(v);
  }();
  return bits;
}

namespace detail {

void reduce_cyclotomic(std::vector<mpz_class>& c, int d) {
  const auto& phi_d = cyclotomic_coeffs(d);
  int phi = static_cast<int>(phi_d.size()) - 1;
  for (int e = static_cast<int>(c.size()) - 1; e >= phi; --e) {
    if (sgn(c[e]) == 0) continue;
    for (int i = 0; i < phi; ++i)
      if (phi_d[i] != 0) mpz_submul_ui_signed(c[e - phi + i], c[e], phi_d[i]);
    c[e] = 0;
  }
  c.resize(phi);
}

long double to_ld(const mpz_class& v) {
  std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits <= 63) return static_cast<long double>(mpz_get_si(v.get_mpz_t()));
  mpz_class top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), v.get_mpz_t(), bits - 63);
  return std::ldexp(static_cast<long double>(mpz_get_si(top.get_mpz_t())),
                    static_cast<int>(bits - 63));
}

void mpz_submul_ui_signed(mpz_class& acc, const mpz_class& x, long s) {
  if (s >= 0)
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(s));
  else
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-s));
}

lcplx embed_coords(const mpz_class* c, int phi, int d, int bits) {
  if (bits <= 53) {
    const long double tau = 2.0L * std::acos(-1.0L);
    lcplx s = 0;
    for (int k = 0; k < phi; ++k) {
      if (sgn(c[k]) == 0) continue;
      long double a = tau * k / d;
      s += to_ld(c[k]) * lcplx(std::cos(a), std::sin(a));
    }
    return s;
  }
  mpfr_t re, im, t, ang, pi;
  mpfr_inits2(bits, re, im, t, ang, pi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (int k = 0; k < phi; ++k) {
    if (sgn(c[k]) == 0) continue;
    mpfr_mul_ui(ang, pi, 2 * k, MPFR_RNDN);
    mpfr_div_ui(ang, ang, d, MPFR_RNDN);
    mpfr_cos(t, ang, MPFR_RNDN);
    mpfr_mul_z(t, t, c[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(re, re, t, MPFR_RNDN);
    mpfr_sin(t, ang, MPFR_RNDN);
    mpfr_mul_z(t, t, c[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(im, im, t, MPFR_RNDN);
  }
  lcplx out(mpfr_get_ld(re, MPFR_RNDN), mpfr_get_ld(im, MPFR_RNDN));
  mpfr_clears(re, im, t, ang, pi, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace detail

CycInt::CycInt(int d, long v) : d_(d), c_(cyc_rank(d)) {
  if (d < 2) throw MalformedInput("ring order must be at least 2");
  c_[0] = v;
}

CycInt::CycInt(int d, const mpz_class& v) : CycInt(d) { c_[0] = v; }

CycInt::CycInt(int d, std::vector<mpz_class> coords) : d_(d), c_(std::move(coords)) {
  if (d < 2) throw MalformedInput("ring order must be at least 2");
  int phi = cyc_rank(d);
  if (static_cast<int>(c_.size()) < phi) c_.resize(phi);
  detail::reduce_cyclotomic(c_, d);
}

CycInt CycInt::omega_pow(int d, long k) {
  k %= d;
  if (k < 0) k += d;
  std::vector<mpz_class> c(k + 1);
  c[k] = 1;
  return CycInt(d, std::move(c));
}

bool CycInt::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool CycInt::is_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

bool CycInt::is_one() const { return is_rational() && c_[0] == 1; }

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  if (o.d_ != d_) throw RingMismatch("adding elements of different cyclotomic rings");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  if (o.d_ != d_) throw RingMismatch("subtracting elements of different cyclotomic rings");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) {
  if (o.d_ != d_) throw RingMismatch("multiplying elements of different cyclotomic rings");
  int phi = static_cast<int>(c_.size());
  std::vector<mpz_class> t(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (sgn(o.c_[j]) != 0)
        mpz_addmul(t[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
  }
  detail::reduce_cyclotomic(t, d_);
  c_ = std::move(t);
  return *this;
}

bool operator==(const CycInt& a, const CycInt& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

CycInt CycInt::galois(int k) const {
  if (std::gcd(k, d_) != 1) throw PreconditionViolated("Galois exponent must be a unit mod d");
  std::vector<mpz_class> t(d_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    long e = (static_cast<long>(i) * k) % d_;
    if (e < 0) e += d_;
    t[e] += c_[i];
  }
  return CycInt(d_, std::move(t));
}

mpz_class CycInt::norm() const {
  CycInt p = *this;
  for (int k = 2; k < d_; ++k)
    if (std::gcd(k, d_) == 1) p *= galois(k);
  if (!p.is_rational()) throw Error("norm did not land in Z");
  return p.c_[0];
}

CycInt CycInt::divexact(const CycInt& b) const {
  if (b.d_ != d_) throw RingMismatch("dividing elements of different cyclotomic rings");
  if (b.is_zero()) throw NonZeroRemainder("division by zero in Z[w]");
  CycInt num = *this;
  mpz_class den = b.c_[0];
  if (!b.is_rational()) {
    CycInt conj(d_, 1);
    for (int k = 2; k < d_; ++k)
      if (std::gcd(k, d_) == 1) conj *= b.galois(k);
    num *= conj;
    CycInt nb = b * conj;
    den = nb.c_[0];
  }
  for (auto& x : num.c_) {
    if (!mpz_divisible_p(x.get_mpz_t(), den.get_mpz_t()))
      throw NonZeroRemainder("element of Z[w] is not divisible");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), den.get_mpz_t());
  }
  return num;
}

lcplx CycInt::embed(int bits) const {
  return detail::embed_coords(c_.data(), static_cast<int>(c_.size()), d_, bits);
}

std::string CycInt::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    if (!first) os << (sgn(c_[k]) > 0 ? "+" : "");
    os << c_[k];
    if (k == 1) os << "*w";
    if (k > 1) os << "*w^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace dynacurve
