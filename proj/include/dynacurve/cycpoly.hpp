#pragma once
// Exact arithmetic over Z[w] (w a primitive d-th root of unity) and the
// bivariate polynomial ring Z[w][c][z].
//
// Elements of Z[w] are stored as phi(d) integer coordinates on the power
// basis 1, w, ..., w^(phi(d)-1), kept reduced modulo the d-th cyclotomic
// polynomial.  Polynomials are dense in both variables.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace dynacurve {

using lcplx = std::complex<long double>;

// Coefficients of the d-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_coeffs(int d);
// Number of coordinates of an element of Z[w_d].
int cyc_rank(int d);

// Embedding precision used when callers do not ask for one.  Reads
// DYNACURVE_PRECISION once; defaults to 64.
int default_precision_bits();

class CycInt {
 public:
  CycInt() : CycInt(2) {}
  explicit CycInt(int d, long v = 0);
  CycInt(int d, const mpz_class& v);
  // Coordinates may be longer than phi(d); they are reduced.
  CycInt(int d, std::vector<mpz_class> coords);
  static CycInt omega_pow(int d, long k);

  int d() const { return d_; }
  const std::vector<mpz_class>& coords() const { return c_; }
  const mpz_class& operator[](int k) const { return c_[k]; }
  bool is_zero() const;
  bool is_rational() const;
  bool is_one() const;

  CycInt operator-() const;
  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt& operator*=(const CycInt& o);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
  friend bool operator==(const CycInt& a, const CycInt& b);
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

  // Image under the Galois automorphism w -> w^k, gcd(k, d) = 1.
  CycInt galois(int k) const;
  // Field norm down to Z.
  mpz_class norm() const;
  // Exact quotient; throws NonZeroRemainder when b does not divide *this.
  CycInt divexact(const CycInt& b) const;
  // Complex value under w -> exp(2 pi i / d).
  lcplx embed(int bits = default_precision_bits()) const;
  std::string str() const;

 private:
  int d_;
  std::vector<mpz_class> c_;
};

// Univariate polynomial in c over Z[w].  Coordinate k of the coefficient of
// c^b lives at raw()[b * phi + k].
class CycPoly1 {
 public:
  CycPoly1() : CycPoly1(2) {}
  explicit CycPoly1(int d);
  CycPoly1(int d, std::vector<CycInt> coeffs);
  static CycPoly1 constant(const CycInt& v);
  static CycPoly1 variable(int d);

  int d() const { return d_; }
  int phi() const { return phi_; }
  int degree() const { return static_cast<int>(v_.size() / phi_) - 1; }
  bool is_zero() const { return v_.empty(); }
  bool is_rational() const;
  CycInt coeff(int b) const;
  CycInt lead() const { return coeff(degree()); }
  void set_coeff(int b, const CycInt& x);
  std::vector<mpz_class>& raw() { return v_; }
  const std::vector<mpz_class>& raw() const { return v_; }
  // Drops zero leading coefficients.
  void trim();
  std::size_t max_bits() const;
  std::size_t nnz() const;

  CycPoly1 operator-() const;
  CycPoly1& operator+=(const CycPoly1& o);
  CycPoly1& operator-=(const CycPoly1& o);
  friend CycPoly1 operator+(CycPoly1 a, const CycPoly1& b) { return a += b; }
  friend CycPoly1 operator-(CycPoly1 a, const CycPoly1& b) { return a -= b; }
  friend CycPoly1 operator*(const CycPoly1& a, const CycPoly1& b);
  friend bool operator==(const CycPoly1& a, const CycPoly1& b);
  friend bool operator!=(const CycPoly1& a, const CycPoly1& b) { return !(a == b); }

  CycPoly1 scale(const CycInt& s) const;
  CycPoly1 shift(int k) const;  // multiply by c^k
  CycPoly1 pow(unsigned e) const;
  CycPoly1 derivative() const;
  CycPoly1 divexact(const CycInt& s) const;
  CycPoly1 divexact(const CycPoly1& b) const;
  CycInt eval(const CycInt& x) const;
  std::vector<lcplx> embed(int bits = default_precision_bits()) const;
  std::string str() const;

 private:
  int d_;
  int phi_;
  std::vector<mpz_class> v_;
};

// Polynomial in (c, z) over Z[w], stored as z-coefficients in c.
class CycPoly2 {
 public:
  CycPoly2() : CycPoly2(2) {}
  explicit CycPoly2(int d) : d_(d) {}
  CycPoly2(int d, std::vector<CycPoly1> zc);
  static CycPoly2 z(int d);
  static CycPoly2 c(int d);
  static CycPoly2 constant(const CycInt& v);
  static CycPoly2 from_c(const CycPoly1& p);
  // z^d + c
  static CycPoly2 quadratic_family(int d);

  int d() const { return d_; }
  int deg_z() const { return static_cast<int>(z_.size()) - 1; }
  int deg_c() const;
  bool is_zero() const { return z_.empty(); }
  bool is_rational() const;
  bool is_monic_z() const;
  const CycPoly1& zcoeff(int a) const { return z_[a]; }
  const std::vector<CycPoly1>& zcoeffs() const { return z_; }
  std::vector<CycPoly1>& zcoeffs() { return z_; }
  CycInt coeff(int a, int b) const;
  void set_coeff(int a, int b, const CycInt& x);
  void trim();
  std::size_t nnz() const;
  std::size_t max_bits() const;
  // gcd of the z-exponents carrying nonzero coefficients (0 for zero poly).
  int z_stride() const;

  CycPoly2 operator-() const;
  CycPoly2& operator+=(const CycPoly2& o);
  CycPoly2& operator-=(const CycPoly2& o);
  friend CycPoly2 operator+(CycPoly2 a, const CycPoly2& b) { return a += b; }
  friend CycPoly2 operator-(CycPoly2 a, const CycPoly2& b) { return a -= b; }
  friend CycPoly2 operator*(const CycPoly2& a, const CycPoly2& b);
  friend bool operator==(const CycPoly2& a, const CycPoly2& b);
  friend bool operator!=(const CycPoly2& a, const CycPoly2& b) { return !(a == b); }

  CycPoly2 scale(const CycInt& s) const;
  CycPoly2 pow(unsigned e) const;

 private:
  int d_;
  std::vector<CycPoly1> z_;
};

// Multiplication with an explicit kernel choice; operator* picks one by size.
enum class MulKernel { Auto, Schoolbook, Kronecker };
CycPoly2 multiply(const CycPoly2& a, const CycPoly2& b, MulKernel k = MulKernel::Auto);

// Exact quotient a / b; b needs an invertible-in-Z[w][c] leading z-coefficient
// dividing every step.  Throws NonZeroRemainder otherwise.
enum class DivKernel { Auto, Schoolbook, Kronecker };
CycPoly2 divide_exact(const CycPoly2& a, const CycPoly2& b, DivKernel k = DivKernel::Auto);

// p(c, g(c, z))
CycPoly2 compose_z(const CycPoly2& p, const CycPoly2& g);
// p(c, z^d + c), via a Taylor shift in the second slot.
CycPoly2 compose_family(const CycPoly2& p);
// p(c, w^k z)
CycPoly2 rotate_z(const CycPoly2& p, long k);
// p(c, c) as a polynomial in c.
CycPoly1 diagonal(const CycPoly2& p);
CycPoly2 derivative_z(const CycPoly2& p);
CycPoly2 derivative_c(const CycPoly2& p);

// Resultant in z by the subresultant PRS; result is a polynomial in c.
CycPoly1 resultant_z(const CycPoly2& a, const CycPoly2& b);
// Same quantity as a Sylvester determinant (fraction-free elimination).
CycPoly1 resultant_sylvester(const CycPoly2& a, const CycPoly2& b);
// Squarefree part of a polynomial with rational coefficients, made primitive.
CycPoly1 squarefree_part(const CycPoly1& p);
// Pairs (factor, multiplicity) with pairwise coprime squarefree primitive
// factors whose product with multiplicities is p up to a constant.
std::vector<std::pair<CycPoly1, int>> squarefree_decomposition(const CycPoly1& p);

// Complex coefficients: out[a][b] is the embedded coefficient of z^a c^b.
std::vector<std::vector<lcplx>> embed_complex(const CycPoly2& p,
                                              int bits = default_precision_bits());

nlohmann::json to_json(const CycPoly2& p);
CycPoly2 poly_from_json(const nlohmann::json& j);

}  // namespace dynacurve
