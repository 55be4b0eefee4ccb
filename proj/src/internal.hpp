#pragma once
// Helpers shared between translation units of the library.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "dynacurve/cycpoly.hpp"

namespace dynacurve::detail {

// Reduce coordinates (any length) modulo the d-th cyclotomic polynomial,
// leaving exactly phi(d) of them.
void reduce_cyclotomic(std::vector<mpz_class>& c, int d);

// acc -= x * s for a signed machine integer s.
void mpz_submul_ui_signed(mpz_class& acc, const mpz_class& x, long s);

// Nearest long double, keeping the top 63 bits.
long double to_ld(const mpz_class& v);

lcplx embed_coords(const mpz_class* c, int phi, int d, int bits);

// Kronecker substitution at X = 2^(64 * kl).  Slots hold signed values of
// magnitude below 2^(64 * kl - 1).
struct Slot {
  std::size_t index;
  const mpz_class* value;
};
mpz_class kronecker_pack(const std::vector<Slot>& slots, std::size_t nslots, std::size_t kl);
// Returns nslots signed digits; throws if the value does not fit.
std::vector<mpz_class> kronecker_unpack(const mpz_class& v, std::size_t nslots, std::size_t kl);

}  // namespace dynacurve::detail
