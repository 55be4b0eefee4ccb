#include <algorithm>
#include <cstring>

#include "dynacurve/errors.hpp"
#include "internal.hpp"

namespace dynacurve::detail {

mpz_class kronecker_pack(const std::vector<Slot>& slots, std::size_t nslots, std::size_t kl) {
  std::size_t total = nslots * kl;
  mpz_class pos, neg;
  bool has_neg = false;
  for (const auto& s : slots)
    if (sgn(*s.value) < 0) has_neg = true;
  mp_limb_t* pw = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
  std::fill(pw, pw + total, mp_limb_t(0));
  mp_limb_t* nw = nullptr;
  if (has_neg) {
    nw = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    std::fill(nw, nw + total, mp_limb_t(0));
  }
  for (const auto& s : slots) {
    mpz_srcptr v = s.value->get_mpz_t();
    std::size_t n = mpz_size(v);
    if (n == 0) continue;
    if (n >= kl && (n > kl || mpz_sizeinbase(v, 2) >= 64 * kl))
      throw Error("Kronecker slot overflow");
    mp_limb_t* dst = (sgn(*s.value) > 0 ? pw : nw) + s.index * kl;
    std::memcpy(dst, mpz_limbs_read(v), n * sizeof(mp_limb_t));
  }
  mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
  if (has_neg) {
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    pos -= neg;
  }
  return pos;
}

std::vector<mpz_class> kronecker_unpack(const mpz_class& v, std::size_t nslots, std::size_t kl) {
  std::vector<mpz_class> out(nslots);
  std::size_t n = mpz_size(v.get_mpz_t());
  const mp_limb_t* src = mpz_limbs_read(v.get_mpz_t());
  bool negate = sgn(v) < 0;
  std::vector<mp_limb_t> block(kl);
  const mp_limb_t top = mp_limb_t(1) << 63;
  mp_limb_t carry = 0;
  for (std::size_t i = 0; i < nslots; ++i) {
    std::size_t lo = i * kl;
    std::fill(block.begin(), block.end(), mp_limb_t(0));
    if (lo < n) std::memcpy(block.data(), src + lo, std::min(kl, n - lo) * sizeof(mp_limb_t));
    if (carry) carry = mpn_add_1(block.data(), block.data(), static_cast<mp_size_t>(kl), 1);
    if (carry) continue;  // block wrapped to zero
    bool is_neg = (block[kl - 1] & top) != 0;
    if (is_neg) {
      // value = block - X  ==  -(~block + 1)
      for (auto& w : block) w = ~w;
      mpn_add_1(block.data(), block.data(), static_cast<mp_size_t>(kl), 1);
      carry = 1;
    }
    std::size_t m = kl;
    while (m > 0 && block[m - 1] == 0) --m;
    if (m == 0) continue;
    mpz_ptr dst = out[i].get_mpz_t();
    mp_limb_t* w = mpz_limbs_write(dst, static_cast<mp_size_t>(m));
    std::memcpy(w, block.data(), m * sizeof(mp_limb_t));
    mpz_limbs_finish(dst, static_cast<mp_size_t>(m));
    if (is_neg != negate) mpz_neg(dst, dst);
  }
  bool spill = carry != 0;
  for (std::size_t k = nslots * kl; k < n && !spill; ++k) spill = src[k] != 0;
  if (spill) throw Error("Kronecker value exceeds slot range");
  return out;
}

}  // namespace dynacurve::detail
