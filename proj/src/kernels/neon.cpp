#include "dv/kernels.hpp"

#include <arm_neon.h>

namespace dv::kernels::detail {
namespace {

inline uint64x2_t load(const Word* p) { return vld1q_u64(p); }

inline bool nonzero(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

inline std::size_t count(uint64x2_t v) {
  return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

bool any_xor_neon(const Word* a, const Word* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2)
    if (nonzero(veorq_u64(load(a + i), load(b + i)))) return true;
  for (; i < len; ++i)
    if ((a[i] ^ b[i]) != 0) return true;
  return false;
}

bool any_xor_masked_neon(const Word* a, const Word* b, const Word* mask, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2)
    if (nonzero(vandq_u64(veorq_u64(load(a + i), load(b + i)), load(mask + i)))) return true;
  for (; i < len; ++i)
    if (((a[i] ^ b[i]) & mask[i]) != 0) return true;
  return false;
}

bool any_and_neon(const Word* a, const Word* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2)
    if (nonzero(vandq_u64(load(a + i), load(b + i)))) return true;
  for (; i < len; ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

void xor_into_neon(const Word* a, const Word* b, Word* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) vst1q_u64(out + i, veorq_u64(load(a + i), load(b + i)));
  for (; i < len; ++i) out[i] = a[i] ^ b[i];
}

std::size_t popcount_neon(const Word* a, std::size_t len) {
  std::size_t total = 0, i = 0;
  for (; i + 2 <= len; i += 2) total += count(load(a + i));
  for (; i < len; ++i) total += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return total;
}

std::size_t popcount_and_neon(const Word* a, const Word* b, std::size_t len) {
  std::size_t total = 0, i = 0;
  for (; i + 2 <= len; i += 2) total += count(vandq_u64(load(a + i), load(b + i)));
  for (; i < len; ++i) total += static_cast<std::size_t>(__builtin_popcountll(a[i] & b[i]));
  return total;
}

std::size_t popcount_andnot_neon(const Word* a, const Word* b, std::size_t len) {
  std::size_t total = 0, i = 0;
  for (; i + 2 <= len; i += 2) total += count(vbicq_u64(load(a + i), load(b + i)));
  for (; i < len; ++i) total += static_cast<std::size_t>(__builtin_popcountll(a[i] & ~b[i]));
  return total;
}

}  // namespace

extern const Table kNeonTable{
    "neon",
    any_xor_neon,
    any_xor_masked_neon,
    any_and_neon,
    xor_into_neon,
    popcount_neon,
    popcount_and_neon,
    popcount_andnot_neon,
};

}  // namespace dv::kernels::detail
