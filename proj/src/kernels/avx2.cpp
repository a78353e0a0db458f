// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.
#include "dv/kernels.hpp"

#include <immintrin.h>

namespace dv::kernels::detail {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }

// Nibble-LUT popcount of each byte, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t horizontal_sum(__m256i acc) {
  __m128i s = _mm_add_epi64(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  return static_cast<std::size_t>(_mm_cvtsi128_si64(s)) +
         static_cast<std::size_t>(_mm_extract_epi64(s, 1));
}

bool any_xor_avx2(const Word* a, const Word* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return true;
  }
  for (; i < len; ++i)
    if ((a[i] ^ b[i]) != 0) return true;
  return false;
}

bool any_xor_masked_avx2(const Word* a, const Word* b, const Word* mask, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, load(mask + i))) return true;
  }
  for (; i < len; ++i)
    if (((a[i] ^ b[i]) & mask[i]) != 0) return true;
  return false;
}

bool any_and_avx2(const Word* a, const Word* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < len; ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

void xor_into_avx2(const Word* a, const Word* b, Word* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_xor_si256(load(a + i), load(b + i)));
  for (; i < len; ++i) out[i] = a[i] ^ b[i];
}

std::size_t popcount_avx2(const Word* a, std::size_t len) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
  std::size_t total = horizontal_sum(acc);
  for (; i < len; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return total;
}

std::size_t popcount_and_avx2(const Word* a, const Word* b, std::size_t len) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(load(a + i), load(b + i))));
  std::size_t total = horizontal_sum(acc);
  for (; i < len; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return total;
}

std::size_t popcount_andnot_avx2(const Word* a, const Word* b, std::size_t len) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y.
  for (; i + 4 <= len; i += 4)
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_andnot_si256(load(b + i), load(a + i))));
  std::size_t total = horizontal_sum(acc);
  for (; i < len; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & ~b[i]));
  return total;
}

}  // namespace

extern const Table kAvx2Table{
    "avx2",
    any_xor_avx2,
    any_xor_masked_avx2,
    any_and_avx2,
    xor_into_avx2,
    popcount_avx2,
    popcount_and_avx2,
    popcount_andnot_avx2,
};

}  // namespace dv::kernels::detail
