#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Word-level kernels over bit-packed rows. Every matrix row, difference set
// and column mask in the project is a run of 64-bit words with bit j of word
// w standing for column 64*w + j (0-based). Padding bits past the last column
// are always zero, so the kernels never need a tail mask.
//
// Each kernel has a scalar reference implementation and optional SIMD
// variants. active() picks the best table the running CPU supports.

namespace dv::kernels {

using Word = std::uint64_t;
using ConstWords = std::span<const Word>;
using MutWords = std::span<Word>;

struct Table {
  std::string_view name;

  // (a ^ b) != 0
  bool (*any_xor)(const Word* a, const Word* b, std::size_t len);
  // ((a ^ b) & mask) != 0
  bool (*any_xor_masked)(const Word* a, const Word* b, const Word* mask, std::size_t len);
  // (a & b) != 0
  bool (*any_and)(const Word* a, const Word* b, std::size_t len);
  // out = a ^ b
  void (*xor_into)(const Word* a, const Word* b, Word* out, std::size_t len);
  std::size_t (*popcount)(const Word* a, std::size_t len);
  // popcount(a & b)
  std::size_t (*popcount_and)(const Word* a, const Word* b, std::size_t len);
  // popcount(a & ~b)
  std::size_t (*popcount_andnot)(const Word* a, const Word* b, std::size_t len);
};

const Table& scalar();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const Table* avx2();
const Table* neon();

// Resolved once per process. Setting DV_FORCE_SCALAR=1 in the environment
// pins the scalar table.
const Table& active();

inline bool any_xor(ConstWords a, ConstWords b) {
  return active().any_xor(a.data(), b.data(), a.size());
}
inline bool any_xor_masked(ConstWords a, ConstWords b, ConstWords mask) {
  return active().any_xor_masked(a.data(), b.data(), mask.data(), a.size());
}
inline bool any_and(ConstWords a, ConstWords b) {
  return active().any_and(a.data(), b.data(), a.size());
}
inline void xor_into(ConstWords a, ConstWords b, MutWords out) {
  active().xor_into(a.data(), b.data(), out.data(), a.size());
}
inline std::size_t popcount(ConstWords a) { return active().popcount(a.data(), a.size()); }
inline std::size_t popcount_and(ConstWords a, ConstWords b) {
  return active().popcount_and(a.data(), b.data(), a.size());
}
inline std::size_t popcount_andnot(ConstWords a, ConstWords b) {
  return active().popcount_andnot(a.data(), b.data(), a.size());
}

constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

inline bool test_bit(ConstWords w, std::size_t bit) { return (w[bit >> 6] >> (bit & 63)) & 1U; }
inline void set_bit(MutWords w, std::size_t bit) { w[bit >> 6] |= Word{1} << (bit & 63); }
inline void clear_bit(MutWords w, std::size_t bit) { w[bit >> 6] &= ~(Word{1} << (bit & 63)); }

// Calls f(bit) for every set bit in ascending order.
template <class F>
void for_each_set_bit(ConstWords w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word x = w[i];
    while (x != 0) {
      f(i * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
      x &= x - 1;
    }
  }
}

}  // namespace dv::kernels
