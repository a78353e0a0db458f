#include "dv/kernels.hpp"

#include <bit>

namespace dv::kernels {
namespace {

bool any_xor_scalar(const Word* a, const Word* b, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if ((a[i] ^ b[i]) != 0) return true;
  return false;
}

bool any_xor_masked_scalar(const Word* a, const Word* b, const Word* mask, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (((a[i] ^ b[i]) & mask[i]) != 0) return true;
  return false;
}

bool any_and_scalar(const Word* a, const Word* b, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if ((a[i] & b[i]) != 0) return true;
  return false;
}

void xor_into_scalar(const Word* a, const Word* b, Word* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = a[i] ^ b[i];
}

std::size_t popcount_scalar(const Word* a, std::size_t len) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t popcount_and_scalar(const Word* a, const Word* b, std::size_t len) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

std::size_t popcount_andnot_scalar(const Word* a, const Word* b, std::size_t len) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i)
    total += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
  return total;
}

constexpr Table kScalar{
    "scalar",
    any_xor_scalar,
    any_xor_masked_scalar,
    any_and_scalar,
    xor_into_scalar,
    popcount_scalar,
    popcount_and_scalar,
    popcount_andnot_scalar,
};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace dv::kernels
