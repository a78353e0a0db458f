#include "dv/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace dv::kernels {

#if defined(DV_HAVE_AVX2)
namespace detail {
extern const Table kAvx2Table;
}
#endif
#if defined(DV_HAVE_NEON)
namespace detail {
extern const Table kNeonTable;
}
#endif

const Table* avx2() {
#if defined(DV_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const Table* neon() {
#if defined(DV_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

namespace {

const Table& resolve() {
  if (const char* force = std::getenv("DV_FORCE_SCALAR"); force != nullptr && std::string_view(force) == "1")
    return scalar();
  if (const Table* t = avx2()) return *t;
  if (const Table* t = neon()) return *t;
  return scalar();
}

}  // namespace

const Table& active() {
  static const Table& table = resolve();
  return table;
}

}  // namespace dv::kernels
