#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <vector>

#include "dv/kernels.hpp"

namespace k = dv::kernels;

namespace {

std::vector<const k::Table*> variants() {
  std::vector<const k::Table*> out{&k::scalar()};
  if (const auto* t = k::avx2()) out.push_back(t);
  if (const auto* t = k::neon()) out.push_back(t);
  return out;
}

// Sparse words so that "any" kernels see both outcomes.
std::vector<k::Word> random_words(std::mt19937_64& rng, std::size_t len, unsigned density) {
  std::vector<k::Word> w(len);
  for (auto& x : w) {
    x = 0;
    for (unsigned b = 0; b < density; ++b) x |= k::Word{1} << (rng() % 64);
  }
  return w;
}

}  // namespace

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
  const auto& active = k::active();
  bool found = false;
  for (const auto* t : variants()) found |= (t == &active);
  EXPECT_TRUE(found) << active.name;
}

TEST(Kernels, SimdVariantsMatchScalarOnRandomWords) {
  std::mt19937_64 rng(7);
  const k::Table& ref = k::scalar();
  for (const auto* t : variants()) {
    SCOPED_TRACE(std::string(t->name));
    for (int trial = 0; trial < 3000; ++trial) {
      const std::size_t len = rng() % 37;
      const unsigned density = static_cast<unsigned>(rng() % 3);
      auto a = random_words(rng, len, density);
      auto b = (rng() % 4 == 0) ? a : random_words(rng, len, density);
      auto mask = random_words(rng, len, static_cast<unsigned>(rng() % 4));

      EXPECT_EQ(t->any_xor(a.data(), b.data(), len), ref.any_xor(a.data(), b.data(), len));
      EXPECT_EQ(t->any_xor_masked(a.data(), b.data(), mask.data(), len),
                ref.any_xor_masked(a.data(), b.data(), mask.data(), len));
      EXPECT_EQ(t->any_and(a.data(), b.data(), len), ref.any_and(a.data(), b.data(), len));
      EXPECT_EQ(t->popcount(a.data(), len), ref.popcount(a.data(), len));
      EXPECT_EQ(t->popcount_and(a.data(), b.data(), len), ref.popcount_and(a.data(), b.data(), len));
      EXPECT_EQ(t->popcount_andnot(a.data(), b.data(), len), ref.popcount_andnot(a.data(), b.data(), len));

      std::vector<k::Word> out1(len), out2(len);
      t->xor_into(a.data(), b.data(), out1.data(), len);
      ref.xor_into(a.data(), b.data(), out2.data(), len);
      EXPECT_EQ(out1, out2);
    }
  }
}

TEST(Kernels, ScalarMatchesBitByBitDefinition) {
  std::mt19937_64 rng(11);
  const k::Table& s = k::scalar();
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t len = 1 + rng() % 5;
    std::vector<k::Word> a(len), b(len);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    std::size_t pc = 0, pc_and = 0, pc_andnot = 0;
    bool any_x = false;
    for (std::size_t bit = 0; bit < len * 64; ++bit) {
      bool ab = k::test_bit(a, bit), bb = k::test_bit(b, bit);
      pc += ab;
      pc_and += ab && bb;
      pc_andnot += ab && !bb;
      any_x |= ab != bb;
    }
    EXPECT_EQ(s.popcount(a.data(), len), pc);
    EXPECT_EQ(s.popcount_and(a.data(), b.data(), len), pc_and);
    EXPECT_EQ(s.popcount_andnot(a.data(), b.data(), len), pc_andnot);
    EXPECT_EQ(s.any_xor(a.data(), b.data(), len), any_x);
  }
}

TEST(Kernels, ForEachSetBitVisitsAscending) {
  std::vector<k::Word> w(3, 0);
  k::set_bit(w, 0);
  k::set_bit(w, 63);
  k::set_bit(w, 64);
  k::set_bit(w, 190);
  std::vector<std::size_t> seen;
  k::for_each_set_bit(w, [&](std::size_t b) { seen.push_back(b); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 63, 64, 190}));
  k::clear_bit(w, 63);
  EXPECT_FALSE(k::test_bit(w, 63));
}

TEST(Kernels, EmptyInputs) {
  for (const auto* t : variants()) {
    EXPECT_FALSE(t->any_xor(nullptr, nullptr, 0));
    EXPECT_EQ(t->popcount(nullptr, 0), 0U);
  }
}
