#include "rankselect/word_select.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <random>

namespace rankselect {
namespace {

// LSB-first bit loop.
uint32_t loop_select(uint64_t w, uint32_t j) {
  uint32_t seen = 0;
  for (uint32_t bit = 0; bit < 64; ++bit) {
    if ((w >> bit) & 1) {
      if (++seen == j) {
        return bit;
      }
    }
  }
  return 64;
}

// Words with a spread of densities, including very sparse and very dense ones.
uint64_t random_word(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return rng();
    case 1: return rng() & rng() & rng();
    case 2: return rng() | rng() | rng();
    default: return rng() & (~0ULL >> (rng() % 64));
  }
}

TEST(WordSelectTest, PopcountExamples) {
  EXPECT_EQ(popcount_word(0), 0u);
  EXPECT_EQ(popcount_word(~0ULL), 64u);
  EXPECT_EQ(popcount_word(0x8000'0000'0000'0001ULL), 2u);
}

TEST(WordSelectTest, SelectExamples) {
  EXPECT_EQ(select_in_word(0b1, 1), 0u);
  for (uint32_t j = 1; j <= 64; ++j) {
    EXPECT_EQ(select_in_word(~0ULL, j), j - 1);
    EXPECT_EQ(select_in_word_portable(~0ULL, j), j - 1);
  }
}

TEST(WordSelectTest, Select0Examples) {
  EXPECT_EQ(select0_in_word(0, 1), 0u);
  EXPECT_EQ(select0_in_word(0b1, 1), 1u);
}

TEST(WordSelectTest, RandomPairsMatchBitLoop) {
  std::mt19937_64 rng(42);
  int checked = 0;
  while (checked < 10'000) {
    const uint64_t w = random_word(rng);
    const uint32_t ones = popcount_word(w);
    if (ones == 0) {
      continue;
    }
    const uint32_t j = 1 + static_cast<uint32_t>(rng() % ones);
    const uint32_t expected = loop_select(w, j);
    ASSERT_EQ(select_in_word_portable(w, j), expected) << std::hex << w << " j=" << std::dec << j;
    ASSERT_EQ(select_in_word(w, j), expected);
#if defined(__BMI2__) && !defined(RANKSELECT_NO_BMI2)
    ASSERT_EQ(select_in_word_pdep(w, j), expected);
#endif
    ++checked;
  }
}

TEST(WordSelectTest, Select0MatchesComplementOracle) {
  std::mt19937_64 rng(43);
  int checked = 0;
  while (checked < 10'000) {
    const uint64_t w = random_word(rng);
    const uint32_t zeros = 64 - popcount_word(w);
    if (zeros == 0) {
      continue;
    }
    const uint32_t j = 1 + static_cast<uint32_t>(rng() % zeros);
    ASSERT_EQ(select0_in_word(w, j), loop_select(~w, j));
    ASSERT_EQ(select0_in_word(w, j), select_in_word(~w, j));
    ++checked;
  }
}

TEST(WordSelectTest, RankSelectDualityAndMonotonicity) {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 2000; ++round) {
    const uint64_t w = random_word(rng);
    const uint32_t ones = popcount_word(w);
    uint32_t previous = 0;
    for (uint32_t j = 1; j <= ones; ++j) {
      const uint32_t pos = select_in_word(w, j);
      ASSERT_TRUE((w >> pos) & 1);
      const uint64_t below = pos == 0 ? 0 : (w & (~0ULL >> (64 - pos)));
      ASSERT_EQ(std::popcount(below), static_cast<int>(j - 1));
      if (j > 1) {
        ASSERT_LT(previous, pos);
      }
      previous = pos;
    }
  }
}

}  // namespace
}  // namespace rankselect
