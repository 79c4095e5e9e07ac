#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include "rankselect/bit_vector.hpp"
#include "rankselect/common.hpp"
#include "rankselect/detail/block_scan.hpp"
#include "rankselect/search.hpp"

namespace rankselect {

/// The 127 stored L2 counts of one wide L1 block; entry k-1 = ones in the
/// block before L2 block k.
using WideL2Span = std::span<const uint16_t, 127>;

namespace detail {

template <bool kOnes>
[[nodiscard]] constexpr uint32_t wide_l2_before(WideL2Span entries, uint32_t k) noexcept {
  if (k == 0) {
    return 0;
  }
  return kOnes ? entries[k - 1] : 512 * k - entries[k - 1];
}

}  // namespace detail

/// |{k in 1..127 : before(k) < r}| by a forward scan.
template <bool kOnes = true>
[[nodiscard]] constexpr uint32_t search_wide_linear(WideL2Span entries, uint64_t r) noexcept {
  uint32_t block = 0;
  while (block < 127 && detail::wide_l2_before<kOnes>(entries, block + 1) < r) {
    ++block;
  }
  return block;
}

/// Seven-level uniform binary search; `less` is invoked exactly seven times.
template <bool kOnes = true, typename Less = std::less<>>
[[nodiscard]] constexpr uint32_t search_wide_binary(WideL2Span entries, uint64_t r, Less less = {}) {
  return uniform_binary_search<7>([entries](uint32_t k) { return detail::wide_l2_before<kOnes>(entries, k); }, r,
                                  less);
}

/// Counts entries >= r eight 16-bit lanes at a time.
template <bool kOnes = true>
[[nodiscard]] inline uint32_t search_wide_parallel(WideL2Span entries, uint64_t r) noexcept {
  assert(r >= 1 && r <= 65536);
#if defined(__SSE2__)
  const __m128i bias = _mm_set1_epi16(static_cast<int16_t>(0x8000));
  const __m128i threshold = _mm_xor_si128(_mm_set1_epi16(static_cast<int16_t>(r - 1)), bias);
  const __m128i steps = _mm_setr_epi16(512, 1024, 1536, 2048, 2560, 3072, 3584, 4096);
  uint32_t qualifying = 0;
  auto count_chunk = [&](uint32_t offset, uint32_t keep) {
    __m128i values = _mm_loadu_si128(reinterpret_cast<const __m128i*>(entries.data() + offset));
    if constexpr (!kOnes) {
      const __m128i before = _mm_add_epi16(_mm_set1_epi16(static_cast<int16_t>(offset * 512)), steps);
      values = _mm_sub_epi16(before, values);
    }
    const __m128i greater = _mm_cmpgt_epi16(_mm_xor_si128(values, bias), threshold);
    qualifying += static_cast<uint32_t>(std::popcount(static_cast<uint32_t>(_mm_movemask_epi8(greater)) & keep)) / 2;
  };
  for (uint32_t offset = 0; offset < 120; offset += 8) {
    count_chunk(offset, 0xFFFF);
  }
  // entries 119..126; entry 119 was counted by the previous chunk
  count_chunk(119, 0xFFFC);
  return 127 - qualifying;
#else
  uint32_t qualifying = 0;
  for (uint32_t k = 1; k <= 127; ++k) {
    qualifying += detail::wide_l2_before<kOnes>(entries, k) > r - 1;
  }
  return 127 - qualifying;
#endif
}

/// Two-level rank index: 64-bit L1 counts per 65536-bit block and a separate
/// array of 16-bit cumulative L2 counts (127 per block). No L0 level.
class WideIndex {
 public:
  static constexpr uint64_t kL1Bits = 65536;
  static constexpr uint64_t kL2Bits = 512;
  static constexpr uint32_t kStoredL2 = 127;
  static constexpr uint64_t kWordsPerL1 = kL1Bits / 64;
  static constexpr uint64_t kWordsPerL2 = kL2Bits / 64;

  WideIndex() = default;
  /// Rank-only by default; attach samples to speed up select.
  explicit WideIndex(const BitVector& bv, SampleConfig samples = SampleConfig::kNone,
                     SearchStrategy strategy = SearchStrategy::kParallelCompare);

  [[nodiscard]] uint64_t rank1(uint64_t i) const {
    NullStats stats;
    return rank1(i, stats);
  }
  [[nodiscard]] uint64_t rank0(uint64_t i) const { return i - rank1(i); }
  [[nodiscard]] uint64_t rank(bool alpha, uint64_t i) const { return alpha ? rank1(i) : rank0(i); }

  template <typename Stats>
  [[nodiscard]] uint64_t rank1(uint64_t i, Stats& stats) const {
    if (i >= size_) [[unlikely]] {
      return rank_at_end(i);
    }
    stats.begin_query();
    const uint64_t block = i / kL1Bits;
    const uint32_t l2_block = static_cast<uint32_t>((i % kL1Bits) / kL2Bits);
    uint64_t result = l1_[block];
    stats.entry();
    if (l2_block != 0) {
      result += l2_[block * kStoredL2 + l2_block - 1];
      stats.l2_field();
    }
    return result + detail::popcount_prefix(bv_->data(), (i / kL2Bits) * kWordsPerL2, i, stats);
  }

  [[nodiscard]] uint64_t select1(uint64_t j) const { return select(true, j, strategy_); }
  [[nodiscard]] uint64_t select0(uint64_t j) const { return select(false, j, strategy_); }
  [[nodiscard]] uint64_t select(bool alpha, uint64_t j) const { return select(alpha, j, strategy_); }
  [[nodiscard]] uint64_t select(bool alpha, uint64_t j, SearchStrategy strategy) const {
    if (alpha) {
      switch (strategy) {
        case SearchStrategy::kLinear: return select_impl<true, SearchStrategy::kLinear>(j);
        case SearchStrategy::kUniformBinary: return select_impl<true, SearchStrategy::kUniformBinary>(j);
        case SearchStrategy::kParallelCompare: break;
      }
      return select_impl<true, SearchStrategy::kParallelCompare>(j);
    }
    switch (strategy) {
      case SearchStrategy::kLinear: return select_impl<false, SearchStrategy::kLinear>(j);
      case SearchStrategy::kUniformBinary: return select_impl<false, SearchStrategy::kUniformBinary>(j);
      case SearchStrategy::kParallelCompare: break;
    }
    return select_impl<false, SearchStrategy::kParallelCompare>(j);
  }

  [[nodiscard]] uint64_t size() const noexcept { return size_; }
  [[nodiscard]] uint64_t ones() const noexcept { return ones_; }
  [[nodiscard]] uint64_t zeros() const noexcept { return size_ - ones_; }
  [[nodiscard]] SampleConfig sample_config() const noexcept { return sample_cfg_; }
  [[nodiscard]] SearchStrategy default_strategy() const noexcept { return strategy_; }

  [[nodiscard]] std::span<const uint64_t> l1() const noexcept { return l1_; }
  [[nodiscard]] std::span<const uint16_t> l2() const noexcept { return l2_; }
  [[nodiscard]] WideL2Span l2_block(uint64_t block) const noexcept {
    return WideL2Span(l2_.data() + block * kStoredL2, kStoredL2);
  }
  [[nodiscard]] std::span<const uint64_t> samples(bool alpha) const noexcept { return samples_[alpha]; }

  /// l1 and l2 are reported as l0_bytes = 0, l12_bytes = both arrays.
  [[nodiscard]] SpaceBreakdown space() const noexcept;

  void save(std::ostream& out) const;
  [[nodiscard]] static WideIndex load(std::istream& in, const BitVector& bv);

 private:
  [[nodiscard]] uint64_t rank_at_end(uint64_t i) const;

  template <bool kOnes>
  [[nodiscard]] uint64_t before_l1(uint64_t block) const noexcept {
    return kOnes ? l1_[block] : block * kL1Bits - l1_[block];
  }

  template <bool kOnes, SearchStrategy kStrategy>
  [[nodiscard]] uint64_t select_impl(uint64_t j) const {
    assert(j >= 1 && j <= (kOnes ? ones_ : zeros()));
    uint64_t block = 0;
    if (const auto& samples = samples_[kOnes]; !samples.empty()) {
      block = samples[(j - 1) / kSampleRate] / kL1Bits;
    }
    while (block + 1 < l1_.size() && before_l1<kOnes>(block + 1) < j) {
      ++block;
    }
    uint64_t rank = j - before_l1<kOnes>(block);
    const WideL2Span entries = l2_block(block);
    uint32_t l2_block;
    if constexpr (kStrategy == SearchStrategy::kLinear) {
      l2_block = search_wide_linear<kOnes>(entries, rank);
    } else if constexpr (kStrategy == SearchStrategy::kUniformBinary) {
      l2_block = search_wide_binary<kOnes>(entries, rank);
    } else {
      l2_block = search_wide_parallel<kOnes>(entries, rank);
    }
    rank -= detail::wide_l2_before<kOnes>(entries, l2_block);
    return detail::select_from_word<kOnes>(bv_->data(), block * kWordsPerL1 + l2_block * kWordsPerL2, rank);
  }

  const BitVector* bv_ = nullptr;
  uint64_t size_ = 0;
  uint64_t ones_ = 0;
  SampleConfig sample_cfg_ = SampleConfig::kNone;
  SearchStrategy strategy_ = SearchStrategy::kParallelCompare;
  std::vector<uint64_t> l1_;
  std::vector<uint16_t> l2_;
  std::vector<uint64_t> samples_[2];
};

}  // namespace rankselect
