#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#if defined(__SSE4_1__)
#include <immintrin.h>
#define RANKSELECT_FLAT_SIMD 1
#endif

#include "rankselect/bit_vector.hpp"
#include "rankselect/common.hpp"
#include "rankselect/detail/block_scan.hpp"
#include "rankselect/search.hpp"

namespace rankselect {

__extension__ using uint128_t = unsigned __int128;

/// 128-bit interleaved entry of the flat index, one per 4096-bit L1 block.
///
/// Bits [0,44) hold the L1 count: ones before this block (within its L0
/// block). Bits [44 + 12(k-1), 44 + 12k) for k = 1..7 hold c_k, the ones
/// inside this block before its k-th 512-bit L2 block. c_0 = 0 is implicit.
struct alignas(16) FlatL12Entry {
  static constexpr uint32_t kL1Width = 44;
  static constexpr uint32_t kL2Width = 12;
  static constexpr uint32_t kL2Fields = 7;
  static constexpr uint64_t kL1Mask = (uint64_t{1} << kL1Width) - 1;

  uint128_t bits = 0;

  [[nodiscard]] static constexpr FlatL12Entry make(uint64_t l1, const std::array<uint32_t, kL2Fields>& cumulative) noexcept {
    assert(l1 <= kL1Mask);
    uint128_t bits = l1;
    for (uint32_t k = 0; k < kL2Fields; ++k) {
      assert(cumulative[k] <= 3584);
      bits |= static_cast<uint128_t>(cumulative[k]) << (kL1Width + kL2Width * k);
    }
    return {bits};
  }

  [[nodiscard]] constexpr uint64_t l1() const noexcept { return static_cast<uint64_t>(bits) & kL1Mask; }

  /// c_k for k in [0, 7].
  [[nodiscard]] constexpr uint32_t l2(uint32_t k) const noexcept {
    assert(k <= kL2Fields);
    if (k == 0) {
      return 0;
    }
    return static_cast<uint32_t>(bits >> (kL1Width - kL2Width + kL2Width * k)) & 0xFFFU;
  }

  /// The seven 12-bit fields, byte aligned (field k-1 at bits [12(k-1), 12k)).
  [[nodiscard]] constexpr uint128_t packed_l2() const noexcept { return bits >> kL1Width; }

  [[nodiscard]] constexpr uint64_t low_word() const noexcept { return static_cast<uint64_t>(bits); }
  [[nodiscard]] constexpr uint64_t high_word() const noexcept { return static_cast<uint64_t>(bits >> 64); }
  [[nodiscard]] static constexpr FlatL12Entry from_words(uint64_t low, uint64_t high) noexcept {
    return {(static_cast<uint128_t>(high) << 64) | low};
  }

  friend constexpr bool operator==(const FlatL12Entry& a, const FlatL12Entry& b) noexcept { return a.bits == b.bits; }
};
static_assert(sizeof(FlatL12Entry) == 16);

namespace detail {

/// c_k for ones, 512k - c_k for zeros.
template <bool kOnes>
[[nodiscard]] constexpr uint32_t flat_l2_before(const FlatL12Entry& e, uint32_t k) noexcept {
  return kOnes ? e.l2(k) : 512 * k - e.l2(k);
}

}  // namespace detail

/// Scalar reference unpack: lane k = 12-bit field k zero-extended, lane 7 = 0.
[[nodiscard]] constexpr std::array<uint16_t, 8> unpack_12_to_16_scalar(uint128_t packed) noexcept {
  std::array<uint16_t, 8> lanes{};
  for (uint32_t k = 0; k < FlatL12Entry::kL2Fields; ++k) {
    lanes[k] = static_cast<uint16_t>((packed >> (12 * k)) & 0xFFF);
  }
  return lanes;
}

#if defined(RANKSELECT_FLAT_SIMD)
namespace detail {

// Two 12-bit fields share three bytes. Each 16-bit lane gathers the two bytes
// holding its field; even lanes then keep their low 12 bits, odd lanes drop
// their low nibble, and the two results are interleaved lane by lane.
[[nodiscard]] inline __m128i unpack_12_to_16_sse(uint128_t packed) noexcept {
  const __m128i raw = _mm_set_epi64x(static_cast<int64_t>(static_cast<uint64_t>(packed >> 64)),
                                     static_cast<int64_t>(static_cast<uint64_t>(packed)));
  const __m128i spread = _mm_shuffle_epi8(raw, _mm_setr_epi8(0, 1, 1, 2, 3, 4, 4, 5, 6, 7, 7, 8, 9, 10, -1, -1));
  const __m128i low_aligned = _mm_and_si128(spread, _mm_set1_epi16(0x0FFF));
  const __m128i high_aligned = _mm_srli_epi16(spread, 4);
  return _mm_blend_epi16(low_aligned, high_aligned, 0xAA);
}

}  // namespace detail
#endif

/// Seven packed 12-bit fields to eight 16-bit lanes (lane 7 is zero).
[[nodiscard]] inline std::array<uint16_t, 8> unpack_12_to_16(uint128_t packed) noexcept {
#if defined(RANKSELECT_FLAT_SIMD)
  std::array<uint16_t, 8> lanes;
  _mm_storeu_si128(reinterpret_cast<__m128i*>(lanes.data()), detail::unpack_12_to_16_sse(packed));
  return lanes;
#else
  return unpack_12_to_16_scalar(packed);
#endif
}

/// L2 block (0..7) holding the r-th target bit: |{k in 1..7 : c_k < r}|.
/// For kOnes = false the counts are converted to zeros on the fly.
template <bool kOnes = true>
[[nodiscard]] constexpr uint32_t search_l2_linear(const FlatL12Entry& e, uint64_t r) noexcept {
  uint32_t block = 0;
  while (block < FlatL12Entry::kL2Fields && detail::flat_l2_before<kOnes>(e, block + 1) < r) {
    ++block;
  }
  return block;
}

/// Same result as search_l2_linear via a fixed three-level decision tree.
/// `less` is invoked exactly three times.
template <bool kOnes = true, typename Less = std::less<>>
[[nodiscard]] constexpr uint32_t search_l2_binary(const FlatL12Entry& e, uint64_t r, Less less = {}) {
  return uniform_binary_search<3>([&e](uint32_t k) { return detail::flat_l2_before<kOnes>(e, k); }, r, less);
}

/// Same result via one 8x16-bit compare of all unpacked fields against r - 1.
template <bool kOnes = true>
[[nodiscard]] inline uint32_t search_l2_parallel(const FlatL12Entry& e, uint64_t r) noexcept {
  assert(r >= 1);
#if defined(RANKSELECT_FLAT_SIMD)
  __m128i lanes = detail::unpack_12_to_16_sse(e.packed_l2());
  if constexpr (!kOnes) {
    lanes = _mm_sub_epi16(_mm_setr_epi16(512, 1024, 1536, 2048, 2560, 3072, 3584, 0), lanes);
  }
  const __m128i greater = _mm_cmpgt_epi16(lanes, _mm_set1_epi16(static_cast<int16_t>(r - 1)));
  const uint32_t qualifying = static_cast<uint32_t>(std::popcount(static_cast<uint32_t>(_mm_movemask_epi8(greater)))) / 2;
#else
  const auto unpacked = unpack_12_to_16_scalar(e.packed_l2());
  uint32_t qualifying = 0;
  for (uint32_t k = 0; k < FlatL12Entry::kL2Fields; ++k) {
    const uint32_t value = kOnes ? unpacked[k] : 512 * (k + 1) - unpacked[k];
    qualifying += value > r - 1;
  }
#endif
  return FlatL12Entry::kL2Fields - qualifying;
}

template <bool kOnes = true>
[[nodiscard]] inline uint32_t search_l2(const FlatL12Entry& e, uint64_t r, SearchStrategy strategy) noexcept {
  switch (strategy) {
    case SearchStrategy::kLinear: return search_l2_linear<kOnes>(e, r);
    case SearchStrategy::kUniformBinary: return search_l2_binary<kOnes>(e, r);
    case SearchStrategy::kParallelCompare: break;
  }
  return search_l2_parallel<kOnes>(e, r);
}

struct FlatConfig {
  /// Required for vectors longer than 2^44 bits.
  bool with_l0 = false;
  SampleConfig samples = SampleConfig::kOnes;
  /// Used by select0/select1/select without an explicit strategy.
  SearchStrategy strategy = SearchStrategy::kParallelCompare;
};

/// Rank/select index with optional 2^44-bit L0 blocks and 4096-bit L1 blocks
/// whose 128-bit entries carry cumulative L2 counts, so rank reads exactly one
/// L2 field and select can search the seven fields directly.
class FlatIndex {
 public:
  static constexpr uint64_t kL0Bits = uint64_t{1} << 44;
  static constexpr uint64_t kL1Bits = 4096;
  static constexpr uint64_t kL2Bits = 512;
  static constexpr uint64_t kL1PerL0 = kL0Bits / kL1Bits;
  static constexpr uint64_t kWordsPerL1 = kL1Bits / 64;
  static constexpr uint64_t kWordsPerL2 = kL2Bits / 64;

  FlatIndex() = default;
  /// Throws std::length_error for vectors over 2^44 bits without an L0 index.
  explicit FlatIndex(const BitVector& bv, FlatConfig cfg = {});

  /// Throws std::length_error if n bits cannot be indexed with this config.
  static void check_size(uint64_t n_bits, bool with_l0);

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
    const FlatL12Entry& entry = l12_[i / kL1Bits];
    stats.entry();
    uint64_t result = entry.l1() + entry.l2(static_cast<uint32_t>((i % kL1Bits) / kL2Bits));
    stats.l2_field();
    if (with_l0_) {
      result += l0_[i / kL0Bits];
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
  [[nodiscard]] bool has_l0() const noexcept { return with_l0_; }
  [[nodiscard]] SampleConfig sample_config() const noexcept { return sample_cfg_; }
  [[nodiscard]] SearchStrategy default_strategy() const noexcept { return strategy_; }

  [[nodiscard]] std::span<const uint64_t> l0() const noexcept { return l0_; }
  [[nodiscard]] std::span<const FlatL12Entry> l12() const noexcept { return l12_; }
  [[nodiscard]] std::span<const uint64_t> samples(bool alpha) const noexcept { return samples_[alpha]; }

  [[nodiscard]] SpaceBreakdown space() const noexcept;

  void save(std::ostream& out) const;
  [[nodiscard]] static FlatIndex load(std::istream& in, const BitVector& bv);

 private:
  [[nodiscard]] uint64_t rank_at_end(uint64_t i) const;

  template <bool kOnes>
  [[nodiscard]] uint64_t before_l0(uint64_t block) const noexcept {
    return kOnes ? l0_[block] : block * kL0Bits - l0_[block];
  }
  template <bool kOnes>
  [[nodiscard]] uint64_t before_l1(uint64_t block, uint64_t scope_first) const noexcept {
    const uint64_t ones = l12_[block].l1();
    return kOnes ? ones : (block - scope_first) * kL1Bits - ones;
  }

  template <bool kOnes, SearchStrategy kStrategy>
  [[nodiscard]] uint64_t select_impl(uint64_t j) const {
    assert(j >= 1 && j <= (kOnes ? ones_ : zeros()));
    uint64_t rank = j;
    uint64_t scope_first = 0;
    uint64_t scope_end = l12_.size();
    if (with_l0_) {
      uint64_t l0_block = 0;
      while (l0_block + 1 < l0_.size() && before_l0<kOnes>(l0_block + 1) < j) {
        ++l0_block;
      }
      rank -= before_l0<kOnes>(l0_block);
      scope_first = l0_block * kL1PerL0;
      scope_end = std::min<uint64_t>(scope_end, scope_first + kL1PerL0);
    }

    uint64_t block = scope_first;
    if (const auto& samples = samples_[kOnes]; !samples.empty()) {
      block = std::max(block, samples[(j - 1) / kSampleRate] / kL1Bits);
    }
    while (block + 1 < scope_end && before_l1<kOnes>(block + 1, scope_first) < rank) {
      ++block;
    }
    rank -= before_l1<kOnes>(block, scope_first);

    const FlatL12Entry& entry = l12_[block];
    uint32_t l2_block;
    if constexpr (kStrategy == SearchStrategy::kLinear) {
      l2_block = search_l2_linear<kOnes>(entry, rank);
    } else if constexpr (kStrategy == SearchStrategy::kUniformBinary) {
      l2_block = search_l2_binary<kOnes>(entry, rank);
    } else {
      l2_block = search_l2_parallel<kOnes>(entry, rank);
    }
    rank -= detail::flat_l2_before<kOnes>(entry, l2_block);
    return detail::select_from_word<kOnes>(bv_->data(), block * kWordsPerL1 + l2_block * kWordsPerL2, rank);
  }

  const BitVector* bv_ = nullptr;
  uint64_t size_ = 0;
  uint64_t ones_ = 0;
  bool with_l0_ = false;
  SampleConfig sample_cfg_ = SampleConfig::kNone;
  SearchStrategy strategy_ = SearchStrategy::kParallelCompare;
  std::vector<uint64_t> l0_;
  std::vector<FlatL12Entry> l12_;
  std::vector<uint64_t> samples_[2];
};

}  // namespace rankselect
