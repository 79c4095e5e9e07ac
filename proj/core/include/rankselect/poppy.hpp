#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "rankselect/bit_vector.hpp"
#include "rankselect/common.hpp"
#include "rankselect/detail/block_scan.hpp"

namespace rankselect {

/// Interleaved L1/L2 entry of the poppy index, one per 2048-bit L1 block.
///
/// Two plain 32-bit members so reading the L1 count needs no shift. The L2
/// word packs the popcounts of the first three 512-bit L2 blocks at bits
/// [0,10), [10,20), [20,30); the fourth block's count follows from the next
/// entry and is not stored.
struct PoppyL12Entry {
  uint32_t l1 = 0;
  uint32_t l2 = 0;

  [[nodiscard]] static constexpr PoppyL12Entry make(uint32_t l1, uint32_t c0, uint32_t c1, uint32_t c2) noexcept {
    assert(c0 <= 512 && c1 <= 512 && c2 <= 512);
    return {l1, c0 | (c1 << 10) | (c2 << 20)};
  }
  [[nodiscard]] constexpr uint32_t l2_count(uint32_t k) const noexcept {
    assert(k < 3);
    return (l2 >> (10 * k)) & 0x3FFU;
  }
  friend constexpr bool operator==(const PoppyL12Entry&, const PoppyL12Entry&) = default;
};
static_assert(sizeof(PoppyL12Entry) == 8);
static_assert(offsetof(PoppyL12Entry, l1) == 0);
static_assert(offsetof(PoppyL12Entry, l2) == 4);

/// Rank/select index with 2^32-bit L0 blocks, 2048-bit L1 blocks and four
/// 512-bit L2 blocks per L1 block. L2 counts are per-block (delta encoded),
/// so queries sum them while scanning.
class PoppyIndex {
 public:
  static constexpr uint64_t kL0Bits = uint64_t{1} << 32;
  static constexpr uint64_t kL1Bits = 2048;
  static constexpr uint64_t kL2Bits = 512;
  static constexpr uint64_t kL1PerL0 = kL0Bits / kL1Bits;
  static constexpr uint64_t kWordsPerL1 = kL1Bits / 64;
  static constexpr uint64_t kWordsPerL2 = kL2Bits / 64;

  PoppyIndex() = default;
  explicit PoppyIndex(const BitVector& bv, SampleConfig samples = SampleConfig::kOnes);

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
    const PoppyL12Entry entry = l12_[i / kL1Bits];
    stats.entry();
    uint64_t result = l0_[i / kL0Bits] + entry.l1;
    const uint32_t l2_block = static_cast<uint32_t>((i % kL1Bits) / kL2Bits);
    for (uint32_t k = 0; k < l2_block; ++k) {
      result += entry.l2_count(k);
    }
    stats.l2_field(l2_block);
    return result + detail::popcount_prefix(bv_->data(), (i / kL2Bits) * kWordsPerL2, i, stats);
  }

  /// Position of the j-th one, 1 <= j <= ones().
  [[nodiscard]] uint64_t select1(uint64_t j) const { return select_impl<true>(j); }
  /// Position of the j-th zero, 1 <= j <= zeros().
  [[nodiscard]] uint64_t select0(uint64_t j) const { return select_impl<false>(j); }
  [[nodiscard]] uint64_t select(bool alpha, uint64_t j) const { return alpha ? select1(j) : select0(j); }

  [[nodiscard]] uint64_t size() const noexcept { return size_; }
  [[nodiscard]] uint64_t ones() const noexcept { return ones_; }
  [[nodiscard]] uint64_t zeros() const noexcept { return size_ - ones_; }
  [[nodiscard]] SampleConfig sample_config() const noexcept { return sample_cfg_; }

  [[nodiscard]] std::span<const uint64_t> l0() const noexcept { return l0_; }
  [[nodiscard]] std::span<const PoppyL12Entry> l12() const noexcept { return l12_; }
  [[nodiscard]] std::span<const uint64_t> samples(bool alpha) const noexcept { return samples_[alpha]; }

  [[nodiscard]] SpaceBreakdown space() const noexcept;

  void save(std::ostream& out) const;
  [[nodiscard]] static PoppyIndex load(std::istream& in, const BitVector& bv);

 private:
  [[nodiscard]] uint64_t rank_at_end(uint64_t i) const;

  template <bool kOnes>
  [[nodiscard]] uint64_t before_l0(uint64_t block) const noexcept {
    return kOnes ? l0_[block] : block * kL0Bits - l0_[block];
  }
  template <bool kOnes>
  [[nodiscard]] uint64_t before_l1(uint64_t block, uint64_t scope_first) const noexcept {
    const uint64_t ones = l12_[block].l1;
    return kOnes ? ones : (block - scope_first) * kL1Bits - ones;
  }

  template <bool kOnes>
  [[nodiscard]] uint64_t select_impl(uint64_t j) const {
    assert(j >= 1 && j <= (kOnes ? ones_ : zeros()));
    uint64_t l0_block = 0;
    while (l0_block + 1 < l0_.size() && before_l0<kOnes>(l0_block + 1) < j) {
      ++l0_block;
    }
    uint64_t rank = j - before_l0<kOnes>(l0_block);
    const uint64_t scope_first = l0_block * kL1PerL0;
    const uint64_t scope_end = std::min<uint64_t>(l12_.size(), scope_first + kL1PerL0);

    uint64_t block = scope_first;
    if (const auto& samples = samples_[kOnes]; !samples.empty()) {
      block = std::max(block, samples[(j - 1) / kSampleRate] / kL1Bits);
    }
    while (block + 1 < scope_end && before_l1<kOnes>(block + 1, scope_first) < rank) {
      ++block;
    }
    rank -= before_l1<kOnes>(block, scope_first);

    const PoppyL12Entry entry = l12_[block];
    uint32_t l2_block = 0;
    for (; l2_block < 3; ++l2_block) {
      const uint64_t count = kOnes ? entry.l2_count(l2_block) : kL2Bits - entry.l2_count(l2_block);
      if (rank <= count) {
        break;
      }
      rank -= count;
    }
    return detail::select_from_word<kOnes>(bv_->data(), block * kWordsPerL1 + l2_block * kWordsPerL2, rank);
  }

  const BitVector* bv_ = nullptr;
  uint64_t size_ = 0;
  uint64_t ones_ = 0;
  SampleConfig sample_cfg_ = SampleConfig::kNone;
  std::vector<uint64_t> l0_;
  std::vector<PoppyL12Entry> l12_;
  std::vector<uint64_t> samples_[2];
};

}  // namespace rankselect
