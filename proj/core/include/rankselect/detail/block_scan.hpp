#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "rankselect/common.hpp"
#include "rankselect/word_select.hpp"

namespace rankselect::detail {

/// Ones in [first_word * 64, i). Reads at most i/64 - first_word + 1 words.
template <typename Stats>
[[nodiscard]] inline uint64_t popcount_prefix(const uint64_t* words, uint64_t first_word, uint64_t i,
                                              Stats& stats) noexcept {
  const uint64_t last_word = i >> 6;
  uint64_t ones = 0;
  for (uint64_t w = first_word; w < last_word; ++w) {
    ones += std::popcount(words[w]);
  }
  stats.word(last_word - first_word);
  if (const uint64_t offset = i & 63; offset != 0) {
    ones += std::popcount(words[last_word] & ((1ULL << offset) - 1));
    stats.word();
  }
  return ones;
}

/// Position of the r-th alpha bit at or after word first_word. The bit must
/// exist before the end of the vector.
template <bool kOnes>
[[nodiscard]] inline uint64_t select_from_word(const uint64_t* words, uint64_t first_word, uint64_t r) noexcept {
  assert(r >= 1);
  uint64_t w = first_word;
  for (;; ++w) {
    const uint64_t target = kOnes ? words[w] : ~words[w];
    const uint64_t count = std::popcount(target);
    if (r <= count) {
      return w * 64 + select_in_word(target, static_cast<uint32_t>(r));
    }
    r -= count;
  }
}

/// Records the position of the (s * kSampleRate + 1)-th alpha bit for s = 0, 1, ...
/// while the builder streams words left to right.
class SampleCollector {
 public:
  SampleCollector() = default;
  explicit SampleCollector(bool alpha) : alpha_(alpha) {}

  /// w carries zero padding; valid_bits = number of real bits in w.
  void add_word(uint64_t word_index, uint64_t w, uint32_t valid_bits) {
    uint64_t target = w;
    if (!alpha_) {
      target = ~w;
      if (valid_bits < 64) {
        target &= (1ULL << valid_bits) - 1;
      }
    }
    const uint64_t count = std::popcount(target);
    while (next_ <= seen_ + count) {
      positions_.push_back(word_index * 64 + select_in_word(target, static_cast<uint32_t>(next_ - seen_)));
      next_ += kSampleRate;
    }
    seen_ += count;
  }

  [[nodiscard]] std::vector<uint64_t> take() {
    positions_.shrink_to_fit();
    return std::move(positions_);
  }

 private:
  bool alpha_ = true;
  uint64_t seen_ = 0;
  uint64_t next_ = 1;
  std::vector<uint64_t> positions_;
};

}  // namespace rankselect::detail
