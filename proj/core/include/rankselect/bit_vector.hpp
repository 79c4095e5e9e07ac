#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace rankselect {

/// Fixed-length sequence of bits stored in 64-bit words.
///
/// Bit i lives at bit (i % 64) of word (i / 64). Bits of the last word at
/// positions >= size() are always zero. Indexes built over a BitVector hold a
/// reference to it and are invalidated by any later call to set().
class BitVector {
 public:
  BitVector() = default;
  BitVector(uint64_t size, bool fill);

  /// Adopts a word array; padding bits beyond size are cleared.
  BitVector(uint64_t size, std::vector<uint64_t> words);

  [[nodiscard]] uint64_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
  [[nodiscard]] uint64_t num_words() const noexcept { return words_.size(); }

  [[nodiscard]] bool get(uint64_t i) const noexcept {
    assert(i < size_);
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }
  [[nodiscard]] bool operator[](uint64_t i) const noexcept { return get(i); }

  void set(uint64_t i, bool b) noexcept {
    assert(i < size_);
    const uint64_t mask = 1ULL << (i & 63);
    if (b) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  [[nodiscard]] uint64_t word(uint64_t w) const noexcept {
    assert(w < words_.size());
    return words_[w];
  }

  [[nodiscard]] std::span<const uint64_t> words() const noexcept { return words_; }
  [[nodiscard]] const uint64_t* data() const noexcept { return words_.data(); }

  /// Number of ones in [start, end).
  [[nodiscard]] uint64_t count_ones_range(uint64_t start, uint64_t end) const;
  [[nodiscard]] uint64_t count_ones() const noexcept;

  /// Heap bytes of the word array.
  [[nodiscard]] uint64_t space_bytes() const noexcept { return words_.size() * sizeof(uint64_t); }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  static constexpr uint64_t words_for(uint64_t bits) noexcept { return (bits + 63) / 64; }

 private:
  void clear_padding() noexcept;

  uint64_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace rankselect
