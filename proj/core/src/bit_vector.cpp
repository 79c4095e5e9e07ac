#include "rankselect/bit_vector.hpp"

#include <stdexcept>
#include <string>

namespace rankselect {

BitVector::BitVector(uint64_t size, bool fill)
    : size_(size), words_(words_for(size), fill ? ~0ULL : 0ULL) {
  clear_padding();
}

BitVector::BitVector(uint64_t size, std::vector<uint64_t> words)
    : size_(size), words_(std::move(words)) {
  if (words_.size() != words_for(size)) {
    throw std::invalid_argument("BitVector: expected " + std::to_string(words_for(size)) +
                                " words for " + std::to_string(size) + " bits, got " +
                                std::to_string(words_.size()));
  }
  clear_padding();
}

void BitVector::clear_padding() noexcept {
  if (const uint64_t tail = size_ & 63; tail != 0) {
    words_.back() &= (1ULL << tail) - 1;
  }
}

uint64_t BitVector::count_ones_range(uint64_t start, uint64_t end) const {
  if (start > end || end > size_) {
    throw std::out_of_range("count_ones_range: invalid range [" + std::to_string(start) + ", " +
                            std::to_string(end) + ") for size " + std::to_string(size_));
  }
  if (start == end) {
    return 0;
  }
  const uint64_t first = start >> 6;
  const uint64_t last = (end - 1) >> 6;
  const uint64_t head_mask = ~0ULL << (start & 63);
  const uint64_t tail_mask = ~0ULL >> (63 - ((end - 1) & 63));
  if (first == last) {
    return std::popcount(words_[first] & head_mask & tail_mask);
  }
  uint64_t ones = std::popcount(words_[first] & head_mask);
  for (uint64_t w = first + 1; w < last; ++w) {
    ones += std::popcount(words_[w]);
  }
  return ones + std::popcount(words_[last] & tail_mask);
}

uint64_t BitVector::count_ones() const noexcept {
  uint64_t ones = 0;
  for (const uint64_t w : words_) {
    ones += std::popcount(w);
  }
  return ones;
}

}  // namespace rankselect
