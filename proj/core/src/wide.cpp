#include "rankselect/wide.hpp"

#include <stdexcept>
#include <string>

#include "rankselect/detail/io.hpp"

namespace rankselect {

WideIndex::WideIndex(const BitVector& bv, SampleConfig samples, SearchStrategy strategy)
    : bv_(&bv), size_(bv.size()), sample_cfg_(samples), strategy_(strategy) {
  const uint64_t num_l1 = (size_ + kL1Bits - 1) / kL1Bits;
  l1_.resize(num_l1);
  l2_.resize(num_l1 * kStoredL2);

  const bool sample_ones = samples_for(samples, true);
  const bool sample_zeros = samples_for(samples, false);
  detail::SampleCollector ones_collector(true);
  detail::SampleCollector zeros_collector(false);

  const uint64_t* words = bv.data();
  const uint64_t num_words = bv.num_words();
  uint64_t total = 0;
  for (uint64_t block = 0; block < num_l1; ++block) {
    l1_[block] = total;
    const uint64_t first_word = block * kWordsPerL1;
    uint16_t* entries = l2_.data() + block * kStoredL2;
    uint32_t running = 0;
    if (first_word + kWordsPerL1 <= num_words) {
      for (uint32_t k = 0; k < kStoredL2 + 1; ++k) {
        uint32_t count = 0;
        for (uint64_t w = 0; w < kWordsPerL2; ++w) {
          count += std::popcount(words[first_word + k * kWordsPerL2 + w]);
        }
        running += count;
        if (k < kStoredL2) {
          entries[k] = static_cast<uint16_t>(running);
        }
      }
    } else {
      for (uint64_t w = first_word; w < num_words; ++w) {
        const uint64_t k = (w - first_word) / kWordsPerL2;
        running += std::popcount(words[w]);
        if ((w - first_word) % kWordsPerL2 == kWordsPerL2 - 1 && k < kStoredL2) {
          entries[k] = static_cast<uint16_t>(running);
        }
      }
      // L2 blocks past the end of the vector (and the partial one) keep the final count
      const uint64_t complete = (num_words - first_word) / kWordsPerL2;
      for (uint64_t k = complete; k < kStoredL2; ++k) {
        entries[k] = static_cast<uint16_t>(running);
      }
    }
    total += running;

    if (sample_ones || sample_zeros) {
      const uint64_t end_word = std::min(first_word + kWordsPerL1, num_words);
      for (uint64_t w = first_word; w < end_word; ++w) {
        const uint32_t valid = static_cast<uint32_t>(std::min<uint64_t>(64, size_ - w * 64));
        if (sample_ones) {
          ones_collector.add_word(w, words[w], valid);
        }
        if (sample_zeros) {
          zeros_collector.add_word(w, words[w], valid);
        }
      }
    }
  }
  ones_ = total;
  samples_[1] = ones_collector.take();
  samples_[0] = zeros_collector.take();
}

uint64_t WideIndex::rank_at_end(uint64_t i) const {
  if (i == size_) {
    return ones_;
  }
  throw std::out_of_range("rank: position " + std::to_string(i) + " beyond size " + std::to_string(size_));
}

SpaceBreakdown WideIndex::space() const noexcept {
  return {0, l1_.size() * sizeof(uint64_t) + l2_.size() * sizeof(uint16_t),
          (samples_[0].size() + samples_[1].size()) * sizeof(uint64_t)};
}

void WideIndex::save(std::ostream& out) const {
  detail::write_index_header(out, detail::IndexKind::kWide, size_);
  detail::write_u32(out, static_cast<uint32_t>(sample_cfg_));
  detail::write_u32(out, static_cast<uint32_t>(strategy_));
  detail::write_u64(out, ones_);
  detail::write_array(out, std::span<const uint64_t>(l1_));
  detail::write_array(out, std::span<const uint16_t>(l2_));
  detail::write_array(out, std::span<const uint64_t>(samples_[1]));
  detail::write_array(out, std::span<const uint64_t>(samples_[0]));
  if (!out) {
    throw std::runtime_error("WideIndex::save: write failed");
  }
}

WideIndex WideIndex::load(std::istream& in, const BitVector& bv) {
  detail::read_index_header(in, detail::IndexKind::kWide, bv.size());
  WideIndex idx;
  idx.bv_ = &bv;
  idx.size_ = bv.size();
  const uint32_t samples = detail::read_u32(in);
  const uint32_t strategy = detail::read_u32(in);
  if (samples > static_cast<uint32_t>(SampleConfig::kBoth) ||
      strategy > static_cast<uint32_t>(SearchStrategy::kParallelCompare)) {
    throw std::runtime_error("WideIndex::load: corrupt configuration block");
  }
  idx.sample_cfg_ = static_cast<SampleConfig>(samples);
  idx.strategy_ = static_cast<SearchStrategy>(strategy);
  idx.ones_ = detail::read_u64(in);
  const uint64_t num_l1 = (idx.size_ + kL1Bits - 1) / kL1Bits;
  idx.l1_ = detail::read_array_u64(in, num_l1);
  idx.l2_ = detail::read_array_u16(in, num_l1 * kStoredL2);
  const uint64_t max_samples = idx.size_ / kSampleRate + 1;
  idx.samples_[1] = detail::read_array_u64_bounded(in, max_samples);
  idx.samples_[0] = detail::read_array_u64_bounded(in, max_samples);
  return idx;
}

}  // namespace rankselect
