#include "rankselect/flat.hpp"

#include <stdexcept>
#include <string>

#include "rankselect/detail/io.hpp"

namespace rankselect {

FlatIndex::FlatIndex(const BitVector& bv, FlatConfig cfg)
    : bv_(&bv), size_(bv.size()), with_l0_(cfg.with_l0), sample_cfg_(cfg.samples), strategy_(cfg.strategy) {
  check_size(size_, with_l0_);
  const uint64_t num_l1 = (size_ + kL1Bits - 1) / kL1Bits;
  if (with_l0_) {
    l0_.assign((size_ + kL0Bits - 1) / kL0Bits, 0);
  }
  l12_.resize(num_l1);

  const bool sample_ones = samples_for(cfg.samples, true);
  const bool sample_zeros = samples_for(cfg.samples, false);
  detail::SampleCollector ones_collector(true);
  detail::SampleCollector zeros_collector(false);

  const uint64_t* words = bv.data();
  const uint64_t num_words = bv.num_words();
  uint64_t total = 0;
  uint64_t l0_base = 0;
  for (uint64_t block = 0; block < num_l1; ++block) {
    if (with_l0_ && block % kL1PerL0 == 0) {
      l0_base = total;
      l0_[block / kL1PerL0] = total;
    }
    const uint64_t first_word = block * kWordsPerL1;
    std::array<uint32_t, 8> counts{};
    if (first_word + kWordsPerL1 <= num_words) {
      for (uint64_t k = 0; k < 8; ++k) {
        for (uint64_t w = 0; w < kWordsPerL2; ++w) {
          counts[k] += std::popcount(words[first_word + k * kWordsPerL2 + w]);
        }
      }
    } else {
      for (uint64_t w = first_word; w < num_words; ++w) {
        counts[(w - first_word) / kWordsPerL2] += std::popcount(words[w]);
      }
    }
    std::array<uint32_t, FlatL12Entry::kL2Fields> cumulative{};
    uint32_t running = 0;
    for (uint32_t k = 0; k < FlatL12Entry::kL2Fields; ++k) {
      running += counts[k];
      cumulative[k] = running;
    }
    l12_[block] = FlatL12Entry::make(total - l0_base, cumulative);
    total += running + counts[7];

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

void FlatIndex::check_size(uint64_t n_bits, bool with_l0) {
  if (!with_l0 && n_bits > kL0Bits) {
    throw std::length_error("FlatIndex: " + std::to_string(n_bits) +
                            " bits exceed 2^44; enable the L0 index (FlatConfig::with_l0)");
  }
}

uint64_t FlatIndex::rank_at_end(uint64_t i) const {
  if (i == size_) {
    return ones_;
  }
  throw std::out_of_range("rank: position " + std::to_string(i) + " beyond size " + std::to_string(size_));
}

SpaceBreakdown FlatIndex::space() const noexcept {
  return {l0_.size() * sizeof(uint64_t), l12_.size() * sizeof(FlatL12Entry),
          (samples_[0].size() + samples_[1].size()) * sizeof(uint64_t)};
}

void FlatIndex::save(std::ostream& out) const {
  detail::write_index_header(out, detail::IndexKind::kFlat, size_);
  detail::write_u32(out, static_cast<uint32_t>(sample_cfg_));
  detail::write_u32(out, static_cast<uint32_t>(strategy_));
  detail::write_u32(out, with_l0_ ? 1 : 0);
  detail::write_u64(out, ones_);
  detail::write_array(out, std::span<const uint64_t>(l0_));
  std::vector<uint64_t> halves;
  halves.reserve(2 * l12_.size());
  for (const FlatL12Entry& e : l12_) {
    halves.push_back(e.low_word());
    halves.push_back(e.high_word());
  }
  detail::write_array(out, std::span<const uint64_t>(halves));
  detail::write_array(out, std::span<const uint64_t>(samples_[1]));
  detail::write_array(out, std::span<const uint64_t>(samples_[0]));
  if (!out) {
    throw std::runtime_error("FlatIndex::save: write failed");
  }
}

FlatIndex FlatIndex::load(std::istream& in, const BitVector& bv) {
  detail::read_index_header(in, detail::IndexKind::kFlat, bv.size());
  FlatIndex idx;
  idx.bv_ = &bv;
  idx.size_ = bv.size();
  const uint32_t samples = detail::read_u32(in);
  const uint32_t strategy = detail::read_u32(in);
  const uint32_t with_l0 = detail::read_u32(in);
  if (samples > static_cast<uint32_t>(SampleConfig::kBoth) ||
      strategy > static_cast<uint32_t>(SearchStrategy::kParallelCompare) || with_l0 > 1) {
    throw std::runtime_error("FlatIndex::load: corrupt configuration block");
  }
  idx.sample_cfg_ = static_cast<SampleConfig>(samples);
  idx.strategy_ = static_cast<SearchStrategy>(strategy);
  idx.with_l0_ = with_l0 == 1;
  idx.ones_ = detail::read_u64(in);
  const uint64_t num_l1 = (idx.size_ + kL1Bits - 1) / kL1Bits;
  idx.l0_ = detail::read_array_u64(in, idx.with_l0_ ? (idx.size_ + kL0Bits - 1) / kL0Bits : 0);
  const auto halves = detail::read_array_u64(in, 2 * num_l1);
  idx.l12_.resize(num_l1);
  for (size_t b = 0; b < num_l1; ++b) {
    idx.l12_[b] = FlatL12Entry::from_words(halves[2 * b], halves[2 * b + 1]);
  }
  const uint64_t max_samples = idx.size_ / kSampleRate + 1;
  idx.samples_[1] = detail::read_array_u64_bounded(in, max_samples);
  idx.samples_[0] = detail::read_array_u64_bounded(in, max_samples);
  return idx;
}

}  // namespace rankselect
