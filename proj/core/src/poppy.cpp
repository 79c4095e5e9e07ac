#include "rankselect/poppy.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

#include "rankselect/detail/io.hpp"

namespace rankselect {

PoppyIndex::PoppyIndex(const BitVector& bv, SampleConfig samples)
    : bv_(&bv), size_(bv.size()), sample_cfg_(samples) {
  const uint64_t num_l1 = (size_ + kL1Bits - 1) / kL1Bits;
  const uint64_t num_l0 = std::max<uint64_t>(1, (size_ + kL0Bits - 1) / kL0Bits);
  l0_.assign(num_l0, 0);
  l12_.resize(num_l1);

  const bool sample_ones = samples_for(samples, true);
  const bool sample_zeros = samples_for(samples, false);
  detail::SampleCollector ones_collector(true);
  detail::SampleCollector zeros_collector(false);

  const uint64_t* words = bv.data();
  const uint64_t num_words = bv.num_words();
  uint64_t total = 0;
  uint64_t l0_base = 0;
  for (uint64_t block = 0; block < num_l1; ++block) {
    if (block % kL1PerL0 == 0) {
      l0_base = total;
      l0_[block / kL1PerL0] = total;
    }
    const uint64_t first_word = block * kWordsPerL1;
    std::array<uint32_t, 4> counts{};
    if (first_word + kWordsPerL1 <= num_words) {
      for (uint64_t k = 0; k < 4; ++k) {
        for (uint64_t w = 0; w < kWordsPerL2; ++w) {
          counts[k] += std::popcount(words[first_word + k * kWordsPerL2 + w]);
        }
      }
    } else {
      for (uint64_t w = first_word; w < num_words; ++w) {
        counts[(w - first_word) / kWordsPerL2] += std::popcount(words[w]);
      }
    }
    l12_[block] = PoppyL12Entry::make(static_cast<uint32_t>(total - l0_base), counts[0], counts[1], counts[2]);
    total += counts[0] + counts[1] + counts[2] + counts[3];

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

uint64_t PoppyIndex::rank_at_end(uint64_t i) const {
  if (i == size_) {
    return ones_;
  }
  throw std::out_of_range("rank: position " + std::to_string(i) + " beyond size " + std::to_string(size_));
}

SpaceBreakdown PoppyIndex::space() const noexcept {
  return {l0_.size() * sizeof(uint64_t), l12_.size() * sizeof(PoppyL12Entry),
          (samples_[0].size() + samples_[1].size()) * sizeof(uint64_t)};
}

void PoppyIndex::save(std::ostream& out) const {
  detail::write_index_header(out, detail::IndexKind::kPoppy, size_);
  detail::write_u32(out, static_cast<uint32_t>(sample_cfg_));
  detail::write_u64(out, ones_);
  detail::write_array(out, std::span<const uint64_t>(l0_));
  std::vector<uint64_t> packed(l12_.size());
  for (size_t b = 0; b < l12_.size(); ++b) {
    packed[b] = uint64_t{l12_[b].l1} | (uint64_t{l12_[b].l2} << 32);
  }
  detail::write_array(out, std::span<const uint64_t>(packed));
  detail::write_array(out, std::span<const uint64_t>(samples_[1]));
  detail::write_array(out, std::span<const uint64_t>(samples_[0]));
  if (!out) {
    throw std::runtime_error("PoppyIndex::save: write failed");
  }
}

PoppyIndex PoppyIndex::load(std::istream& in, const BitVector& bv) {
  detail::read_index_header(in, detail::IndexKind::kPoppy, bv.size());
  PoppyIndex idx;
  idx.bv_ = &bv;
  idx.size_ = bv.size();
  const uint32_t cfg = detail::read_u32(in);
  if (cfg > static_cast<uint32_t>(SampleConfig::kBoth)) {
    throw std::runtime_error("PoppyIndex::load: bad sample config " + std::to_string(cfg));
  }
  idx.sample_cfg_ = static_cast<SampleConfig>(cfg);
  idx.ones_ = detail::read_u64(in);
  const uint64_t num_l1 = (idx.size_ + kL1Bits - 1) / kL1Bits;
  idx.l0_ = detail::read_array_u64(in, std::max<uint64_t>(1, (idx.size_ + kL0Bits - 1) / kL0Bits));
  const auto packed = detail::read_array_u64(in, num_l1);
  idx.l12_.resize(num_l1);
  for (size_t b = 0; b < num_l1; ++b) {
    idx.l12_[b] = {static_cast<uint32_t>(packed[b]), static_cast<uint32_t>(packed[b] >> 32)};
  }
  const uint64_t max_samples = idx.size_ / kSampleRate + 1;
  idx.samples_[1] = detail::read_array_u64_bounded(in, max_samples);
  idx.samples_[0] = detail::read_array_u64_bounded(in, max_samples);
  return idx;
}

}  // namespace rankselect
