#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace rankselect {

/// Which bit values get select samples.
enum class SampleConfig : uint8_t { kNone, kOnes, kZeros, kBoth };

/// How select finds the L2 block inside an L1 block.
enum class SearchStrategy : uint8_t { kLinear, kUniformBinary, kParallelCompare };

/// Every 8192-th occurrence of a sampled bit value is stored as a position.
inline constexpr uint64_t kSampleRate = 8192;

[[nodiscard]] constexpr bool samples_for(SampleConfig cfg, bool alpha) noexcept {
  return cfg == SampleConfig::kBoth || (alpha ? cfg == SampleConfig::kOnes : cfg == SampleConfig::kZeros);
}

/// Exact heap footprint of an index, excluding the bit vector.
struct SpaceBreakdown {
  uint64_t l0_bytes = 0;
  uint64_t l12_bytes = 0;
  uint64_t samples_bytes = 0;

  [[nodiscard]] constexpr uint64_t total_bytes() const noexcept {
    return l0_bytes + l12_bytes + samples_bytes;
  }
  /// Index bits relative to the vector length, in percent.
  [[nodiscard]] constexpr double overhead_percent(uint64_t n_bits) const noexcept {
    return n_bits == 0 ? 0.0 : 100.0 * static_cast<double>(total_bytes() * 8) / static_cast<double>(n_bits);
  }
};

/// Counts memory touched by instrumented queries.
struct AccessStats {
  uint64_t queries = 0;
  uint64_t l12_entries = 0;
  uint64_t l2_fields = 0;
  uint64_t words = 0;
  uint64_t max_words_per_query = 0;

  void begin_query() noexcept { ++queries; current_words_ = 0; }
  void entry() noexcept { ++l12_entries; }
  void l2_field(uint64_t count = 1) noexcept { l2_fields += count; }
  void word(uint64_t count = 1) noexcept {
    words += count;
    current_words_ += count;
    if (current_words_ > max_words_per_query) {
      max_words_per_query = current_words_;
    }
  }

 private:
  uint64_t current_words_ = 0;
};

struct NullStats {
  constexpr void begin_query() noexcept {}
  constexpr void entry() noexcept {}
  constexpr void l2_field(uint64_t = 1) noexcept {}
  constexpr void word(uint64_t = 1) noexcept {}
};

[[nodiscard]] std::string_view to_string(SampleConfig cfg) noexcept;
[[nodiscard]] std::string_view to_string(SearchStrategy strategy) noexcept;
[[nodiscard]] std::optional<SampleConfig> parse_sample_config(std::string_view text) noexcept;
[[nodiscard]] std::optional<SearchStrategy> parse_search_strategy(std::string_view text) noexcept;

}  // namespace rankselect
