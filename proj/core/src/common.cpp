#include "rankselect/common.hpp"

namespace rankselect {

std::string_view to_string(SampleConfig cfg) noexcept {
  switch (cfg) {
    case SampleConfig::kNone: return "none";
    case SampleConfig::kOnes: return "ones";
    case SampleConfig::kZeros: return "zeros";
    case SampleConfig::kBoth: return "both";
  }
  return "?";
}

std::string_view to_string(SearchStrategy strategy) noexcept {
  switch (strategy) {
    case SearchStrategy::kLinear: return "linear";
    case SearchStrategy::kUniformBinary: return "binary";
    case SearchStrategy::kParallelCompare: return "simd";
  }
  return "?";
}

std::optional<SampleConfig> parse_sample_config(std::string_view text) noexcept {
  for (const auto cfg : {SampleConfig::kNone, SampleConfig::kOnes, SampleConfig::kZeros, SampleConfig::kBoth}) {
    if (text == to_string(cfg)) {
      return cfg;
    }
  }
  return std::nullopt;
}

std::optional<SearchStrategy> parse_search_strategy(std::string_view text) noexcept {
  if (text == "parallel") {
    return SearchStrategy::kParallelCompare;
  }
  for (const auto s : {SearchStrategy::kLinear, SearchStrategy::kUniformBinary, SearchStrategy::kParallelCompare}) {
    if (text == to_string(s)) {
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace rankselect
