#pragma once

#include <cstdint>
#include <functional>

namespace rankselect {

/// Uniform binary search over a monotone sequence value(1) <= ... <= value(2^levels - 1).
///
/// Returns |{k : less(value(k), r)}| using exactly `levels` comparisons and an
/// input-independent probe schedule (half, quarter, ... of the range).
template <uint32_t kLevels, typename Value, typename Less = std::less<>>
[[nodiscard]] constexpr uint32_t uniform_binary_search(Value&& value, uint64_t r, Less less = {}) {
  uint32_t pos = 0;
  for (uint32_t step = 1U << (kLevels - 1); step != 0; step >>= 1) {
    if (less(static_cast<uint64_t>(value(pos + step)), r)) {
      pos += step;
    }
  }
  return pos;
}

}  // namespace rankselect
