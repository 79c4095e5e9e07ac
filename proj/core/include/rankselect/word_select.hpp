#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace rankselect {

#if defined(__BMI2__) && !defined(RANKSELECT_NO_BMI2)
inline constexpr bool kHasHardwareSelect = true;
#else
inline constexpr bool kHasHardwareSelect = false;
#endif

[[nodiscard]] constexpr uint32_t popcount_word(uint64_t w) noexcept {
  return static_cast<uint32_t>(std::popcount(w));
}

namespace detail {

// entry [byte * 8 + k] = position of the (k+1)-th set bit of byte, 8 if absent.
inline constexpr std::array<uint8_t, 2048> kSelectInByte = [] {
  std::array<uint8_t, 2048> table{};
  for (uint32_t byte = 0; byte < 256; ++byte) {
    uint32_t k = 0;
    for (uint32_t slot = 0; slot < 8; ++slot) {
      table[byte * 8 + slot] = 8;
    }
    for (uint32_t bit = 0; bit < 8; ++bit) {
      if ((byte >> bit) & 1U) {
        table[byte * 8 + k++] = static_cast<uint8_t>(bit);
      }
    }
  }
  return table;
}();

inline constexpr uint64_t kOnesStep8 = 0x0101010101010101ULL;
inline constexpr uint64_t kMsbs8 = 0x8080808080808080ULL;

}  // namespace detail

/// Broadword in-word select: byte-wise prefix popcounts pick the byte, a
/// 2 KiB table finishes inside it. j is 1-based.
[[nodiscard]] constexpr uint32_t select_in_word_portable(uint64_t w, uint32_t j) noexcept {
  assert(j >= 1 && j <= popcount_word(w));
  const uint64_t k = j - 1;
  uint64_t s = w - ((w >> 1) & 0x5555555555555555ULL);
  s = (s & 0x3333333333333333ULL) + ((s >> 2) & 0x3333333333333333ULL);
  s = (s + (s >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
  const uint64_t cumulative = s * detail::kOnesStep8;
  // high bit of byte b set iff cumulative count of bytes 0..b is <= k
  const uint64_t le_mask =
      ((k * detail::kOnesStep8 | detail::kMsbs8) - cumulative) & detail::kMsbs8;
  const uint32_t byte = static_cast<uint32_t>(std::popcount(le_mask));
  const uint32_t before = static_cast<uint32_t>(((cumulative << 8) >> (byte * 8)) & 0xFF);
  const uint32_t in_byte = static_cast<uint32_t>((w >> (byte * 8)) & 0xFF);
  return byte * 8 + detail::kSelectInByte[in_byte * 8 + (k - before)];
}

#if defined(__BMI2__) && !defined(RANKSELECT_NO_BMI2)
[[nodiscard]] inline uint32_t select_in_word_pdep(uint64_t w, uint32_t j) noexcept {
  assert(j >= 1 && j <= popcount_word(w));
  return static_cast<uint32_t>(_tzcnt_u64(_pdep_u64(1ULL << (j - 1), w)));
}
#endif

/// Position (LSB = 0) of the j-th set bit of w, 1 <= j <= popcount(w).
[[nodiscard]] inline uint32_t select_in_word(uint64_t w, uint32_t j) noexcept {
#if defined(__BMI2__) && !defined(RANKSELECT_NO_BMI2)
  return select_in_word_pdep(w, j);
#else
  return select_in_word_portable(w, j);
#endif
}

/// Position of the j-th zero bit of w, 1 <= j <= 64 - popcount(w).
[[nodiscard]] inline uint32_t select0_in_word(uint64_t w, uint32_t j) noexcept {
  return select_in_word(~w, j);
}

}  // namespace rankselect
