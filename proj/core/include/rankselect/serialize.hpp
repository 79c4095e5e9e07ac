#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "rankselect/bit_vector.hpp"

namespace rankselect {

// Flat vector file: 8-byte little-endian length in bits, then the word array,
// each word little-endian.
void save_bit_vector(const BitVector& bv, std::ostream& out);
[[nodiscard]] BitVector load_bit_vector(std::istream& in);
void save_bit_vector(const BitVector& bv, const std::filesystem::path& path);
[[nodiscard]] BitVector load_bit_vector(const std::filesystem::path& path);

}  // namespace rankselect
