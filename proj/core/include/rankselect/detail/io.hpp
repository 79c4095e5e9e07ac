#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

// Little-endian binary I/O shared by the vector and index dump formats.
namespace rankselect::detail {

enum class IndexKind : uint32_t { kPoppy = 1, kFlat = 2, kWide = 3 };

inline constexpr char kIndexMagic[4] = {'R', 'S', 'I', 'X'};
inline constexpr uint32_t kIndexFormatVersion = 1;

void write_u32(std::ostream& out, uint32_t value);
void write_u64(std::ostream& out, uint64_t value);
[[nodiscard]] uint32_t read_u32(std::istream& in);
[[nodiscard]] uint64_t read_u64(std::istream& in);

/// Raw little-endian words, no length prefix.
void write_words(std::ostream& out, std::span<const uint64_t> words);
void read_words(std::istream& in, std::span<uint64_t> words);

/// Length-prefixed arrays.
void write_array(std::ostream& out, std::span<const uint64_t> values);
void write_array(std::ostream& out, std::span<const uint32_t> values);
void write_array(std::ostream& out, std::span<const uint16_t> values);
[[nodiscard]] std::vector<uint64_t> read_array_u64(std::istream& in, uint64_t expected);
[[nodiscard]] std::vector<uint32_t> read_array_u32(std::istream& in, uint64_t expected);
[[nodiscard]] std::vector<uint16_t> read_array_u16(std::istream& in, uint64_t expected);
/// Sample arrays have data-dependent length, bounded by the vector size.
[[nodiscard]] std::vector<uint64_t> read_array_u64_bounded(std::istream& in, uint64_t max_count);

void write_index_header(std::ostream& out, IndexKind kind, uint64_t n_bits);
/// Throws std::runtime_error on bad magic, version, kind, or length mismatch.
void read_index_header(std::istream& in, IndexKind kind, uint64_t n_bits);

}  // namespace rankselect::detail
