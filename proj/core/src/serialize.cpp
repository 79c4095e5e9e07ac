#include "rankselect/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "rankselect/detail/io.hpp"

namespace rankselect {
namespace detail {
namespace {

template <typename T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((static_cast<uint64_t>(value) >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw std::runtime_error("unexpected end of input");
  }
  uint64_t value = 0;
  for (size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<uint64_t>(bytes[b]) << (8 * b);
  }
  return static_cast<T>(value);
}

template <typename T>
void write_span(std::ostream& out, std::span<const T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (const T v : values) {
      write_le(out, v);
    }
  }
}

template <typename T>
void read_span(std::istream& in, std::span<T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()))) {
      throw std::runtime_error("unexpected end of input");
    }
  } else {
    for (T& v : values) {
      v = read_le<T>(in);
    }
  }
}

template <typename T>
std::vector<T> read_prefixed(std::istream& in, uint64_t min_count, uint64_t max_count) {
  const uint64_t count = read_le<uint64_t>(in);
  if (count < min_count || count > max_count) {
    throw std::runtime_error("array length " + std::to_string(count) + " outside [" + std::to_string(min_count) +
                             ", " + std::to_string(max_count) + "]");
  }
  std::vector<T> values(count);
  read_span<T>(in, values);
  return values;
}

}  // namespace

void write_u32(std::ostream& out, uint32_t value) { write_le(out, value); }
void write_u64(std::ostream& out, uint64_t value) { write_le(out, value); }
uint32_t read_u32(std::istream& in) { return read_le<uint32_t>(in); }
uint64_t read_u64(std::istream& in) { return read_le<uint64_t>(in); }

void write_words(std::ostream& out, std::span<const uint64_t> words) { write_span(out, words); }
void read_words(std::istream& in, std::span<uint64_t> words) { read_span(in, words); }

void write_array(std::ostream& out, std::span<const uint64_t> values) {
  write_le<uint64_t>(out, values.size());
  write_span(out, values);
}
void write_array(std::ostream& out, std::span<const uint32_t> values) {
  write_le<uint64_t>(out, values.size());
  write_span(out, values);
}
void write_array(std::ostream& out, std::span<const uint16_t> values) {
  write_le<uint64_t>(out, values.size());
  write_span(out, values);
}

std::vector<uint64_t> read_array_u64(std::istream& in, uint64_t expected) {
  return read_prefixed<uint64_t>(in, expected, expected);
}
std::vector<uint32_t> read_array_u32(std::istream& in, uint64_t expected) {
  return read_prefixed<uint32_t>(in, expected, expected);
}
std::vector<uint16_t> read_array_u16(std::istream& in, uint64_t expected) {
  return read_prefixed<uint16_t>(in, expected, expected);
}
std::vector<uint64_t> read_array_u64_bounded(std::istream& in, uint64_t max_count) {
  return read_prefixed<uint64_t>(in, 0, max_count);
}

void write_index_header(std::ostream& out, IndexKind kind, uint64_t n_bits) {
  out.write(kIndexMagic, sizeof(kIndexMagic));
  write_le(out, kIndexFormatVersion);
  write_le(out, static_cast<uint32_t>(kind));
  write_le(out, n_bits);
}

void read_index_header(std::istream& in, IndexKind kind, uint64_t n_bits) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kIndexMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not an index dump (bad magic)");
  }
  if (const uint32_t version = read_le<uint32_t>(in); version != kIndexFormatVersion) {
    throw std::runtime_error("unsupported index format version " + std::to_string(version));
  }
  if (const uint32_t stored = read_le<uint32_t>(in); stored != static_cast<uint32_t>(kind)) {
    throw std::runtime_error("index dump holds structure kind " + std::to_string(stored) + ", expected " +
                             std::to_string(static_cast<uint32_t>(kind)));
  }
  if (const uint64_t stored_n = read_le<uint64_t>(in); stored_n != n_bits) {
    throw std::runtime_error("index dump built for " + std::to_string(stored_n) + " bits, vector has " +
                             std::to_string(n_bits));
  }
}

}  // namespace detail

void save_bit_vector(const BitVector& bv, std::ostream& out) {
  detail::write_u64(out, bv.size());
  detail::write_words(out, bv.words());
  if (!out) {
    throw std::runtime_error("save_bit_vector: write failed");
  }
}

BitVector load_bit_vector(std::istream& in) {
  const uint64_t size = detail::read_u64(in);
  std::vector<uint64_t> words(BitVector::words_for(size));
  detail::read_words(in, words);
  return BitVector(size, std::move(words));
}

void save_bit_vector(const BitVector& bv, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  save_bit_vector(bv, out);
}

BitVector load_bit_vector(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return load_bit_vector(in);
}

}  // namespace rankselect
