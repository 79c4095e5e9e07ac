#pragma once

#include <cstdint>
#include <random>

#include "rankselect/bit_vector.hpp"

namespace rankselect::testing {

// Per-bit Bernoulli vector; deliberately independent of the harness generators.
inline BitVector random_vector(uint64_t n, double density_percent, uint64_t seed) {
  BitVector bv(n, false);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(density_percent / 100.0);
  for (uint64_t i = 0; i < n; ++i) {
    if (bit(rng)) {
      bv.set(i, true);
    }
  }
  return bv;
}

// Sparse prefix, dense suffix: 99% of the ones in the last density% of bits.
inline BitVector skewed_vector(uint64_t n, double density_percent, uint64_t seed) {
  BitVector bv(n, false);
  std::mt19937_64 rng(seed);
  const auto split = static_cast<uint64_t>(static_cast<double>(n) * (100.0 - density_percent) / 100.0);
  std::bernoulli_distribution sparse(split == 0 ? 0.0 : std::min(1.0, 0.01 * density_percent * n / 100.0 / split));
  std::bernoulli_distribution dense(0.99);
  for (uint64_t i = 0; i < n; ++i) {
    if (i < split ? sparse(rng) : dense(rng)) {
      bv.set(i, true);
    }
  }
  return bv;
}

// 0101...: odd positions are ones.
inline BitVector alternating_vector(uint64_t n) {
  BitVector bv(n, false);
  for (uint64_t i = 1; i < n; i += 2) {
    bv.set(i, true);
  }
  return bv;
}

}  // namespace rankselect::testing
