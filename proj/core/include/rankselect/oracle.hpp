#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rankselect/bit_vector.hpp"

// Brute-force rank/select over BitVector::get(). Reference only; shares no
// code with the indexes.
namespace rankselect::oracle {

class RankDoesNotExist : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Number of bits equal to alpha in [0, i).
[[nodiscard]] uint64_t naive_rank(const BitVector& bv, bool alpha, uint64_t i);

/// Position of the j-th (1-based) bit equal to alpha.
[[nodiscard]] uint64_t naive_select(const BitVector& bv, bool alpha, uint64_t j);

/// naive_rank for every i in [0, size], from one bit loop.
[[nodiscard]] std::vector<uint64_t> naive_rank_table(const BitVector& bv, bool alpha);

/// Entry j-1 holds naive_select(bv, alpha, j).
[[nodiscard]] std::vector<uint64_t> naive_select_table(const BitVector& bv, bool alpha);

}  // namespace rankselect::oracle
