#include "rankselect/oracle.hpp"

#include <string>

namespace rankselect::oracle {

uint64_t naive_rank(const BitVector& bv, bool alpha, uint64_t i) {
  if (i > bv.size()) {
    throw std::out_of_range("naive_rank: position " + std::to_string(i) + " beyond size " +
                            std::to_string(bv.size()));
  }
  uint64_t count = 0;
  for (uint64_t p = 0; p < i; ++p) {
    count += bv.get(p) == alpha;
  }
  return count;
}

uint64_t naive_select(const BitVector& bv, bool alpha, uint64_t j) {
  if (j == 0) {
    throw RankDoesNotExist("naive_select: rank 0 does not exist (ranks are 1-based)");
  }
  uint64_t seen = 0;
  for (uint64_t p = 0; p < bv.size(); ++p) {
    if (bv.get(p) == alpha && ++seen == j) {
      return p;
    }
  }
  throw RankDoesNotExist("naive_select: rank " + std::to_string(j) + " does not exist, only " +
                         std::to_string(seen) + " " + (alpha ? "ones" : "zeros"));
}

std::vector<uint64_t> naive_rank_table(const BitVector& bv, bool alpha) {
  std::vector<uint64_t> table(bv.size() + 1);
  uint64_t count = 0;
  for (uint64_t p = 0; p < bv.size(); ++p) {
    table[p] = count;
    count += bv.get(p) == alpha;
  }
  table[bv.size()] = count;
  return table;
}

std::vector<uint64_t> naive_select_table(const BitVector& bv, bool alpha) {
  std::vector<uint64_t> table;
  for (uint64_t p = 0; p < bv.size(); ++p) {
    if (bv.get(p) == alpha) {
      table.push_back(p);
    }
  }
  return table;
}

}  // namespace rankselect::oracle
