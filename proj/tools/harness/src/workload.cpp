#include "rankselect/harness/workload.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace rankselect::harness {

std::string_view to_string(Distribution d) noexcept {
  return d == Distribution::kUniform ? "uniform" : "adversarial";
}

std::string_view to_string(QueryKind kind) noexcept {
  switch (kind) {
    case QueryKind::kRank0: return "rank0";
    case QueryKind::kRank1: return "rank1";
    case QueryKind::kSelect0: return "select0";
    case QueryKind::kSelect1: return "select1";
  }
  return "?";
}

std::optional<Distribution> parse_distribution(std::string_view text) noexcept {
  if (text == "uniform") {
    return Distribution::kUniform;
  }
  if (text == "adversarial") {
    return Distribution::kAdversarial;
  }
  return std::nullopt;
}

std::optional<QueryKind> parse_query_kind(std::string_view text) noexcept {
  for (const QueryKind kind : kAllQueryKinds) {
    if (text == to_string(kind)) {
      return kind;
    }
  }
  return std::nullopt;
}

void WorkloadSpec::validate() const {
  if (n == 0) {
    throw std::invalid_argument("workload size must be at least one bit");
  }
  if (!(density > 0.0 && density < 100.0)) {
    throw std::invalid_argument("density must lie strictly between 0 and 100 percent, got " +
                                std::to_string(density));
  }
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) noexcept {
  uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// P(bit = 1) = probability via one comparison of a 64-bit draw.
void fill_bernoulli(BitVector& bv, uint64_t begin, uint64_t end, double probability, std::mt19937_64& rng) {
  if (probability <= 0.0) {
    return;
  }
  if (probability >= 1.0) {
    for (uint64_t i = begin; i < end; ++i) {
      bv.set(i, true);
    }
    return;
  }
  const auto threshold = static_cast<uint64_t>(std::ldexp(probability, 64));
  for (uint64_t i = begin; i < end; ++i) {
    if (rng() < threshold) {
      bv.set(i, true);
    }
  }
}

void check_args(uint64_t n, double density) {
  WorkloadSpec spec;
  spec.n = n;
  spec.density = density;
  spec.validate();
}

}  // namespace

BitVector gen_uniform(uint64_t n, double density, uint64_t seed) {
  check_args(n, density);
  BitVector bv(n, false);
  std::mt19937_64 rng(seed);
  fill_bernoulli(bv, 0, n, density / 100.0, rng);
  return bv;
}

BitVector gen_adversarial(uint64_t n, double density, uint64_t seed) {
  check_args(n, density);
  BitVector bv(n, false);
  const double target_ones = static_cast<double>(n) * density / 100.0;
  const auto boundary =
      std::min<uint64_t>(n, static_cast<uint64_t>(std::ceil(static_cast<double>(n) * (100.0 - density) / 100.0)));
  std::mt19937_64 rng(seed);
  if (boundary > 0) {
    fill_bernoulli(bv, 0, boundary, 0.01 * target_ones / static_cast<double>(boundary), rng);
  }
  if (boundary < n) {
    fill_bernoulli(bv, boundary, n, 0.99 * target_ones / static_cast<double>(n - boundary), rng);
  }
  return bv;
}

BitVector gen_vector(const WorkloadSpec& spec, uint64_t seed) {
  return spec.distribution == Distribution::kUniform ? gen_uniform(spec.n, spec.density, seed)
                                                     : gen_adversarial(spec.n, spec.density, seed);
}

QueryList gen_queries(QueryKind kind, const BitVector& bv, uint64_t count, uint64_t seed) {
  QueryList list{kind, seed, {}};
  uint64_t low = 0;
  uint64_t high = bv.size();
  if (is_select(kind)) {
    const uint64_t ones = bv.count_ones();
    const uint64_t available = query_bit(kind) ? ones : bv.size() - ones;
    if (available == 0) {
      throw std::invalid_argument(std::string(to_string(kind)) + " queries requested but the vector contains no " +
                                  (query_bit(kind) ? "ones" : "zeros"));
    }
    low = 1;
    high = available;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> pick(low, high);
  list.args.resize(count);
  for (uint64_t& arg : list.args) {
    arg = pick(rng);
  }
  return list;
}

QueryWorkload gen_workload(const WorkloadSpec& spec, const BitVector& bv, uint64_t run_seed) {
  QueryWorkload workload{spec.n, spec.density, spec.distribution, run_seed, {}};
  for (const QueryKind kind : spec.query_kinds) {
    workload.lists.push_back(
        gen_queries(kind, bv, spec.num_queries, mix_seed(run_seed, 100 + static_cast<uint64_t>(kind))));
  }
  return workload;
}

}  // namespace rankselect::harness
