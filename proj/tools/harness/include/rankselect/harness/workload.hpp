#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rankselect/bit_vector.hpp"

namespace rankselect::harness {

enum class Distribution : uint8_t { kUniform, kAdversarial };

enum class QueryKind : uint8_t { kRank0, kRank1, kSelect0, kSelect1 };

inline constexpr QueryKind kAllQueryKinds[] = {QueryKind::kRank0, QueryKind::kRank1, QueryKind::kSelect0,
                                               QueryKind::kSelect1};

[[nodiscard]] constexpr bool is_select(QueryKind kind) noexcept {
  return kind == QueryKind::kSelect0 || kind == QueryKind::kSelect1;
}
/// Bit value a query counts or locates.
[[nodiscard]] constexpr bool query_bit(QueryKind kind) noexcept {
  return kind == QueryKind::kRank1 || kind == QueryKind::kSelect1;
}

[[nodiscard]] std::string_view to_string(Distribution d) noexcept;
[[nodiscard]] std::string_view to_string(QueryKind kind) noexcept;
[[nodiscard]] std::optional<Distribution> parse_distribution(std::string_view text) noexcept;
[[nodiscard]] std::optional<QueryKind> parse_query_kind(std::string_view text) noexcept;

struct WorkloadSpec {
  uint64_t n = uint64_t{1} << 24;
  /// Percent of ones, strictly between 0 and 100.
  double density = 50.0;
  Distribution distribution = Distribution::kUniform;
  uint64_t num_queries = 1'000'000;
  uint64_t seed = 0x5eed;
  std::vector<QueryKind> query_kinds{std::begin(kAllQueryKinds), std::end(kAllQueryKinds)};

  /// Throws std::invalid_argument when n == 0 or density is outside (0, 100).
  void validate() const;
};

/// Pre-generated arguments for one query kind.
struct QueryList {
  QueryKind kind = QueryKind::kRank1;
  uint64_t seed = 0;
  std::vector<uint64_t> args;
};

/// Everything one benchmark run asks, materialized before any index exists.
struct QueryWorkload {
  uint64_t n = 0;
  double density = 0.0;
  Distribution distribution = Distribution::kUniform;
  uint64_t vector_seed = 0;
  std::vector<QueryList> lists;
};

/// SplitMix64 step; used to derive independent seeds from a master seed.
[[nodiscard]] uint64_t mix_seed(uint64_t seed, uint64_t stream) noexcept;

/// Each bit is one independently with probability density / 100.
[[nodiscard]] BitVector gen_uniform(uint64_t n, double density, uint64_t seed);

/// 99% of the ones fall uniformly into the last density% of the vector, 1%
/// uniformly into the remaining prefix.
[[nodiscard]] BitVector gen_adversarial(uint64_t n, double density, uint64_t seed);

[[nodiscard]] BitVector gen_vector(const WorkloadSpec& spec, uint64_t seed);

/// Rank arguments are uniform over [0, n]; select arguments uniform over
/// [1, count of the target bit]. Throws std::invalid_argument if a select
/// kind targets a bit value that does not occur.
[[nodiscard]] QueryList gen_queries(QueryKind kind, const BitVector& bv, uint64_t count, uint64_t seed);

[[nodiscard]] QueryWorkload gen_workload(const WorkloadSpec& spec, const BitVector& bv, uint64_t run_seed);

}  // namespace rankselect::harness
