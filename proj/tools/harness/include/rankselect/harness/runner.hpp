#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rankselect/common.hpp"
#include "rankselect/harness/structures.hpp"
#include "rankselect/harness/workload.hpp"

namespace rankselect::harness {

struct BenchConfig {
  WorkloadSpec workload;
  std::vector<std::string> structures{"poppy", "flat", "wide"};
  std::vector<SearchStrategy> strategies{SearchStrategy::kLinear, SearchStrategy::kUniformBinary,
                                         SearchStrategy::kParallelCompare};
  uint32_t runs = 3;
  StructureOptions options;
  /// Replaces the generated vector in every run (workload replay).
  std::optional<BitVector> fixed_vector;
};

/// One CSV row. run_id is the run number, or "mean" for the average row.
struct BenchRecord {
  std::string run_id;
  std::string structure;
  /// "-" for rank rows and structures without search strategies.
  std::string strategy;
  QueryKind query_kind = QueryKind::kRank1;
  uint64_t n = 0;
  double density = 0.0;
  Distribution distribution = Distribution::kUniform;
  uint64_t seed = 0;
  double construction_seconds = 0.0;
  double ns_per_query = 0.0;
  uint64_t index_bytes = 0;
  /// Always 100 * index_bytes * 8 / n.
  double overhead_percent = 0.0;
  uint64_t checksum = 0;
  /// Rank rows of instrumented structures only.
  std::optional<double> l2_reads_per_query;
  std::optional<uint64_t> max_words_per_query;
};

/// Bytes of the index arrays, excluding the bit vector.
[[nodiscard]] uint64_t measure_space(const StructureAdapter& structure);

/// Per run: derive a run seed, generate the vector and all queries, then build
/// and time every structure on them. Returns every per-run row followed by one
/// mean row per (structure, strategy, query kind).
[[nodiscard]] std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

/// Column names, in output order.
[[nodiscard]] const std::vector<std::string>& csv_columns();
/// Columns whose values depend on wall-clock time.
[[nodiscard]] const std::vector<std::string>& timing_columns();

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace rankselect::harness
