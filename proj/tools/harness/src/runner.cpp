#include "rankselect/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

namespace rankselect::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double overhead_of(uint64_t bytes, uint64_t n) {
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(bytes) * 8.0 / static_cast<double>(n);
}

std::string format_double(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

BenchRecord make_record(const BenchConfig& config, uint64_t n, std::string run_id, uint64_t seed,
                        const std::string& structure, const std::string& strategy, QueryKind kind) {
  BenchRecord record;
  record.run_id = std::move(run_id);
  record.structure = structure;
  record.strategy = strategy;
  record.query_kind = kind;
  record.n = n;
  record.density = config.workload.density;
  record.distribution = config.workload.distribution;
  record.seed = seed;
  return record;
}

std::vector<BenchRecord> mean_rows(const BenchConfig& config, const std::vector<BenchRecord>& per_run) {
  struct Accumulator {
    const BenchRecord* first = nullptr;
    uint32_t count = 0;
    double construction = 0;
    double ns = 0;
    double bytes = 0;
    uint64_t checksum = 0;
    double l2_reads = 0;
    uint64_t max_words = 0;
  };
  std::map<std::tuple<std::string, std::string, QueryKind>, Accumulator> groups;
  std::vector<std::tuple<std::string, std::string, QueryKind>> order;
  for (const BenchRecord& r : per_run) {
    const auto key = std::make_tuple(r.structure, r.strategy, r.query_kind);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      it->second.first = &r;
    }
    Accumulator& acc = it->second;
    ++acc.count;
    acc.construction += r.construction_seconds;
    acc.ns += r.ns_per_query;
    acc.bytes += static_cast<double>(r.index_bytes);
    acc.checksum += r.checksum;
    acc.l2_reads += r.l2_reads_per_query.value_or(0.0);
    acc.max_words = std::max(acc.max_words, r.max_words_per_query.value_or(0));
  }
  std::vector<BenchRecord> rows;
  for (const auto& key : order) {
    const Accumulator& acc = groups.at(key);
    BenchRecord row = make_record(config, acc.first->n, "mean", config.workload.seed, acc.first->structure,
                                  acc.first->strategy, acc.first->query_kind);
    row.construction_seconds = acc.construction / acc.count;
    row.ns_per_query = acc.ns / acc.count;
    row.index_bytes = static_cast<uint64_t>(std::llround(acc.bytes / acc.count));
    row.overhead_percent = overhead_of(row.index_bytes, row.n);
    row.checksum = acc.checksum;
    if (acc.first->l2_reads_per_query) {
      row.l2_reads_per_query = acc.l2_reads / acc.count;
      row.max_words_per_query = acc.max_words;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

uint64_t measure_space(const StructureAdapter& structure) { return structure.space().total_bytes(); }

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  if (!config.fixed_vector) {
    config.workload.validate();
  }
  if (config.runs == 0) {
    throw std::invalid_argument("at least one run is required");
  }
  if (config.strategies.empty()) {
    throw std::invalid_argument("at least one search strategy is required");
  }
  // Fail on unknown names before spending time on generation.
  std::vector<std::unique_ptr<StructureAdapter>> structures;
  for (const std::string& name : config.structures) {
    structures.push_back(make_structure(name, config.options));
  }

  std::vector<BenchRecord> records;
  for (uint32_t run = 0; run < config.runs; ++run) {
    const uint64_t run_seed = mix_seed(config.workload.seed, run);
    const BitVector bv = config.fixed_vector ? *config.fixed_vector : gen_vector(config.workload, run_seed);
    const QueryWorkload workload = gen_workload(config.workload, bv, run_seed);
    const uint64_t n = bv.size();

    for (auto& structure : structures) {
      const auto build_start = Clock::now();
      structure->build(bv);
      const double construction = seconds_since(build_start);
      const uint64_t bytes = measure_space(*structure);

      for (const QueryList& list : workload.lists) {
        if (!structure->supports(list.kind)) {
          continue;
        }
        std::vector<std::string> strategy_labels;
        std::vector<SearchStrategy> strategies;
        if (is_select(list.kind) && structure->uses_strategies()) {
          for (const SearchStrategy s : config.strategies) {
            strategy_labels.emplace_back(to_string(s));
            strategies.push_back(s);
          }
        } else {
          strategy_labels.emplace_back("-");
          strategies.push_back(config.strategies.front());
        }
        for (size_t s = 0; s < strategies.size(); ++s) {
          BenchRecord record = make_record(config, n, std::to_string(run), run_seed, structure->name(),
                                           strategy_labels[s], list.kind);
          const auto query_start = Clock::now();
          record.checksum = structure->run(list.kind, list.args, strategies[s]);
          const double query_seconds = seconds_since(query_start);
          record.construction_seconds = construction;
          record.ns_per_query =
              list.args.empty() ? 0.0 : query_seconds * 1e9 / static_cast<double>(list.args.size());
          record.index_bytes = bytes;
          record.overhead_percent = overhead_of(bytes, n);
          if (!is_select(list.kind)) {
            if (const auto stats = structure->instrumented_rank(list.args)) {
              record.l2_reads_per_query =
                  stats->queries == 0 ? 0.0
                                      : static_cast<double>(stats->l2_fields) / static_cast<double>(stats->queries);
              record.max_words_per_query = stats->max_words_per_query;
            }
          }
          records.push_back(std::move(record));
        }
      }
    }
  }
  auto means = mean_rows(config, records);
  records.insert(records.end(), std::make_move_iterator(means.begin()), std::make_move_iterator(means.end()));
  return records;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{
      "run_id",         "structure",      "strategy",          "query_kind",          "n",
      "density",        "distribution",   "seed",              "construction_seconds", "ns_per_query",
      "index_bytes",    "overhead_percent", "checksum",        "l2_reads_per_query",  "max_words_per_query"};
  return columns;
}

const std::vector<std::string>& timing_columns() {
  static const std::vector<std::string> columns{"construction_seconds", "ns_per_query"};
  return columns;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  const auto& columns = csv_columns();
  for (size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << '\n';
  for (const BenchRecord& r : records) {
    out << r.run_id << ',' << r.structure << ',' << r.strategy << ',' << to_string(r.query_kind) << ',' << r.n << ','
        << format_double("%g", r.density) << ',' << to_string(r.distribution) << ',' << r.seed << ','
        << format_double("%.9f", r.construction_seconds) << ',' << format_double("%.3f", r.ns_per_query) << ','
        << r.index_bytes << ',' << format_double("%.6f", r.overhead_percent) << ',' << r.checksum << ','
        << (r.l2_reads_per_query ? format_double("%.6f", *r.l2_reads_per_query) : "") << ','
        << (r.max_words_per_query ? std::to_string(*r.max_words_per_query) : "") << '\n';
  }
}

}  // namespace rankselect::harness
