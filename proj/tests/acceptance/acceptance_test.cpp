// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rankselect/flat.hpp"
#include "rankselect/harness/runner.hpp"
#include "rankselect/harness/workload.hpp"
#include "rankselect/oracle.hpp"
#include "rankselect/poppy.hpp"
#include "rankselect/wide.hpp"

namespace {

using namespace rankselect;
using harness::Distribution;

constexpr SearchStrategy kStrategies[] = {SearchStrategy::kLinear, SearchStrategy::kUniformBinary,
                                          SearchStrategy::kParallelCompare};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first mismatch only.
class Checker {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what();
    }
  }
  [[nodiscard]] bool failed() const { return !outcome_.pass; }
  [[nodiscard]] Outcome finish(const std::string& summary) {
    if (outcome_.pass) {
      outcome_.detail = summary + ", " + std::to_string(checks_) + " checks";
    }
    return outcome_;
  }

 private:
  Outcome outcome_;
  uint64_t checks_ = 0;
};

std::string describe(uint64_t n, double density, Distribution d, uint64_t seed) {
  std::ostringstream out;
  out << "n=" << n << " density=" << density << " " << harness::to_string(d) << " seed=" << seed;
  return out.str();
}

BitVector harness_vector(uint64_t n, double density, Distribution d, uint64_t seed) {
  harness::WorkloadSpec spec;
  spec.n = n;
  spec.density = density;
  spec.distribution = d;
  return harness::gen_vector(spec, seed);
}

// Rank and select of every structure against the oracle. Exhaustive for
// n <= 2^16, otherwise `sampled` random queries per kind.
template <typename Index, typename Select>
void check_structure(Checker& c, const char* name, const Index& idx, const BitVector& bv,
                     const std::vector<uint64_t>& rank_table, const std::array<std::vector<uint64_t>, 2>& positions,
                     Select&& select, std::mt19937_64& rng, const std::string& where) {
  const uint64_t n = bv.size();
  const bool exhaustive = n <= (uint64_t{1} << 16);
  const uint64_t rank_queries = exhaustive ? n + 1 : 10'000;
  for (uint64_t q = 0; q < rank_queries && !c.failed(); ++q) {
    const uint64_t i = exhaustive ? q : rng() % (n + 1);
    const uint64_t r1 = idx.rank1(i);
    c.expect(r1 == rank_table[i], [&] { return where + " " + name + " rank1(" + std::to_string(i) + ")"; });
    c.expect(idx.rank0(i) == i - rank_table[i],
             [&] { return where + " " + name + " rank0(" + std::to_string(i) + ")"; });
  }
  for (const bool alpha : {false, true}) {
    const auto& pos = positions[alpha];
    if (pos.empty()) {
      continue;
    }
    const uint64_t select_queries = exhaustive ? pos.size() : 10'000;
    for (uint64_t q = 0; q < select_queries && !c.failed(); ++q) {
      const uint64_t j = exhaustive ? q + 1 : 1 + rng() % pos.size();
      select(alpha, j, pos[j - 1]);
    }
  }
}

Outcome oracle_equivalence(SampleConfig samples, bool ones_counters_only) {
  Checker c;
  const std::vector<uint64_t> sizes{1, 63, 64, 65, 511, 512, 513, uint64_t{1} << 16, uint64_t{1} << 20};
  const double densities[] = {1, 10, 50, 90, 99};
  std::mt19937_64 rng(0xacce97);
  uint64_t vectors = 0;
  for (const uint64_t n : sizes) {
    for (const double density : densities) {
      for (const Distribution d : {Distribution::kUniform, Distribution::kAdversarial}) {
        for (uint64_t seed = 1; seed <= 5; ++seed) {
          if (c.failed()) {
            return c.finish("");
          }
          const BitVector bv = harness_vector(n, density, d, harness::mix_seed(seed, n));
          ++vectors;
          const auto ranks = oracle::naive_rank_table(bv, true);
          const std::array<std::vector<uint64_t>, 2> positions{oracle::naive_select_table(bv, false),
                                                               oracle::naive_select_table(bv, true)};

          const PoppyIndex poppy(bv, samples);
          const std::string where = describe(n, density, d, seed);
          check_structure(c, "poppy", poppy, bv, ranks, positions, [&](bool alpha, uint64_t j, uint64_t expected) {
            c.expect(poppy.select(alpha, j) == expected, [&] {
              return where + " poppy select" + std::to_string(alpha) + "(" + std::to_string(j) + ")";
            });
          }, rng, where);

          for (const bool with_l0 : {false, true}) {
            if (ones_counters_only && with_l0) {
              continue;
            }
            const FlatIndex flat(bv, {with_l0, samples, SearchStrategy::kParallelCompare});
            check_structure(c, "flat", flat, bv, ranks, positions, [&](bool alpha, uint64_t j, uint64_t expected) {
              for (const SearchStrategy s : kStrategies) {
                c.expect(flat.select(alpha, j, s) == expected, [&] {
                  return where + " flat/" + std::string(to_string(s)) + " select" + std::to_string(alpha) + "(" +
                         std::to_string(j) + ")";
                });
              }
            }, rng, where);
          }

          const WideIndex wide(bv, samples);
          check_structure(c, "wide", wide, bv, ranks, positions, [&](bool alpha, uint64_t j, uint64_t expected) {
            for (const SearchStrategy s : kStrategies) {
              c.expect(wide.select(alpha, j, s) == expected, [&] {
                return where + " wide/" + std::string(to_string(s)) + " select" + std::to_string(alpha) + "(" +
                       std::to_string(j) + ")";
              });
            }
          }, rng, where);
        }
      }
    }
  }
  return c.finish(std::to_string(vectors) + " vectors");
}

Outcome space_formulas() {
  Checker c;
  std::ostringstream summary;
  for (uint64_t n = uint64_t{1} << 20; n <= (uint64_t{1} << 26); n *= 4) {
    for (const uint64_t extra : {uint64_t{0}, uint64_t{4096} * 3}) {
      const uint64_t size = n + extra;
      const BitVector bv = harness_vector(size, 50, Distribution::kUniform, size);
      const FlatIndex flat(bv, {false, SampleConfig::kNone, SearchStrategy::kParallelCompare});
      const uint64_t bits = flat.space().total_bytes() * 8;
      // 3.125% == 1/32, checked in integers.
      c.expect(bits * 32 == size, [&] { return "flat rank-only n=" + std::to_string(size) + " bits=" +
                                               std::to_string(bits); });
    }
  }
  for (uint64_t blocks = 16; blocks <= 1024; blocks *= 4) {
    const uint64_t size = blocks * WideIndex::kL1Bits;
    const BitVector bv = harness_vector(size, 50, Distribution::kUniform, blocks);
    const double overhead = WideIndex(bv).space().overhead_percent(size);
    c.expect(std::abs(overhead - 3.198) <= 0.01, [&] { return "wide overhead " + std::to_string(overhead); });
    summary << "wide " << overhead << "% ";
  }
  {
    const uint64_t size = uint64_t{1} << 26;
    const BitVector bv = harness_vector(size, 50, Distribution::kUniform, 26);
    for (const SampleConfig cfg : {SampleConfig::kOnes, SampleConfig::kZeros}) {
      const double overhead = FlatIndex(bv, {false, cfg, SearchStrategy::kParallelCompare}).space().overhead_percent(size);
      c.expect(overhead <= 3.6 && std::abs(overhead - 3.58) <= 0.3,
               [&] { return "flat with samples overhead " + std::to_string(overhead); });
      summary << "flat+" << to_string(cfg) << " " << overhead << "% ";
    }
  }
  summary << "flat rank-only 3.125%";
  return c.finish(summary.str());
}

// Seven cumulative 12-bit fields with per-block counts in [0, 512].
std::array<uint16_t, 7> random_cumulative7(std::mt19937_64& rng, uint32_t& total) {
  std::array<uint16_t, 7> fields{};
  uint32_t running = 0;
  for (auto& f : fields) {
    const uint64_t pick = rng() % 6;
    running += pick == 0 ? 0 : pick == 1 ? 512 : static_cast<uint32_t>(rng() % 513);
    f = static_cast<uint16_t>(running);
  }
  total = running + static_cast<uint32_t>(rng() % 513);
  return fields;
}

FlatL12Entry entry_from(const std::array<uint16_t, 7>& fields, uint64_t l1) {
  std::array<uint32_t, 7> wide{};
  std::copy(fields.begin(), fields.end(), wide.begin());
  return FlatL12Entry::make(l1, wide);
}

Outcome binary_search_cost() {
  Checker c;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10'000; ++t) {
    uint32_t total = 0;
    const FlatL12Entry e = entry_from(random_cumulative7(rng, total), rng() & FlatL12Entry::kL1Mask);
    const bool ones = (t & 1) != 0;
    const uint32_t limit = ones ? total : 4096 - total;
    if (limit == 0) {
      continue;
    }
    const uint64_t r = 1 + rng() % limit;
    uint32_t comparisons = 0;
    auto counting = [&comparisons](auto a, auto b) {
      ++comparisons;
      return a < b;
    };
    const uint32_t k = ones ? search_l2_binary<true>(e, r, counting) : search_l2_binary<false>(e, r, counting);
    c.expect(comparisons == 3, [&] { return std::to_string(comparisons) + " comparisons, r=" + std::to_string(r); });
    c.expect(k < 8, [&] { return "block index " + std::to_string(k); });
  }
  return c.finish("3 comparisons per call");
}

Outcome strategy_agreement() {
  Checker c;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 1'000'000 && !c.failed(); ++t) {
    uint32_t total = 0;
    const FlatL12Entry e = entry_from(random_cumulative7(rng, total), rng() & FlatL12Entry::kL1Mask);
    const bool ones = (t & 1) != 0;
    const uint32_t limit = ones ? total : 4096 - total;
    if (limit == 0) {
      continue;
    }
    const uint64_t r = 1 + rng() % limit;
    std::array<uint32_t, 3> got{};
    if (ones) {
      got = {search_l2_linear<true>(e, r), search_l2_binary<true>(e, r), search_l2_parallel<true>(e, r)};
    } else {
      got = {search_l2_linear<false>(e, r), search_l2_binary<false>(e, r), search_l2_parallel<false>(e, r)};
    }
    c.expect(got[0] == got[1] && got[1] == got[2], [&] {
      return "7-tuple r=" + std::to_string(r) + " linear=" + std::to_string(got[0]) + " binary=" +
             std::to_string(got[1]) + " parallel=" + std::to_string(got[2]);
    });
  }
  std::array<uint16_t, 127> entries{};
  for (int t = 0; t < 100'000 && !c.failed(); ++t) {
    uint32_t running = 0;
    for (auto& v : entries) {
      const uint64_t pick = rng() % 6;
      running += pick == 0 ? 0 : pick == 1 ? 512 : static_cast<uint32_t>(rng() % 513);
      v = static_cast<uint16_t>(running);
    }
    const uint32_t total = running + static_cast<uint32_t>(rng() % 513);
    const bool ones = (t & 1) != 0;
    const uint32_t limit = ones ? total : 65536 - total;
    if (limit == 0) {
      continue;
    }
    const uint64_t r = 1 + rng() % limit;
    const WideL2Span span(entries);
    std::array<uint32_t, 3> got{};
    if (ones) {
      got = {search_wide_linear<true>(span, r), search_wide_binary<true>(span, r), search_wide_parallel<true>(span, r)};
    } else {
      got = {search_wide_linear<false>(span, r), search_wide_binary<false>(span, r),
             search_wide_parallel<false>(span, r)};
    }
    c.expect(got[0] == got[1] && got[1] == got[2], [&] {
      return "127-tuple r=" + std::to_string(r) + " linear=" + std::to_string(got[0]) + " binary=" +
             std::to_string(got[1]) + " parallel=" + std::to_string(got[2]);
    });
  }
  return c.finish("10^6 7-tuples, 10^5 127-tuples");
}

Outcome unpack_identity() {
  Checker c;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100'000 && !c.failed(); ++t) {
    std::array<uint16_t, 7> fields{};
    uint128_t packed = 0;
    for (uint32_t k = 0; k < 7; ++k) {
      fields[k] = static_cast<uint16_t>(rng() & 0xFFF);
      packed |= static_cast<uint128_t>(fields[k]) << (12 * k);
    }
    const auto lanes = unpack_12_to_16(packed);
    const auto scalar = unpack_12_to_16_scalar(packed);
    for (uint32_t k = 0; k < 7; ++k) {
      c.expect(lanes[k] == fields[k] && scalar[k] == fields[k], [&] { return "lane " + std::to_string(k); });
    }
    c.expect(lanes[7] == 0, [] { return std::string("lane 7 not zero"); });
  }
  return c.finish("10^5 tuples");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] size_t column(const std::string& name) const {
    return static_cast<size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  }
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

CsvTable read_csv(const std::filesystem::path& path) {
  CsvTable table;
  std::ifstream in(path);
  std::string line;
  if (std::getline(in, line)) {
    table.header = split_line(line);
  }
  while (std::getline(in, line)) {
    table.rows.push_back(split_line(line));
  }
  return table;
}

bool run_cli(const std::string& flags, const std::filesystem::path& csv) {
  const std::string command = std::string(RSBENCH_PATH) + " " + flags + " --csv " + csv.string();
  return std::system(command.c_str()) == 0;
}

Outcome cli_benchmark(std::vector<std::string>& warnings) {
  Checker c;
  const auto csv = std::filesystem::temp_directory_path() / "rankselect_acceptance_bench.csv";
  const uint64_t n = uint64_t{1} << 26;
  const bool ran = run_cli("--size " + std::to_string(n) +
                               " --density 50 --distribution uniform --queries 1000000 --runs 1 --seed 7",
                           csv);
  c.expect(ran, [] { return std::string("rsbench exited nonzero"); });
  if (!ran) {
    return c.finish("");
  }
  const CsvTable table = read_csv(csv);
  std::filesystem::remove(csv);
  c.expect(table.header == harness::csv_columns(), [] { return std::string("unexpected CSV header"); });
  c.expect(!table.rows.empty(), [] { return std::string("no CSV rows"); });
  if (c.failed()) {
    return c.finish("");
  }
  const size_t run_col = table.column("run_id");
  const size_t structure_col = table.column("structure");
  const size_t kind_col = table.column("query_kind");
  const size_t checksum_col = table.column("checksum");
  const size_t l2_col = table.column("l2_reads_per_query");
  const size_t construction_col = table.column("construction_seconds");

  std::map<std::string, std::string> checksum_by_kind;
  double slowest_construction = 0;
  bool saw_flat_rank = false;
  for (const auto& row : table.rows) {
    c.expect(row.size() == table.header.size(), [&] { return "row has " + std::to_string(row.size()) + " fields"; });
    if (c.failed()) {
      break;
    }
    if (row[run_col] == "mean") {
      continue;
    }
    auto [it, inserted] = checksum_by_kind.emplace(row[kind_col], row[checksum_col]);
    c.expect(it->second == row[checksum_col],
             [&] { return row[structure_col] + " " + row[kind_col] + " checksum differs"; });
    if (row[structure_col] == "flat" && row[kind_col] == "rank1") {
      saw_flat_rank = true;
      c.expect(!row[l2_col].empty() && std::stod(row[l2_col]) == 1.0,
               [&] { return "flat rank l2 reads per query: " + row[l2_col]; });
    }
    slowest_construction = std::max(slowest_construction, std::stod(row[construction_col]));
  }
  c.expect(saw_flat_rank, [] { return std::string("no flat rank1 row"); });

  // Library-side counter on the same workload shape.
  const BitVector bv = harness_vector(n, 50, Distribution::kUniform, 7);
  const FlatIndex flat(bv);
  AccessStats stats;
  std::mt19937_64 rng(8);
  for (int q = 0; q < 100'000; ++q) {
    (void)flat.rank1(rng() % n, stats);
  }
  c.expect(stats.l12_entries == stats.queries && stats.l2_fields == stats.queries,
           [&] { return "library counter: " + std::to_string(stats.l2_fields) + " L2 reads"; });

  const double gib_per_second = static_cast<double>(n / 8) / slowest_construction / (1 << 30);
  if (gib_per_second <= 1.0) {
    warnings.push_back("construction throughput " + std::to_string(gib_per_second) + " GiB/s is below 1 GiB/s");
  }
  std::ostringstream summary;
  summary << table.rows.size() << " rows, slowest construction " << gib_per_second << " GiB/s";
  return c.finish(summary.str());
}

Outcome cli_determinism() {
  Checker c;
  const auto dir = std::filesystem::temp_directory_path();
  const auto first = dir / "rankselect_acceptance_det1.csv";
  const auto second = dir / "rankselect_acceptance_det2.csv";
  const std::string flags = "--size 3000000 --density 30 --distribution adversarial --queries 200000 --runs 2 --seed 99";
  const bool ran = run_cli(flags, first) && run_cli(flags, second);
  c.expect(ran, [] { return std::string("rsbench exited nonzero"); });
  if (!ran) {
    return c.finish("");
  }
  const CsvTable a = read_csv(first);
  const CsvTable b = read_csv(second);
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  std::vector<bool> timing(a.header.size(), false);
  for (const std::string& name : harness::timing_columns()) {
    const size_t col = a.column(name);
    if (col < timing.size()) {
      timing[col] = true;
    }
  }
  c.expect(a.header == b.header && a.rows.size() == b.rows.size(), [] { return std::string("shape differs"); });
  for (size_t r = 0; r < a.rows.size() && !c.failed(); ++r) {
    c.expect(a.rows[r].size() == b.rows[r].size(), [&] { return "row " + std::to_string(r) + " width"; });
    for (size_t col = 0; col < a.rows[r].size() && col < b.rows[r].size(); ++col) {
      if (!timing[col]) {
        c.expect(a.rows[r][col] == b.rows[r][col],
                 [&] { return "row " + std::to_string(r) + " column " + a.header[col] + " differs"; });
      }
    }
  }
  return c.finish(std::to_string(a.rows.size()) + " rows identical outside timing columns");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<std::string> warnings;
  const std::vector<Criterion> criteria{
      {"oracle equivalence", [] { return oracle_equivalence(SampleConfig::kBoth, false); }},
      {"space formulas", space_formulas},
      {"uniform binary search cost", binary_search_cost},
      {"strategy agreement", strategy_agreement},
      {"unpack identity", unpack_identity},
      {"zero side from ones counters", [] { return oracle_equivalence(SampleConfig::kOnes, true); }},
      {"benchmark CLI at 2^26", [&warnings] { return cli_benchmark(warnings); }},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += outcome.pass ? 0 : 1;
    std::printf("%s %zu %s: %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  for (const std::string& w : warnings) {
    std::printf("WARN %s\n", w.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
