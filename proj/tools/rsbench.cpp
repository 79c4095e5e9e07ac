// Benchmark driver: generates workloads, builds rank/select indexes, times
// queries and writes one CSV row per (run, structure, strategy, query kind).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rankselect/harness/runner.hpp"
#include "rankselect/serialize.hpp"

namespace rs = rankselect;
namespace harness = rankselect::harness;

int main(int argc, char** argv) {
  CLI::App app{"rank/select index benchmark"};

  uint64_t size = uint64_t{1} << 24;
  double density = 50.0;
  std::string distribution = "uniform";
  std::vector<std::string> structures{"poppy", "flat", "wide"};
  std::vector<std::string> strategies{"linear", "binary", "simd"};
  std::vector<std::string> kinds{"rank0", "rank1", "select0", "select1"};
  uint64_t queries = 1'000'000;
  uint32_t runs = 3;
  uint64_t seed = 0x5eed;
  std::string csv_path = "-";
  std::string samples = "both";
  bool with_l0 = false;
  std::string dump_vector;
  std::string replay;

  app.add_option("--size", size, "Bit vector length in bits")->check(CLI::PositiveNumber);
  app.add_option("--density", density, "Percent of ones, in (0, 100)");
  app.add_option("--distribution", distribution, "uniform | adversarial");
  app.add_option("--structures", structures, "Comma-separated list: poppy,flat,wide")->delimiter(',');
  app.add_option("--strategies", strategies, "Select search strategies: linear,binary,simd")->delimiter(',');
  app.add_option("--kinds", kinds, "Query kinds: rank0,rank1,select0,select1")->delimiter(',');
  app.add_option("--queries", queries, "Queries per kind and run");
  app.add_option("--runs", runs, "Independent runs (fresh vector and queries each)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--csv", csv_path, "Output CSV path, '-' for stdout");
  app.add_option("--samples", samples, "Select samples: ones | zeros | both | none");
  app.add_option("--with-l0", with_l0, "Build the optional L0 index of flat (true/false)");
  app.add_option("--dump-vector", dump_vector, "Write the run-0 bit vector to this file");
  app.add_option("--replay", replay, "Load the bit vector from this file instead of generating it");

  CLI11_PARSE(app, argc, argv);

  try {
    harness::BenchConfig config;
    config.workload.n = size;
    config.workload.density = density;
    config.workload.num_queries = queries;
    config.workload.seed = seed;
    const auto dist = harness::parse_distribution(distribution);
    if (!dist) {
      throw std::invalid_argument("unknown distribution '" + distribution + "' (valid: uniform, adversarial)");
    }
    config.workload.distribution = *dist;
    config.workload.query_kinds.clear();
    for (const std::string& k : kinds) {
      const auto kind = harness::parse_query_kind(k);
      if (!kind) {
        throw std::invalid_argument("unknown query kind '" + k + "' (valid: rank0, rank1, select0, select1)");
      }
      config.workload.query_kinds.push_back(*kind);
    }
    config.strategies.clear();
    for (const std::string& s : strategies) {
      const auto strategy = rs::parse_search_strategy(s);
      if (!strategy) {
        throw std::invalid_argument("unknown strategy '" + s + "' (valid: linear, binary, simd)");
      }
      config.strategies.push_back(*strategy);
    }
    const auto sample_cfg = rs::parse_sample_config(samples);
    if (!sample_cfg) {
      throw std::invalid_argument("unknown sample config '" + samples + "' (valid: ones, zeros, both, none)");
    }
    config.options = {*sample_cfg, with_l0};
    config.structures = structures;
    config.runs = runs;

    if (!replay.empty()) {
      config.fixed_vector = rs::load_bit_vector(replay);
      config.workload.n = config.fixed_vector->size();
    }
    if (!dump_vector.empty()) {
      const rs::BitVector bv = config.fixed_vector
                                   ? *config.fixed_vector
                                   : harness::gen_vector(config.workload, harness::mix_seed(seed, 0));
      rs::save_bit_vector(bv, dump_vector);
    }

    const auto records = harness::run_benchmark(config);
    if (csv_path == "-") {
      harness::write_csv(std::cout, records);
    } else {
      std::ofstream out(csv_path, std::ios::trunc);
      if (!out) {
        throw std::runtime_error("cannot open " + csv_path + " for writing");
      }
      harness::write_csv(out, records);
      if (!out) {
        throw std::runtime_error("failed writing " + csv_path);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "rsbench: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
