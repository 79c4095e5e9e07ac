#include "rankselect/harness/structures.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "rankselect/flat.hpp"
#include "rankselect/poppy.hpp"
#include "rankselect/wide.hpp"

namespace rankselect::harness {
namespace {

// Index must provide rank1/rank0/select(alpha, j, strategy) (or select(alpha, j)).
template <typename Index>
class IndexAdapter final : public StructureAdapter {
 public:
  using Builder = std::function<Index(const BitVector&)>;

  IndexAdapter(std::string name, bool uses_strategies, Builder builder)
      : name_(std::move(name)), uses_strategies_(uses_strategies), builder_(std::move(builder)) {}

  std::string name() const override { return name_; }
  bool supports(QueryKind) const override { return true; }
  bool uses_strategies() const override { return uses_strategies_; }

  void build(const BitVector& bv) override { index_ = builder_(bv); }

  uint64_t run(QueryKind kind, std::span<const uint64_t> args, SearchStrategy strategy) const override {
    switch (kind) {
      case QueryKind::kRank0: return loop(args, [this](uint64_t i) { return index_.rank0(i); });
      case QueryKind::kRank1: return loop(args, [this](uint64_t i) { return index_.rank1(i); });
      case QueryKind::kSelect0: return run_select<false>(args, strategy);
      case QueryKind::kSelect1: return run_select<true>(args, strategy);
    }
    return 0;
  }

  std::optional<AccessStats> instrumented_rank(std::span<const uint64_t> args) const override {
    AccessStats stats;
    for (const uint64_t i : args) {
      (void)index_.rank1(i, stats);
    }
    return stats;
  }

  SpaceBreakdown space() const override { return index_.space(); }

 private:
  template <typename Query>
  static uint64_t loop(std::span<const uint64_t> args, Query&& query) {
    uint64_t checksum = 0;
    for (uint64_t q = 0; q < args.size(); ++q) {
      checksum = fold_result(checksum, q, query(args[q]));
    }
    return checksum;
  }

  template <bool kOnes>
  uint64_t run_select(std::span<const uint64_t> args, SearchStrategy strategy) const {
    if constexpr (requires { index_.select(kOnes, 1, strategy); }) {
      return loop(args, [this, strategy](uint64_t j) { return index_.select(kOnes, j, strategy); });
    } else {
      return loop(args, [this](uint64_t j) { return index_.select(kOnes, j); });
    }
  }

  std::string name_;
  bool uses_strategies_;
  Builder builder_;
  Index index_;
};

std::map<std::string, StructureFactory>& registry() {
  static std::map<std::string, StructureFactory> factories = [] {
    std::map<std::string, StructureFactory> builtin;
    builtin["poppy"] = [](const StructureOptions& o) {
      return std::make_unique<IndexAdapter<PoppyIndex>>(
          "poppy", false, [samples = o.samples](const BitVector& bv) { return PoppyIndex(bv, samples); });
    };
    builtin["flat"] = [](const StructureOptions& o) {
      const FlatConfig cfg{o.with_l0, o.samples, SearchStrategy::kParallelCompare};
      return std::make_unique<IndexAdapter<FlatIndex>>("flat", true,
                                                       [cfg](const BitVector& bv) { return FlatIndex(bv, cfg); });
    };
    builtin["wide"] = [](const StructureOptions& o) {
      return std::make_unique<IndexAdapter<WideIndex>>(
          "wide", true, [samples = o.samples](const BitVector& bv) { return WideIndex(bv, samples); });
    };
    return builtin;
  }();
  return factories;
}

std::mutex& registry_mutex() {
  static std::mutex mutex;
  return mutex;
}

}  // namespace

std::vector<std::string> structure_names() {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) {
    names.push_back(name);
  }
  return names;
}

std::unique_ptr<StructureAdapter> make_structure(const std::string& name, const StructureOptions& options) {
  StructureFactory factory;
  {
    std::lock_guard lock(registry_mutex());
    const auto it = registry().find(name);
    if (it == registry().end()) {
      std::string valid;
      for (const auto& [known, unused] : registry()) {
        valid += valid.empty() ? known : ", " + known;
      }
      throw std::invalid_argument("unknown structure '" + name + "' (valid: " + valid + ")");
    }
    factory = it->second;
  }
  return factory(options);
}

void register_structure(const std::string& name, StructureFactory factory) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(factory);
}

}  // namespace rankselect::harness
