#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankselect/bit_vector.hpp"
#include "rankselect/common.hpp"
#include "rankselect/harness/workload.hpp"

namespace rankselect::harness {

/// Options shared by every structure the harness builds.
struct StructureOptions {
  SampleConfig samples = SampleConfig::kBoth;
  bool with_l0 = false;
};

/// Adapter seam between the benchmark runner and a rank/select structure.
///
/// Third-party structures plug in by implementing this interface and calling
/// register_structure(). The query loop lives inside the adapter so the timed
/// phase makes no virtual calls per query.
class StructureAdapter {
 public:
  virtual ~StructureAdapter() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual bool supports(QueryKind kind) const = 0;
  /// Whether select queries depend on a SearchStrategy.
  [[nodiscard]] virtual bool uses_strategies() const = 0;

  /// Builds over bv; bv must outlive the adapter's use.
  virtual void build(const BitVector& bv) = 0;

  /// Answers every query in order and folds the results into a checksum.
  [[nodiscard]] virtual uint64_t run(QueryKind kind, std::span<const uint64_t> args,
                                     SearchStrategy strategy) const = 0;

  /// Untimed rank1 pass with memory-access counters, if the structure has one.
  [[nodiscard]] virtual std::optional<AccessStats> instrumented_rank(std::span<const uint64_t> args) const {
    (void)args;
    return std::nullopt;
  }

  [[nodiscard]] virtual SpaceBreakdown space() const = 0;
};

/// Checksum step shared by all adapters: order-sensitive weighted sum.
[[nodiscard]] constexpr uint64_t fold_result(uint64_t checksum, uint64_t query_index, uint64_t result) noexcept {
  return checksum + (result + 1) * (2 * query_index + 1);
}

using StructureFactory = std::function<std::unique_ptr<StructureAdapter>(const StructureOptions&)>;

/// Built-in names: "poppy", "flat", "wide".
[[nodiscard]] std::vector<std::string> structure_names();

/// Throws std::invalid_argument listing the valid names when `name` is unknown.
[[nodiscard]] std::unique_ptr<StructureAdapter> make_structure(const std::string& name,
                                                               const StructureOptions& options);

void register_structure(const std::string& name, StructureFactory factory);

}  // namespace rankselect::harness
