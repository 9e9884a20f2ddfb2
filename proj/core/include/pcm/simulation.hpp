#pragma once

#include <cstdint>
#include <optional>

#include "pcm/generator.hpp"
#include "pcm/histogram.hpp"
#include "pcm/inconsistency.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

struct SimulationConfig {
  GeneratorConfig generator;
  std::uint64_t iterations = 0;
  double beta = 0.1;
  double factor = kDefaultPerturbationFactor;
  /// Matrices with CR >= check_cap are not audited and not binned; they only
  /// increase the histogram's skipped counter.
  std::optional<double> check_cap;
  /// Optional overflow bucket for the histogram.
  std::optional<double> overflow_at;
  double margin = kViolationMargin;
  EigenOptions eigen{kBulkEigenTolerance, kDefaultMaxIterations};
  WeightingMethod method = WeightingMethod::eigenvector;
  /// Defaults to the built-in table for the generator scale.
  std::optional<RandomIndexTable> ri_table;
  unsigned workers = 0;
};

/// Per iteration: draw matrix `ordinal`, compute its CR and weights, perturb
/// each upper entry by `factor`, and bin the matrix as violating if any
/// ratio w_i / w_k dropped beyond the margin. The violating matrix with the
/// smallest CR is kept. Iterations whose eigen solve fails are counted in
/// failures() and excluded from the bins.
///
/// Results are identical for any worker count.
[[nodiscard]] CrHistogram run_simulation(const SimulationConfig& config);

}  // namespace pcm
