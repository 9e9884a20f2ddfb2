#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "pcm/histogram.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

/// 17^6: every 4 x 4 matrix whose upper entries come from the Saaty scale.
inline constexpr std::uint64_t kN4DiscreteCount = 24'137'569;
inline constexpr std::uint64_t kCheckpointInterval = 1'000'000;

/// Upper entries of the matrix at lexicographic position `index`. The six
/// entries a12, a13, a14, a23, a24, a34 are base-17 digits (a12 most
/// significant) indexing kSaatyScale in increasing order.
[[nodiscard]] std::array<double, 6> n4_discrete_upper(std::uint64_t index);
[[nodiscard]] PairwiseComparisonMatrix n4_discrete_matrix(std::uint64_t index);

struct EnumerationConfig {
  double beta = 0.1;
  std::vector<double> factors{kDefaultPerturbationFactor};
  std::optional<double> overflow_at;
  double margin = kViolationMargin;
  EigenOptions eigen{kBulkEigenTolerance, kDefaultMaxIterations};
  /// Visits indices begin, begin + stride, ... below end.
  std::uint64_t begin = 0;
  std::uint64_t end = kN4DiscreteCount;
  std::uint64_t stride = 1;
  unsigned workers = 0;
  /// When set, progress is saved here every checkpoint_every matrices and an
  /// existing file with a matching config is resumed from.
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t checkpoint_every = kCheckpointInterval;
  /// Called after each checkpoint batch with (visited, total to visit).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct EnumerationResult {
  /// One histogram per entry of config.factors, same order.
  std::vector<CrHistogram> histograms;
  /// Matrices visited (including any eigen failures).
  std::uint64_t visited = 0;
  /// Whether the run started from a checkpoint.
  bool resumed = false;
};

/// Exhaustive sweep of 4 x 4 discrete matrices. CR uses the built-in
/// discrete RI_4; each matrix is audited once per factor with the
/// eigenvector method.
[[nodiscard]] EnumerationResult enumerate_n4_discrete(
    const EnumerationConfig& config);

}  // namespace pcm
