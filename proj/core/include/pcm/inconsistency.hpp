#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "pcm/matrix.hpp"
#include "pcm/scale.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

/// Saaty's acceptability threshold for the consistency ratio.
inline constexpr double kAcceptableCr = 0.1;

/// CI values in [-kCiNoise, 0) are treated as rounding noise and clamped.
inline constexpr double kCiNoise = 1e-9;

/// Random index RI_n per matrix size for one scale.
class RandomIndexTable {
 public:
  /// Throws ValidationError unless every value is positive and the values
  /// are nondecreasing in n.
  RandomIndexTable(Scale scale, std::map<std::size_t, double> values,
                   std::optional<std::uint64_t> sample_size = std::nullopt);

  /// Published table for 4 <= n <= 9.
  static RandomIndexTable builtin(Scale scale);

  [[nodiscard]] Scale scale() const noexcept { return scale_; }
  [[nodiscard]] const std::map<std::size_t, double>& values() const noexcept {
    return values_;
  }
  [[nodiscard]] std::optional<std::uint64_t> sample_size() const noexcept {
    return sample_size_;
  }
  [[nodiscard]] bool contains(std::size_t n) const { return values_.contains(n); }
  /// Throws ConfigError when n is missing.
  [[nodiscard]] double at(std::size_t n) const;

 private:
  Scale scale_;
  std::map<std::size_t, double> values_;
  std::optional<std::uint64_t> sample_size_;
};

struct InconsistencyReport {
  std::size_t n = 0;
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  bool acceptable = true;
};

/// (lambda_max - n) / (n - 1) with the noise clamp applied.
[[nodiscard]] double consistency_index(double lambda_max, std::size_t n) noexcept;

/// CI of `a`; 0 for n = 2. Propagates ConvergenceError.
[[nodiscard]] double consistency_index(const PairwiseComparisonMatrix& a,
                                       const EigenOptions& options = {});

/// Throws ConfigError if the table has no entry for a.size().
[[nodiscard]] InconsistencyReport consistency_ratio(
    const PairwiseComparisonMatrix& a, const RandomIndexTable& table,
    const EigenOptions& options = {});

/// Mean CI of `samples` random n x n matrices drawn from `scale`. Sample s
/// uses generator substream s, and partial sums are combined in a fixed
/// order, so the result does not depend on `workers` (0 = all cores).
[[nodiscard]] double estimate_random_index(std::size_t n, Scale scale,
                                           std::uint64_t samples,
                                           std::uint64_t seed,
                                           unsigned workers = 0,
                                           const EigenOptions& options = {
                                               kBulkEigenTolerance,
                                               kDefaultMaxIterations});

}  // namespace pcm
