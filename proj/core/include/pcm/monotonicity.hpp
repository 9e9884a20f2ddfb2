#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/matrix.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

/// Relative decrease a weight ratio must exceed to count as a violation.
/// Sits far below the effect sizes seen in real counterexamples (~1e-7) and
/// far above power-iteration error at kEigenTolerance.
inline constexpr double kViolationMargin = 1e-9;

enum class WeightingMethod { eigenvector, row_geometric_mean };

[[nodiscard]] std::string_view to_string(WeightingMethod method) noexcept;
/// Accepts "eigenvector"/"em" and "row_geometric_mean"/"rgm".
[[nodiscard]] WeightingMethod parse_method(std::string_view text);

/// Indices are 0-based; serialized forms use 1-based labels.
struct ViolationRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double ratio_before = 0.0;  ///< w_i / w_k on A
  double ratio_after = 0.0;   ///< w_i / w_k on A with a_ij scaled
  double factor = 0.0;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

struct EntryIndex {
  std::size_t i = 0;
  std::size_t j = 0;

  friend auto operator<=>(const EntryIndex&, const EntryIndex&) = default;
};

struct MonotonicityReport {
  std::string matrix_hash;
  WeightingMethod method = WeightingMethod::eigenvector;
  double factor = 0.0;
  double margin = kViolationMargin;
  double eigen_tol = kEigenTolerance;
  /// Sorted by (i, j, k).
  std::vector<ViolationRecord> violations;
  /// Entries whose increase lowered the normalized weight w_i itself.
  std::vector<EntryIndex> weak_violations;

  [[nodiscard]] bool monotonic() const noexcept { return violations.empty(); }
};

/// 64-bit FNV-1a over "n:" followed by the upper triangle rendered with
/// "%.17g" and comma-separated, as 16 lowercase hex digits.
[[nodiscard]] std::string matrix_digest(const PairwiseComparisonMatrix& a);

/// Perturbs every upper entry of a matrix in turn and compares weight ratios
/// against the unperturbed weights. Holds scratch buffers so it can be
/// reused across millions of matrices; not thread-safe.
class PerturbationScanner {
 public:
  PerturbationScanner(WeightingMethod method, EigenOptions eigen,
                      double margin = kViolationMargin);

  /// Weights of the matrix given by row-major `entries` into `w`. Returns
  /// false if power iteration did not converge.
  bool weights(std::span<const double> entries, std::size_t n,
               std::span<double> w, double* lambda_max = nullptr);

  /// Weights of `entries` with a_ij multiplied by `factor` (and a_ji divided).
  /// The eigen solve is warm-started from `base`. Returns false on
  /// non-convergence.
  bool perturbed_weights(std::span<const double> entries, std::size_t n,
                         std::span<const double> base, std::size_t i,
                         std::size_t j, double factor, std::span<double> out);

  struct Triple {
    std::size_t i, j, k;
  };
  enum class Status { monotonic, violated, failed };
  struct FirstViolation {
    Status status = Status::monotonic;
    Triple where{};
  };

  /// Scans (i, j) in row-major order and k ascending, stopping at the first
  /// violation.
  FirstViolation first_violation(std::span<const double> entries,
                                 std::size_t n, std::span<const double> base,
                                 double factor);

  [[nodiscard]] WeightingMethod method() const noexcept { return method_; }
  [[nodiscard]] double margin() const noexcept { return margin_; }
  [[nodiscard]] const EigenOptions& eigen() const noexcept {
    return solver_.options();
  }

 private:
  WeightingMethod method_;
  double margin_;
  PerronSolver solver_;
  std::vector<double> scratch_;
  std::vector<double> perturbed_;
};

/// Full audit of one matrix at one factor. Requires factor > 1 and
/// margin >= 0. Throws ConvergenceError naming the entry if a perturbed
/// matrix fails to converge.
[[nodiscard]] MonotonicityReport check_monotonicity(
    const PairwiseComparisonMatrix& a, WeightingMethod method,
    double factor = kDefaultPerturbationFactor,
    double margin = kViolationMargin, const EigenOptions& eigen = {});

/// One report per factor.
[[nodiscard]] std::map<double, MonotonicityReport> min_violation_factor_scan(
    const PairwiseComparisonMatrix& a, std::span<const double> factors,
    WeightingMethod method = WeightingMethod::eigenvector,
    double margin = kViolationMargin, const EigenOptions& eigen = {});

}  // namespace pcm
