#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcm/matrix.hpp"

namespace pcm {

/// Convergence threshold for interactive use: both the largest relative
/// change of a weight between iterations and the max-norm residual
/// |A w - lambda w| must fall below it.
inline constexpr double kEigenTolerance = 1e-13;
/// Relaxed threshold used by bulk simulation and enumeration.
inline constexpr double kBulkEigenTolerance = 1e-12;
inline constexpr std::size_t kDefaultMaxIterations = 100'000;

struct EigenOptions {
  double tol = kEigenTolerance;
  std::size_t max_iter = kDefaultMaxIterations;
};

/// Positive priority vector normalized to sum 1.
class WeightVector {
 public:
  /// Normalizes `raw` to sum 1. Throws ValidationError if any component is
  /// not positive and finite.
  explicit WeightVector(std::vector<double> raw);

  [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return w_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return w_; }
  [[nodiscard]] double ratio(std::size_t i, std::size_t k) const noexcept {
    return w_[i] / w_[k];
  }

 private:
  std::vector<double> w_;
};

struct EigenResult {
  double lambda_max = 0.0;
  WeightVector weights;
  std::size_t iterations = 0;
  /// max_i |(A w)_i - lambda_max w_i| at the returned w.
  double residual = 0.0;
};

/// Power iteration on raw row-major entries that reuses its scratch buffer,
/// for loops that solve millions of small systems.
///
/// Each step forms y = A w, estimates lambda as the mean of y_i / w_i, and
/// renormalizes y to sum 1. The current w is accepted once the next step
/// would move no component by more than `tol` relative and the residual
/// max_i |y_i - lambda w_i| is at most `tol`.
class PerronSolver {
 public:
  struct Outcome {
    double lambda_max = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
  };

  explicit PerronSolver(EigenOptions options = {});

  /// `w` holds a positive start vector on entry (it is normalized first) and
  /// the last iterate on exit, whether or not the iteration converged.
  Outcome solve(std::span<const double> entries, std::size_t n,
                std::span<double> w);

  [[nodiscard]] const EigenOptions& options() const noexcept { return options_; }

 private:
  EigenOptions options_;
  std::vector<double> y_;
};

/// Principal right eigenpair. The iteration starts from the row geometric
/// mean weights, or from `start` when it is non-empty. Throws
/// ConvergenceError (carrying the last iterate) after `max_iter` steps.
[[nodiscard]] EigenResult eigenvector_method(
    const PairwiseComparisonMatrix& a, const EigenOptions& options = {},
    std::span<const double> start = {});

/// w_i proportional to (prod_j a_ij)^(1/n), evaluated in the log domain.
[[nodiscard]] WeightVector row_geometric_mean(const PairwiseComparisonMatrix& a);

/// Row geometric mean of raw row-major entries, written to `w`.
void row_geometric_mean(std::span<const double> entries, std::size_t n,
                        std::span<double> w);

}  // namespace pcm
