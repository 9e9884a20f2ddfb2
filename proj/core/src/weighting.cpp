#include "pcm/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcm/errors.hpp"

namespace pcm {

WeightVector::WeightVector(std::vector<double> raw) : w_(std::move(raw)) {
  if (w_.empty()) throw ValidationError("weight vector must not be empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] <= 0.0) {
      throw ValidationError("weight " + std::to_string(i + 1) +
                            " must be positive and finite");
    }
    sum += w_[i];
  }
  for (double& x : w_) x /= sum;
}

PerronSolver::PerronSolver(EigenOptions options) : options_(options) {
  if (!(options_.tol > 0.0)) {
    throw ValidationError("eigen tolerance must be positive");
  }
  if (options_.max_iter < 1) {
    throw ValidationError("max_iter must be at least 1");
  }
}

PerronSolver::Outcome PerronSolver::solve(std::span<const double> entries,
                                          std::size_t n, std::span<double> w) {
  y_.resize(n);
  double* y = y_.data();
  const double* a = entries.data();
  const double tol = options_.tol;

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i];
  for (std::size_t i = 0; i < n; ++i) w[i] /= sum;

  Outcome out;
  for (std::size_t it = 1; it <= options_.max_iter; ++it) {
    double ysum = 0.0;
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = a + i * n;
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * w[j];
      y[i] = acc;
      ysum += acc;
      ratio_sum += acc / w[i];
    }
    const double lambda = ratio_sum / static_cast<double>(n);
    double residual = 0.0;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(y[i] - lambda * w[i]));
      const double next = y[i] / ysum;
      change = std::max(change, std::abs(next - w[i]) / w[i]);
    }
    out.lambda_max = lambda;
    out.iterations = it;
    out.residual = residual;
    if (change < tol && residual <= tol) {
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] = y[i] / ysum;
  }
  return out;
}

void row_geometric_mean(std::span<const double> entries, std::size_t n,
                        std::span<double> w) {
  double top = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::log(entries[i * n + j]);
    w[i] = s / static_cast<double>(n);
    top = std::max(top, w[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(w[i] - top);
    sum += w[i];
  }
  for (std::size_t i = 0; i < n; ++i) w[i] /= sum;
}

WeightVector row_geometric_mean(const PairwiseComparisonMatrix& a) {
  std::vector<double> w(a.size());
  row_geometric_mean(a.entries(), a.size(), w);
  return WeightVector(std::move(w));
}

EigenResult eigenvector_method(const PairwiseComparisonMatrix& a,
                               const EigenOptions& options,
                               std::span<const double> start) {
  const std::size_t n = a.size();
  std::vector<double> w(n);
  if (start.empty()) {
    row_geometric_mean(a.entries(), n, w);
  } else {
    if (start.size() != n) {
      throw ArityError("start vector length must equal matrix size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(start[i] > 0.0) || !std::isfinite(start[i])) {
        throw ValidationError("start vector must be positive and finite");
      }
      w[i] = start[i];
    }
  }
  PerronSolver solver(options);
  const PerronSolver::Outcome out = solver.solve(a.entries(), n, w);
  if (!out.converged) {
    throw ConvergenceError(
        "power iteration did not converge after " +
            std::to_string(out.iterations) + " iterations (residual " +
            std::to_string(out.residual) + ")",
        w, out.residual, out.iterations);
  }
  return {out.lambda_max, WeightVector(std::move(w)), out.iterations,
          out.residual};
}

}  // namespace pcm
