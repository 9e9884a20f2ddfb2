#include "pcm/monotonicity.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "pcm/errors.hpp"

namespace pcm {
namespace {

void require_factor(double factor) {
  if (!std::isfinite(factor) || !(factor > 1.0)) {
    throw ValidationError("perturbation factor must be finite and > 1");
  }
}

}  // namespace

std::string_view to_string(WeightingMethod method) noexcept {
  return method == WeightingMethod::eigenvector ? "eigenvector"
                                                : "row_geometric_mean";
}

WeightingMethod parse_method(std::string_view text) {
  if (text == "eigenvector" || text == "em") return WeightingMethod::eigenvector;
  if (text == "row_geometric_mean" || text == "rgm") {
    return WeightingMethod::row_geometric_mean;
  }
  throw ValidationError("unknown weighting method '" + std::string(text) +
                        "' (expected eigenvector|em|row_geometric_mean|rgm)");
}

std::string matrix_digest(const PairwiseComparisonMatrix& a) {
  std::string text = std::to_string(a.size()) + ":";
  char buf[32];
  bool first = true;
  for (double v : a.upper_triangle()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) text += ',';
    text += buf;
    first = false;
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PerturbationScanner::PerturbationScanner(WeightingMethod method,
                                         EigenOptions eigen, double margin)
    : method_(method), margin_(margin), solver_(eigen) {
  if (!(margin >= 0.0)) throw ValidationError("margin must be non-negative");
}

bool PerturbationScanner::weights(std::span<const double> entries,
                                  std::size_t n, std::span<double> w,
                                  double* lambda_max) {
  row_geometric_mean(entries, n, w);
  if (method_ == WeightingMethod::row_geometric_mean && lambda_max == nullptr) {
    return true;
  }
  if (method_ == WeightingMethod::row_geometric_mean) {
    // The caller wants lambda_max as well; solve on a copy so w stays RGM.
    scratch_.assign(w.begin(), w.end());
    const auto out = solver_.solve(entries, n, scratch_);
    *lambda_max = out.lambda_max;
    return out.converged;
  }
  const auto out = solver_.solve(entries, n, w);
  if (lambda_max != nullptr) *lambda_max = out.lambda_max;
  return out.converged;
}

bool PerturbationScanner::perturbed_weights(std::span<const double> entries,
                                            std::size_t n,
                                            std::span<const double> base,
                                            std::size_t i, std::size_t j,
                                            double factor,
                                            std::span<double> out) {
  perturbed_.assign(entries.begin(), entries.end());
  const double aij = entries[i * n + j] * factor;
  perturbed_[i * n + j] = aij;
  perturbed_[j * n + i] = 1.0 / aij;
  if (method_ == WeightingMethod::row_geometric_mean) {
    row_geometric_mean(perturbed_, n, out);
    return true;
  }
  for (std::size_t q = 0; q < n; ++q) out[q] = base[q];
  return solver_.solve(perturbed_, n, out).converged;
}

PerturbationScanner::FirstViolation PerturbationScanner::first_violation(
    std::span<const double> entries, std::size_t n,
    std::span<const double> base, double factor) {
  std::vector<double>& after = scratch_;
  after.resize(n);
  const double keep = 1.0 - margin_;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!perturbed_weights(entries, n, base, i, j, factor, after)) {
        return {Status::failed, {i, j, 0}};
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        if (after[i] / after[k] < (base[i] / base[k]) * keep) {
          return {Status::violated, {i, j, k}};
        }
      }
    }
  }
  return {};
}

MonotonicityReport check_monotonicity(const PairwiseComparisonMatrix& a,
                                      WeightingMethod method, double factor,
                                      double margin, const EigenOptions& eigen) {
  require_factor(factor);
  PerturbationScanner scanner(method, eigen, margin);
  const std::size_t n = a.size();

  MonotonicityReport report;
  report.matrix_hash = matrix_digest(a);
  report.method = method;
  report.factor = factor;
  report.margin = margin;
  report.eigen_tol = eigen.tol;

  std::vector<double> base(n);
  if (!scanner.weights(a.entries(), n, base)) {
    throw ConvergenceError("power iteration did not converge for the "
                           "unperturbed matrix",
                           base, NAN, eigen.max_iter);
  }
  const double keep = 1.0 - margin;
  std::vector<double> after(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!scanner.perturbed_weights(a.entries(), n, base, i, j, factor,
                                     after)) {
        throw ConvergenceError(
            "power iteration did not converge for entry (" +
                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
            after, NAN, eigen.max_iter);
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        const double before_ratio = base[i] / base[k];
        const double after_ratio = after[i] / after[k];
        if (after_ratio < before_ratio * keep) {
          report.violations.push_back(
              {i, j, k, before_ratio, after_ratio, factor});
        }
      }
      if (after[i] < base[i] * keep) report.weak_violations.push_back({i, j});
    }
  }
  return report;
}

std::map<double, MonotonicityReport> min_violation_factor_scan(
    const PairwiseComparisonMatrix& a, std::span<const double> factors,
    WeightingMethod method, double margin, const EigenOptions& eigen) {
  for (double f : factors) require_factor(f);
  std::map<double, MonotonicityReport> reports;
  for (double f : factors) {
    reports.emplace(f, check_monotonicity(a, method, f, margin, eigen));
  }
  return reports;
}

}  // namespace pcm
