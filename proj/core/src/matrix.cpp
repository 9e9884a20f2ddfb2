#include "pcm/matrix.hpp"

#include <cmath>
#include <string>

#include "pcm/errors.hpp"

namespace pcm {
namespace {

std::string position(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_size(std::size_t n) {
  if (n < 2) {
    throw ValidationError("matrix size must be at least 2, got " +
                          std::to_string(n));
  }
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

PairwiseComparisonMatrix PairwiseComparisonMatrix::from_upper(
    std::size_t n, std::span<const double> upper) {
  require_size(n);
  if (upper.size() != upper_count(n)) {
    throw ArityError("expected " + std::to_string(upper_count(n)) +
                     " upper-triangle entries for n=" + std::to_string(n) +
                     ", got " + std::to_string(upper.size()));
  }
  std::vector<double> entries(n * n, 1.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = upper[idx++];
      if (!positive_finite(v)) {
        throw ValidationError("entry " + position(i, j) +
                                  " must be positive and finite",
                              i, j);
      }
      entries[i * n + j] = v;
      entries[j * n + i] = 1.0 / v;
    }
  }
  return {n, std::move(entries)};
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::from_full(
    std::size_t n, std::span<const double> entries, double reciprocity_tol) {
  require_size(n);
  if (entries.size() != n * n) {
    throw ArityError("expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!positive_finite(entries[i * n + j])) {
        throw ValidationError("entry " + position(i, j) +
                                  " must be positive and finite",
                              i, j);
      }
    }
  }
  std::vector<double> upper;
  upper.reserve(upper_count(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i * n + i] != 1.0) {
      throw ValidationError("diagonal entry " + position(i, i) + " must be 1",
                            i, i);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double aij = entries[i * n + j];
      const double aji = entries[j * n + i];
      if (std::abs(aij * aji - 1.0) > reciprocity_tol) {
        throw ValidationError("entry " + position(j, i) +
                                  " is not the reciprocal of entry " +
                                  position(i, j),
                              j, i);
      }
      upper.push_back(aij);
    }
  }
  return from_upper(n, upper);
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::from_weights(
    std::span<const double> weights) {
  const std::size_t n = weights.size();
  require_size(n);
  std::vector<double> upper;
  upper.reserve(upper_count(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!positive_finite(weights[i])) {
      throw ValidationError("weight " + std::to_string(i + 1) +
                            " must be positive and finite");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      upper.push_back(weights[i] / weights[j]);
    }
  }
  return from_upper(n, upper);
}

std::vector<double> PairwiseComparisonMatrix::upper_triangle() const {
  std::vector<double> upper;
  upper.reserve(upper_count(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      upper.push_back(entries_[i * n_ + j]);
    }
  }
  return upper;
}

PairwiseComparisonMatrix PairwiseComparisonMatrix::permuted(
    std::span<const std::size_t> order) const {
  if (order.size() != n_) {
    throw ArityError("permutation length must equal matrix size");
  }
  std::vector<bool> seen(n_, false);
  for (std::size_t p : order) {
    if (p >= n_ || seen[p]) {
      throw ValidationError("order is not a permutation of 0..n-1");
    }
    seen[p] = true;
  }
  std::vector<double> entries(n_ * n_);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = 0; q < n_; ++q) {
      entries[p * n_ + q] = (*this)(order[p], order[q]);
    }
  }
  // Re-derive the lower triangle so the exact-reciprocal invariant holds in
  // the new labelling as well.
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = p + 1; q < n_; ++q) {
      entries[q * n_ + p] = 1.0 / entries[p * n_ + q];
    }
  }
  return {n_, std::move(entries)};
}

bool is_consistent(const PairwiseComparisonMatrix& a, double tol) {
  if (!(tol >= 0.0)) {
    throw ValidationError("consistency tolerance must be non-negative");
  }
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (std::abs(aik - a(i, j) * a(j, k)) > tol * aik) {
          return false;
        }
      }
    }
  }
  return true;
}

PairwiseComparisonMatrix perturb(const PairwiseComparisonMatrix& a,
                                 const PerturbationSpec& spec) {
  const std::size_t n = a.size();
  if (spec.i >= spec.j || spec.j >= n) {
    throw IndexError("perturbation requires 1 <= i < j <= n, got " +
                         position(spec.i, spec.j),
                     spec.i, spec.j);
  }
  if (!positive_finite(spec.factor) || spec.factor == 1.0) {
    throw ValidationError("perturbation factor must be positive, finite and "
                          "different from 1");
  }
  std::vector<double> upper = a.upper_triangle();
  // Row-major offset of (i, j) within the strict upper triangle.
  const std::size_t offset =
      spec.i * n - spec.i * (spec.i + 1) / 2 + (spec.j - spec.i - 1);
  upper[offset] *= spec.factor;
  return PairwiseComparisonMatrix::from_upper(n, upper);
}

}  // namespace pcm
