#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcm {

/// Relative tolerance used when a full matrix is read from text and its lower
/// triangle must agree with the reciprocals of the upper triangle.
inline constexpr double kParsedReciprocityTolerance = 1e-9;

/// Default relative tolerance for `is_consistent`.
inline constexpr double kConsistencyTolerance = 1e-9;

inline constexpr double kDefaultPerturbationFactor = 1.01;

/// Number of entries strictly above the diagonal of an n x n matrix.
constexpr std::size_t upper_count(std::size_t n) noexcept {
  return n * (n - 1) / 2;
}

/// Positive reciprocal n x n judgment matrix (a_ii = 1, a_ji = 1 / a_ij).
///
/// Stored densely in row-major order. The lower triangle is always the exact
/// floating-point reciprocal of the upper triangle, so reciprocity never has
/// to be re-derived on access. Instances are immutable once built.
class PairwiseComparisonMatrix {
 public:
  /// Builds a matrix from its strictly-upper entries in row-major order
  /// (a_12, a_13, ..., a_1n, a_23, ...). Throws ArityError on a length
  /// mismatch and ValidationError naming the entry if one is not positive
  /// and finite.
  static PairwiseComparisonMatrix from_upper(std::size_t n,
                                             std::span<const double> upper);

  /// Builds a matrix from a full row-major n x n array, checking the diagonal
  /// and that a_ij * a_ji = 1 within `reciprocity_tol` relative. The lower
  /// triangle is then recomputed exactly from the upper one.
  static PairwiseComparisonMatrix from_full(
      std::size_t n, std::span<const double> entries,
      double reciprocity_tol = kParsedReciprocityTolerance);

  /// Consistent matrix a_ij = w_i / w_j.
  static PairwiseComparisonMatrix from_weights(std::span<const double> weights);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }
  /// Row-major n*n entries.
  [[nodiscard]] std::span<const double> entries() const noexcept {
    return entries_;
  }
  [[nodiscard]] std::vector<double> upper_triangle() const;

  /// Same matrix with rows and columns reordered: result(p, q) =
  /// this(order[p], order[q]).
  [[nodiscard]] PairwiseComparisonMatrix permuted(
      std::span<const std::size_t> order) const;

  friend bool operator==(const PairwiseComparisonMatrix&,
                         const PairwiseComparisonMatrix&) = default;

 private:
  PairwiseComparisonMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {}

  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Multiplies a_ij (i < j, 0-based) by `factor` and divides a_ji by it.
struct PerturbationSpec {
  std::size_t i = 0;
  std::size_t j = 1;
  double factor = kDefaultPerturbationFactor;
};

/// True iff |a_ik - a_ij a_jk| <= tol * a_ik for every triple.
[[nodiscard]] bool is_consistent(const PairwiseComparisonMatrix& a,
                                 double tol = kConsistencyTolerance);

/// Copy of `a` with one upper entry scaled; reciprocity is preserved.
/// Throws IndexError unless i < j < n. Throws ValidationError when the
/// factor is 1 or is not a positive finite number.
[[nodiscard]] PairwiseComparisonMatrix perturb(
    const PairwiseComparisonMatrix& a, const PerturbationSpec& spec);

}  // namespace pcm
