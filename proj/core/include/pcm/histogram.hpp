#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcm/matrix.hpp"

namespace pcm {

/// CR values this close to a bin boundary beta*m (m >= 1) go to the lower
/// bin and are counted as boundary ties.
inline constexpr double kBoundaryTieWidth = 1e-12;

struct HistogramBin {
  std::uint64_t total = 0;
  std::uint64_t violating = 0;

  [[nodiscard]] double proportion() const noexcept {
    return total == 0 ? 0.0
                      : static_cast<double>(violating) / static_cast<double>(total);
  }
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Lowest-CR violating matrix seen so far. Indices are 0-based.
struct ViolationExample {
  PairwiseComparisonMatrix matrix;
  double cr = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  friend bool operator==(const ViolationExample&, const ViolationExample&) = default;
};

/// True if `a` should replace `b` as the minimum-CR example: smaller CR,
/// then lexicographically smaller upper triangle, then smaller (i, j, k).
[[nodiscard]] bool precedes(const ViolationExample& a, const ViolationExample& b);

/// Counts of all and of violating matrices per CR interval
/// [beta (m-1), beta m), m = 1, 2, ...
///
/// With `overflow_at` set, the regular bins stop at that value and every
/// larger CR lands in a single overflow bin. Merging is associative and
/// commutative, so partial histograms from any split of the work combine to
/// the same result.
class CrHistogram {
 public:
  explicit CrHistogram(double beta, std::optional<double> overflow_at = {});

  /// 0-based regular bin index for `cr`, or regular_bin_limit() for the
  /// overflow bin. Sets `tie` when the tie rule applied.
  [[nodiscard]] std::size_t bin_index(double cr, bool* tie = nullptr) const;

  void record(double cr, bool violating);
  void offer_example(const ViolationExample& example);
  void add_failure() noexcept { ++failures_; }
  void add_skipped() noexcept { ++skipped_; }
  void merge(const CrHistogram& other);

  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] std::optional<double> overflow_at() const noexcept {
    return overflow_at_;
  }
  /// Number of regular bins when overflow_at is set.
  [[nodiscard]] std::optional<std::size_t> regular_bin_limit() const noexcept {
    return regular_limit_;
  }
  [[nodiscard]] const std::vector<HistogramBin>& bins() const noexcept {
    return bins_;
  }
  [[nodiscard]] const HistogramBin& overflow() const noexcept { return overflow_; }
  [[nodiscard]] const std::optional<ViolationExample>& min_cr_example()
      const noexcept {
    return min_example_;
  }
  [[nodiscard]] std::uint64_t boundary_ties() const noexcept { return ties_; }
  [[nodiscard]] std::uint64_t failures() const noexcept { return failures_; }
  [[nodiscard]] std::uint64_t skipped() const noexcept { return skipped_; }

  /// Sum over regular and overflow bins.
  [[nodiscard]] HistogramBin totals() const noexcept;
  /// Regular bin [lo, hi) by 0-based index; empty bins past the end read 0.
  [[nodiscard]] HistogramBin bin(std::size_t index) const noexcept;

  /// CSV with header bin_lo,bin_hi,total,violating,proportion. Proportions
  /// carry 6 decimals and are left empty for empty bins. With overflow_at
  /// set every regular bin is written followed by an overflow row whose
  /// bin_hi is "inf"; otherwise rows stop at the last non-empty bin.
  [[nodiscard]] std::string to_csv() const;

  /// Restores a histogram from its parts (checkpoint loading).
  static CrHistogram restore(double beta, std::optional<double> overflow_at,
                             std::vector<HistogramBin> bins,
                             HistogramBin overflow, std::uint64_t ties,
                             std::uint64_t failures, std::uint64_t skipped,
                             std::optional<ViolationExample> example);

  friend bool operator==(const CrHistogram&, const CrHistogram&) = default;

 private:
  HistogramBin& slot(std::size_t index);

  double beta_;
  std::optional<double> overflow_at_;
  std::optional<std::size_t> regular_limit_;
  std::vector<HistogramBin> bins_;
  HistogramBin overflow_;
  std::optional<ViolationExample> min_example_;
  std::uint64_t ties_ = 0;
  std::uint64_t failures_ = 0;
  std::uint64_t skipped_ = 0;
};

}  // namespace pcm
