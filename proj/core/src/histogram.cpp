#include "pcm/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pcm/errors.hpp"

namespace pcm {

bool precedes(const ViolationExample& a, const ViolationExample& b) {
  if (a.cr != b.cr) return a.cr < b.cr;
  const auto ua = a.matrix.upper_triangle();
  const auto ub = b.matrix.upper_triangle();
  if (ua != ub) {
    return std::lexicographical_compare(ua.begin(), ua.end(), ub.begin(),
                                        ub.end());
  }
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  return a.k < b.k;
}

CrHistogram::CrHistogram(double beta, std::optional<double> overflow_at)
    : beta_(beta), overflow_at_(overflow_at) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw ValidationError("bin width beta must be positive and finite");
  }
  if (overflow_at_) {
    const double m = std::round(*overflow_at_ / beta_);
    if (!(m >= 1.0) || std::abs(m * beta_ - *overflow_at_) > 1e-9) {
      throw ValidationError("overflow threshold must be a positive multiple "
                            "of beta");
    }
    regular_limit_ = static_cast<std::size_t>(m);
    bins_.resize(*regular_limit_);
  }
}

std::size_t CrHistogram::bin_index(double cr, bool* tie) const {
  if (tie != nullptr) *tie = false;
  if (!(cr > 0.0)) return 0;
  const double scaled = cr / beta_;
  const double nearest = std::round(scaled);
  std::size_t index;
  if (nearest >= 1.0 && std::abs(cr - nearest * beta_) <= kBoundaryTieWidth) {
    if (tie != nullptr) *tie = true;
    index = static_cast<std::size_t>(nearest) - 1;
  } else {
    index = static_cast<std::size_t>(std::floor(scaled));
  }
  if (regular_limit_ && index >= *regular_limit_) return *regular_limit_;
  return index;
}

HistogramBin& CrHistogram::slot(std::size_t index) {
  if (regular_limit_ && index >= *regular_limit_) return overflow_;
  if (index >= bins_.size()) bins_.resize(index + 1);
  return bins_[index];
}

void CrHistogram::record(double cr, bool violating) {
  bool tie = false;
  HistogramBin& b = slot(bin_index(cr, &tie));
  if (tie) ++ties_;
  ++b.total;
  if (violating) ++b.violating;
}

void CrHistogram::offer_example(const ViolationExample& example) {
  if (!min_example_ || precedes(example, *min_example_)) {
    min_example_ = example;
  }
}

void CrHistogram::merge(const CrHistogram& other) {
  if (other.beta_ != beta_ || other.overflow_at_ != overflow_at_) {
    throw ConfigError("cannot merge histograms with different binning");
  }
  if (other.bins_.size() > bins_.size()) bins_.resize(other.bins_.size());
  for (std::size_t m = 0; m < other.bins_.size(); ++m) {
    bins_[m].total += other.bins_[m].total;
    bins_[m].violating += other.bins_[m].violating;
  }
  overflow_.total += other.overflow_.total;
  overflow_.violating += other.overflow_.violating;
  ties_ += other.ties_;
  failures_ += other.failures_;
  skipped_ += other.skipped_;
  if (other.min_example_) offer_example(*other.min_example_);
}

HistogramBin CrHistogram::totals() const noexcept {
  HistogramBin sum = overflow_;
  for (const auto& b : bins_) {
    sum.total += b.total;
    sum.violating += b.violating;
  }
  return sum;
}

HistogramBin CrHistogram::bin(std::size_t index) const noexcept {
  return index < bins_.size() ? bins_[index] : HistogramBin{};
}

std::string CrHistogram::to_csv() const {
  std::string out = "bin_lo,bin_hi,total,violating,proportion\n";
  char buf[160];
  auto row = [&](double lo, const char* hi, const HistogramBin& b) {
    char prop[32] = "";
    if (b.total != 0) std::snprintf(prop, sizeof prop, "%.6f", b.proportion());
    std::snprintf(buf, sizeof buf, "%.10g,%s,%llu,%llu,%s\n", lo, hi,
                  static_cast<unsigned long long>(b.total),
                  static_cast<unsigned long long>(b.violating), prop);
    out += buf;
  };
  std::size_t rows = bins_.size();
  if (!regular_limit_) {
    while (rows > 0 && bins_[rows - 1].total == 0) --rows;
  }
  for (std::size_t m = 0; m < rows; ++m) {
    char hi[32];
    std::snprintf(hi, sizeof hi, "%.10g", beta_ * static_cast<double>(m + 1));
    row(beta_ * static_cast<double>(m), hi, bins_[m]);
  }
  if (regular_limit_) row(*overflow_at_, "inf", overflow_);
  return out;
}

CrHistogram CrHistogram::restore(double beta, std::optional<double> overflow_at,
                                 std::vector<HistogramBin> bins,
                                 HistogramBin overflow, std::uint64_t ties,
                                 std::uint64_t failures, std::uint64_t skipped,
                                 std::optional<ViolationExample> example) {
  CrHistogram h(beta, overflow_at);
  if (h.regular_limit_ && bins.size() != *h.regular_limit_) {
    throw ConfigError("restored histogram has the wrong number of bins");
  }
  h.bins_ = std::move(bins);
  h.overflow_ = overflow;
  h.ties_ = ties;
  h.failures_ = failures;
  h.skipped_ = skipped;
  h.min_example_ = std::move(example);
  return h;
}

}  // namespace pcm
