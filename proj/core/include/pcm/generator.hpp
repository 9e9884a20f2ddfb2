#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pcm/matrix.hpp"
#include "pcm/scale.hpp"

namespace pcm {

struct GeneratorConfig {
  std::size_t n = 4;
  Scale scale = Scale::discrete;
  std::uint64_t seed = 0;
};

/// Random reciprocal matrices.
///
/// Discrete: each upper entry is one of the 17 Saaty values with equal
/// probability. Continuous: v is uniform on [1, 10) and the entry is v or
/// 1/v on a fair coin. Matrix number `ordinal` draws from
/// Substream(seed, ordinal), upper entries in row-major order.
class MatrixGenerator {
 public:
  explicit MatrixGenerator(GeneratorConfig config);

  [[nodiscard]] const GeneratorConfig& config() const noexcept { return config_; }

  /// Writes the n(n-1)/2 upper entries of matrix `ordinal`.
  void fill_upper(std::uint64_t ordinal, std::span<double> upper) const;

  /// Writes the full row-major n x n matrix `ordinal`.
  void fill_full(std::uint64_t ordinal, std::span<double> entries) const;

  [[nodiscard]] PairwiseComparisonMatrix generate(std::uint64_t ordinal) const;

 private:
  GeneratorConfig config_;
};

/// Matrix number 0 of `config`.
[[nodiscard]] PairwiseComparisonMatrix generate(const GeneratorConfig& config);

}  // namespace pcm
