#include "pcm/generator.hpp"

#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

std::string_view to_string(Scale scale) noexcept {
  return scale == Scale::discrete ? "discrete" : "continuous";
}

Scale parse_scale(std::string_view text) {
  if (text == "discrete") return Scale::discrete;
  if (text == "continuous") return Scale::continuous;
  throw ValidationError("unknown scale '" + std::string(text) +
                        "' (expected discrete or continuous)");
}

MatrixGenerator::MatrixGenerator(GeneratorConfig config) : config_(config) {
  if (config_.n < 2) {
    throw ValidationError("generator matrix size must be at least 2");
  }
}

void MatrixGenerator::fill_upper(std::uint64_t ordinal,
                                 std::span<double> upper) const {
  Substream rng(config_.seed, ordinal);
  const std::size_t count = upper_count(config_.n);
  if (config_.scale == Scale::discrete) {
    for (std::size_t e = 0; e < count; ++e) {
      upper[e] = kSaatyScale[rng.below(kSaatyScale.size())];
    }
  } else {
    for (std::size_t e = 0; e < count; ++e) {
      const double v = 1.0 + 9.0 * rng.uniform01();
      upper[e] = rng.coin() ? 1.0 / v : v;
    }
  }
}

void MatrixGenerator::fill_full(std::uint64_t ordinal,
                                std::span<double> entries) const {
  const std::size_t n = config_.n;
  Substream rng(config_.seed, ordinal);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      if (config_.scale == Scale::discrete) {
        v = kSaatyScale[rng.below(kSaatyScale.size())];
      } else {
        const double u = 1.0 + 9.0 * rng.uniform01();
        v = rng.coin() ? 1.0 / u : u;
      }
      entries[i * n + j] = v;
      entries[j * n + i] = 1.0 / v;
    }
  }
}

PairwiseComparisonMatrix MatrixGenerator::generate(std::uint64_t ordinal) const {
  std::vector<double> upper(upper_count(config_.n));
  fill_upper(ordinal, upper);
  return PairwiseComparisonMatrix::from_upper(config_.n, upper);
}

PairwiseComparisonMatrix generate(const GeneratorConfig& config) {
  return MatrixGenerator(config).generate(0);
}

}  // namespace pcm
