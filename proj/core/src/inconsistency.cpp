#include "pcm/inconsistency.hpp"

#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/generator.hpp"
#include "pcm/parallel.hpp"

namespace pcm {

RandomIndexTable::RandomIndexTable(Scale scale,
                                   std::map<std::size_t, double> values,
                                   std::optional<std::uint64_t> sample_size)
    : scale_(scale), values_(std::move(values)), sample_size_(sample_size) {
  double previous = 0.0;
  for (const auto& [n, ri] : values_) {
    if (n < 3) {
      throw ValidationError("random index defined only for n >= 3, got n=" +
                            std::to_string(n));
    }
    if (!(ri > 0.0)) {
      throw ValidationError("random index for n=" + std::to_string(n) +
                            " must be positive");
    }
    if (ri < previous) {
      throw ValidationError("random index must be nondecreasing in n (n=" +
                            std::to_string(n) + ")");
    }
    previous = ri;
  }
}

RandomIndexTable RandomIndexTable::builtin(Scale scale) {
  if (scale == Scale::discrete) {
    return RandomIndexTable(scale, {{4, 0.884},
                                    {5, 1.109},
                                    {6, 1.249},
                                    {7, 1.341},
                                    {8, 1.404},
                                    {9, 1.451}});
  }
  return RandomIndexTable(scale, {{4, 0.946},
                                  {5, 1.188},
                                  {6, 1.340},
                                  {7, 1.438},
                                  {8, 1.505},
                                  {9, 1.555}},
                          4'000'000);
}

double RandomIndexTable::at(std::size_t n) const {
  const auto it = values_.find(n);
  if (it == values_.end()) {
    throw ConfigError("no random index for n=" + std::to_string(n) + " on the " +
                      std::string(to_string(scale_)) + " scale");
  }
  return it->second;
}

double consistency_index(double lambda_max, std::size_t n) noexcept {
  if (n <= 2) return 0.0;
  const double ci = (lambda_max - static_cast<double>(n)) /
                    static_cast<double>(n - 1);
  return (ci < 0.0 && ci >= -kCiNoise) ? 0.0 : ci;
}

double consistency_index(const PairwiseComparisonMatrix& a,
                         const EigenOptions& options) {
  if (a.size() == 2) return 0.0;
  return consistency_index(eigenvector_method(a, options).lambda_max, a.size());
}

InconsistencyReport consistency_ratio(const PairwiseComparisonMatrix& a,
                                      const RandomIndexTable& table,
                                      const EigenOptions& options) {
  const std::size_t n = a.size();
  const double ri = table.at(n);
  const EigenResult eig = eigenvector_method(a, options);
  InconsistencyReport report;
  report.n = n;
  report.lambda_max = eig.lambda_max;
  report.ci = consistency_index(eig.lambda_max, n);
  report.ri = ri;
  report.cr = report.ci / ri;
  report.acceptable = report.cr <= kAcceptableCr;
  return report;
}

double estimate_random_index(std::size_t n, Scale scale, std::uint64_t samples,
                             std::uint64_t seed, unsigned workers,
                             const EigenOptions& options) {
  if (n < 3) throw ValidationError("random index requires n >= 3");
  if (samples < 1) throw ValidationError("samples must be at least 1");

  constexpr std::uint64_t kChunk = 1 << 14;
  const MatrixGenerator generator({n, scale, seed});
  std::vector<double> chunk_sums((samples + kChunk - 1) / kChunk, 0.0);

  parallel_chunks(samples, kChunk, workers,
                  [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end,
                      unsigned) {
                    PerronSolver solver(options);
                    std::vector<double> entries(n * n);
                    std::vector<double> w(n);
                    double sum = 0.0;
                    for (std::uint64_t s = begin; s < end; ++s) {
                      generator.fill_full(s, entries);
                      row_geometric_mean(entries, n, w);
                      const auto out = solver.solve(entries, n, w);
                      if (!out.converged) {
                        throw ConvergenceError(
                            "power iteration did not converge for random "
                            "matrix " + std::to_string(s),
                            w, out.residual, out.iterations);
                      }
                      sum += consistency_index(out.lambda_max, n);
                    }
                    chunk_sums[c] = sum;
                  });

  double total = 0.0;
  for (double s : chunk_sums) total += s;
  return total / static_cast<double>(samples);
}

}  // namespace pcm
