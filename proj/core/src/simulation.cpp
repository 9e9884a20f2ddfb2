#include "pcm/simulation.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/parallel.hpp"

namespace pcm {
namespace {

constexpr std::uint64_t kSimulationChunk = 4096;

void validate(const SimulationConfig& c) {
  if (c.iterations < 1) throw ValidationError("iterations must be at least 1");
  if (!std::isfinite(c.beta) || !(c.beta > 0.0)) {
    throw ValidationError("beta must be positive");
  }
  if (!std::isfinite(c.factor) || !(c.factor > 1.0)) {
    throw ValidationError("factor must be > 1");
  }
  if (c.check_cap && !(*c.check_cap > 0.0)) {
    throw ValidationError("CR cap must be positive");
  }
  if (c.generator.n < 3) {
    throw ValidationError("simulation requires n >= 3");
  }
}

}  // namespace

CrHistogram run_simulation(const SimulationConfig& config) {
  validate(config);
  const RandomIndexTable table =
      config.ri_table.value_or(RandomIndexTable::builtin(config.generator.scale));
  const double ri = table.at(config.generator.n);
  const std::size_t n = config.generator.n;
  const MatrixGenerator generator(config.generator);

  CrHistogram result(config.beta, config.overflow_at);
  std::mutex merge_mutex;

  parallel_chunks(
      config.iterations, kSimulationChunk, config.workers,
      [&](std::uint64_t, std::uint64_t begin, std::uint64_t end, unsigned) {
        CrHistogram local(config.beta, config.overflow_at);
        PerturbationScanner scanner(config.method, config.eigen, config.margin);
        std::vector<double> entries(n * n);
        std::vector<double> base(n);
        for (std::uint64_t ordinal = begin; ordinal < end; ++ordinal) {
          generator.fill_full(ordinal, entries);
          double lambda = 0.0;
          if (!scanner.weights(entries, n, base, &lambda)) {
            local.add_failure();
            continue;
          }
          const double cr = consistency_index(lambda, n) / ri;
          if (config.check_cap && cr >= *config.check_cap) {
            local.add_skipped();
            continue;
          }
          const auto first =
              scanner.first_violation(entries, n, base, config.factor);
          if (first.status == PerturbationScanner::Status::failed) {
            local.add_failure();
            continue;
          }
          const bool violated =
              first.status == PerturbationScanner::Status::violated;
          local.record(cr, violated);
          if (violated && (!local.min_cr_example() ||
                           cr <= local.min_cr_example()->cr)) {
            local.offer_example({PairwiseComparisonMatrix::from_full(n, entries),
                                 cr, first.where.i, first.where.j,
                                 first.where.k});
          }
        }
        std::lock_guard lock(merge_mutex);
        result.merge(local);
      });
  return result;
}

}  // namespace pcm
