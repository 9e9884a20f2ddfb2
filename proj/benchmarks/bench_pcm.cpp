#include <benchmark/benchmark.h>

#include <vector>

#include "pcm/enumeration.hpp"
#include "pcm/generator.hpp"
#include "pcm/inconsistency.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/simulation.hpp"
#include "pcm/weighting.hpp"

namespace {

std::vector<pcm::PairwiseComparisonMatrix> sample(std::size_t n, std::size_t count) {
  const pcm::MatrixGenerator gen({n, pcm::Scale::discrete, 42});
  std::vector<pcm::PairwiseComparisonMatrix> out;
  for (std::size_t o = 0; o < count; ++o) out.push_back(gen.generate(o));
  return out;
}

void BM_EigenSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mats = sample(n, 256);
  pcm::PerronSolver solver({pcm::kBulkEigenTolerance, pcm::kDefaultMaxIterations});
  std::vector<double> w(n);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& a = mats[k++ % mats.size()];
    pcm::row_geometric_mean(a.entries(), n, w);
    benchmark::DoNotOptimize(solver.solve(a.entries(), n, w));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EigenSolve)->DenseRange(3, 9, 2);

void BM_RowGeometricMean(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mats = sample(n, 256);
  std::vector<double> w(n);
  std::size_t k = 0;
  for (auto _ : state) {
    pcm::row_geometric_mean(mats[k++ % mats.size()].entries(), n, w);
    benchmark::DoNotOptimize(w.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RowGeometricMean)->DenseRange(3, 9, 2);

// One full audit: base solve plus n(n-1)/2 warm-started perturbed solves.
void BM_PerturbationScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mats = sample(n, 256);
  pcm::PerturbationScanner scanner(pcm::WeightingMethod::eigenvector,
                                   {pcm::kBulkEigenTolerance, pcm::kDefaultMaxIterations},
                                   pcm::kViolationMargin);
  std::vector<double> base(n);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& a = mats[k++ % mats.size()];
    double lambda = 0.0;
    scanner.weights(a.entries(), n, base, &lambda);
    benchmark::DoNotOptimize(scanner.first_violation(a.entries(), n, base, 1.01));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PerturbationScan)->DenseRange(4, 9, 1);

void BM_SimulationChunk(benchmark::State& state) {
  pcm::SimulationConfig c;
  c.generator = {6, pcm::Scale::discrete, 1};
  c.iterations = 4096;
  c.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pcm::run_simulation(c));
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_SimulationChunk)->Unit(benchmark::kMillisecond);

void BM_EnumerationSlice(benchmark::State& state) {
  pcm::EnumerationConfig c;
  c.factors = {1.001, 1.01, 1.1};
  c.begin = 12'000'000;
  c.end = 12'016'384;
  c.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pcm::enumerate_n4_discrete(c));
  state.SetItemsProcessed(state.iterations() * 16'384);
}
BENCHMARK(BM_EnumerationSlice)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
