#include "pcm/enumeration.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "pcm/errors.hpp"
#include "pcm/inconsistency.hpp"
#include "pcm/parallel.hpp"
#include "pcm/scale.hpp"
#include "pcm/serialization.hpp"

namespace pcm {
namespace {

constexpr const char* kCheckpointSchema = "pcm.enumeration.checkpoint/1";
constexpr std::uint64_t kEnumerationChunk = 1 << 14;

using nlohmann::json;

void validate(const EnumerationConfig& c) {
  if (!std::isfinite(c.beta) || !(c.beta > 0.0)) {
    throw ValidationError("beta must be positive");
  }
  if (c.factors.empty()) throw ValidationError("at least one factor required");
  for (double f : c.factors) {
    if (!std::isfinite(f) || !(f > 1.0)) {
      throw ValidationError("every factor must be > 1");
    }
  }
  if (c.stride < 1) throw ValidationError("stride must be at least 1");
  if (c.end > kN4DiscreteCount || c.begin > c.end) {
    throw ValidationError("enumeration range must lie within [0, 17^6]");
  }
  if (c.checkpoint_every < 1) {
    throw ValidationError("checkpoint interval must be at least 1");
  }
}

json config_json(const EnumerationConfig& c) {
  json out = {{"n", 4},
              {"scale", "discrete"},
              {"beta", c.beta},
              {"factors", c.factors},
              {"margin", c.margin},
              {"eigen_tol", c.eigen.tol},
              {"max_iter", c.eigen.max_iter},
              {"begin", c.begin},
              {"end", c.end},
              {"stride", c.stride}};
  out["overflow_at"] = c.overflow_at ? json(*c.overflow_at) : json(nullptr);
  return out;
}

void write_checkpoint(const std::filesystem::path& path,
                      const EnumerationConfig& c, std::uint64_t visited,
                      const std::vector<CrHistogram>& histograms) {
  json hist = json::array();
  json examples = json::array();
  for (const auto& h : histograms) {
    hist.push_back(to_json(h));
    examples.push_back(h.min_cr_example() ? to_json(*h.min_cr_example())
                                          : json(nullptr));
  }
  const std::uint64_t next = std::min(c.end, c.begin + visited * c.stride);
  const json doc = {{"schema", kCheckpointSchema},
                    {"config", config_json(c)},
                    {"completed_range", {c.begin, next}},
                    {"visited", visited},
                    {"histograms", hist},
                    {"min_cr_example", examples}};
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    out << doc.dump(1) << '\n';
    if (!out) throw IoError("error writing checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

bool load_checkpoint(const std::filesystem::path& path,
                     const EnumerationConfig& c, std::uint64_t& visited,
                     std::vector<CrHistogram>& histograms) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("unreadable checkpoint " + path.string() + ": " + e.what());
  }
  if (doc.value("schema", "") != kCheckpointSchema) {
    throw ConfigError("checkpoint " + path.string() + " has unknown schema");
  }
  if (doc.at("config") != config_json(c)) {
    throw ConfigError("checkpoint " + path.string() +
                      " was written with a different configuration");
  }
  std::vector<CrHistogram> loaded;
  for (const auto& h : doc.at("histograms")) loaded.push_back(histogram_from_json(h));
  if (loaded.size() != c.factors.size()) {
    throw ConfigError("checkpoint histogram count does not match factors");
  }
  visited = doc.at("visited").get<std::uint64_t>();
  histograms = std::move(loaded);
  return true;
}

}  // namespace

std::array<double, 6> n4_discrete_upper(std::uint64_t index) {
  if (index >= kN4DiscreteCount) {
    throw IndexError("enumeration index out of range");
  }
  std::array<double, 6> upper{};
  for (int pos = 5; pos >= 0; --pos) {
    upper[static_cast<std::size_t>(pos)] = kSaatyScale[index % 17];
    index /= 17;
  }
  return upper;
}

PairwiseComparisonMatrix n4_discrete_matrix(std::uint64_t index) {
  const auto upper = n4_discrete_upper(index);
  return PairwiseComparisonMatrix::from_upper(4, upper);
}

EnumerationResult enumerate_n4_discrete(const EnumerationConfig& config) {
  validate(config);
  constexpr std::size_t n = 4;
  const double ri = RandomIndexTable::builtin(Scale::discrete).at(n);
  const std::size_t nf = config.factors.size();
  const std::uint64_t count =
      config.end > config.begin
          ? (config.end - config.begin + config.stride - 1) / config.stride
          : 0;

  EnumerationResult result;
  for (std::size_t f = 0; f < nf; ++f) {
    result.histograms.emplace_back(config.beta, config.overflow_at);
  }
  std::uint64_t done = 0;
  if (config.checkpoint) {
    result.resumed =
        load_checkpoint(*config.checkpoint, config, done, result.histograms);
  }

  std::mutex merge_mutex;
  while (done < count) {
    const std::uint64_t batch_end =
        std::min(count, done + config.checkpoint_every);
    const std::uint64_t batch_begin = done;
    parallel_chunks(
        batch_end - batch_begin, kEnumerationChunk, config.workers,
        [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi, unsigned) {
          std::vector<CrHistogram> local;
          for (std::size_t f = 0; f < nf; ++f) {
            local.emplace_back(config.beta, config.overflow_at);
          }
          PerturbationScanner scanner(WeightingMethod::eigenvector,
                                      config.eigen, config.margin);
          std::array<double, n * n> entries{};
          std::array<double, n> base{};
          for (std::uint64_t p = batch_begin + lo; p < batch_begin + hi; ++p) {
            const std::uint64_t index = config.begin + p * config.stride;
            const auto upper = n4_discrete_upper(index);
            std::size_t e = 0;
            for (std::size_t i = 0; i < n; ++i) {
              entries[i * n + i] = 1.0;
              for (std::size_t j = i + 1; j < n; ++j, ++e) {
                entries[i * n + j] = upper[e];
                entries[j * n + i] = 1.0 / upper[e];
              }
            }
            double lambda = 0.0;
            if (!scanner.weights(entries, n, base, &lambda)) {
              for (auto& h : local) h.add_failure();
              continue;
            }
            const double cr = consistency_index(lambda, n) / ri;
            for (std::size_t f = 0; f < nf; ++f) {
              const auto first = scanner.first_violation(entries, n, base,
                                                         config.factors[f]);
              if (first.status == PerturbationScanner::Status::failed) {
                local[f].add_failure();
                continue;
              }
              const bool violated =
                  first.status == PerturbationScanner::Status::violated;
              local[f].record(cr, violated);
              if (violated && (!local[f].min_cr_example() ||
                               cr <= local[f].min_cr_example()->cr)) {
                local[f].offer_example(
                    {PairwiseComparisonMatrix::from_upper(n, upper), cr,
                     first.where.i, first.where.j, first.where.k});
              }
            }
          }
          std::lock_guard lock(merge_mutex);
          for (std::size_t f = 0; f < nf; ++f) {
            result.histograms[f].merge(local[f]);
          }
        });
    done = batch_end;
    if (config.checkpoint) {
      write_checkpoint(*config.checkpoint, config, done, result.histograms);
    }
    if (config.progress) config.progress(done, count);
  }
  result.visited = done;
  return result;
}

}  // namespace pcm
