#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pcm/enumeration.hpp"
#include "pcm/errors.hpp"
#include "pcm/generator.hpp"
#include "pcm/inconsistency.hpp"
#include "pcm/matrix_io.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/serialization.hpp"
#include "pcm/simulation.hpp"
#include "pcm/weighting.hpp"
#include "run_manifest.hpp"

namespace pcmaudit {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string printf_string(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::string join_weights(std::span<const double> w) {
  std::string s;
  for (double x : w) s += printf_string(s.empty() ? "%.8f" : " %.8f", x);
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pcm::IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw pcm::ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

pcm::RandomIndexTable load_table(const std::string& path, pcm::Scale scale) {
  if (path.empty()) return pcm::RandomIndexTable::builtin(scale);
  return pcm::ri_table_from_json(read_json_file(path));
}

void require_factors(const std::vector<double>& factors) {
  for (double f : factors) {
    if (!(f > 1.0)) {
      throw pcm::ValidationError(printf_string("perturbation factor %g must exceed 1", f));
    }
  }
}

// Writes outputs plus the manifest sidecar. `files` pairs a path with its
// contents; `json_doc` is written to `json_path` with the manifest embedded.
void publish(RunManifest& manifest, const std::vector<std::pair<std::string, std::string>>& files,
             const std::string& json_path, json json_doc, const std::string& manifest_anchor) {
  for (const auto& [path, text] : files) manifest.outputs.push_back(path);
  if (!json_path.empty()) manifest.outputs.push_back(json_path);
  manifest.finished = utc_timestamp();
  for (const auto& [path, text] : files) write_text_file(path, text);
  if (!json_path.empty()) {
    json_doc["run_id"] = manifest.run_id();
    json_doc["manifest"] = manifest.to_json();
    write_text_file(json_path, json_doc.dump(2) + "\n");
  }
  if (!manifest_anchor.empty()) {
    write_text_file(manifest_path(manifest_anchor), manifest.to_json().dump(2) + "\n");
  }
}

std::string anchor_of(const std::string& out, const std::string& json_path) {
  return out.empty() ? json_path : out;
}

std::string describe_example(const pcm::ViolationExample& ex) {
  std::string upper;
  for (double x : ex.matrix.upper_triangle()) {
    upper += (upper.empty() ? "" : ",") + pcm::format_entry(x);
  }
  return printf_string("CR %.6f, upper [", ex.cr) + upper +
         printf_string("], entry (%zu,%zu), pair (%zu,%zu)", ex.i + 1, ex.j + 1, ex.i + 1,
                       ex.k + 1);
}

}  // namespace

std::string factor_path(const std::string& out, double factor) {
  const fs::path p(out);
  const std::string tag = printf_string("_f%g", factor);
  return (p.parent_path() / (p.stem().string() + tag + p.extension().string())).string();
}

int run_analyze(const AnalyzeOptions& o) {
  RunManifest manifest;
  manifest.command = "analyze";
  manifest.started = utc_timestamp();
  const auto table = load_table(o.ri_table, pcm::parse_scale(o.scale));
  const auto a = pcm::read_matrix_file(o.path);
  manifest.config = {{"matrix", pcm::to_json(a)},
                     {"ri_table", pcm::to_json(table)}};

  const auto eigen = pcm::eigenvector_method(a);
  const auto rgm = pcm::row_geometric_mean(a);
  const std::size_t n = a.size();
  const double ci = pcm::consistency_index(eigen.lambda_max, n);

  std::cout << "n            " << n << '\n'
            << "digest       " << pcm::matrix_digest(a) << '\n'
            << printf_string("lambda_max   %.12f\n", eigen.lambda_max)
            << "EM weights   " << join_weights(eigen.weights.values()) << '\n'
            << "RGM weights  " << join_weights(rgm.values()) << '\n'
            << printf_string("CI           %.4f\n", ci);

  json inconsistency;
  if (table.contains(n)) {
    const double ri = table.at(n);
    const double cr = ci / ri;
    const bool ok = cr <= pcm::kAcceptableCr;
    std::cout << printf_string("CR           %.4f (RI_%zu = %.3f, %s)\n", cr, n, ri,
                               std::string(pcm::to_string(table.scale())).c_str())
              << "acceptable   " << (ok ? "yes" : "no")
              << printf_string(" (threshold %.1f)\n", pcm::kAcceptableCr);
    inconsistency = pcm::to_json(pcm::InconsistencyReport{n, eigen.lambda_max, ci, ri, cr, ok});
  } else {
    std::cout << "CR           n/a (no random index for n = " << n << ")\n";
    inconsistency = {{"n", n}, {"lambda_max", eigen.lambda_max}, {"ci", ci},
                     {"ri", nullptr},  {"cr", nullptr},                {"acceptable", nullptr}};
  }

  json doc = {{"schema", "pcm.analyze/1"},
              {"matrix", pcm::to_json(a)},
              {"eigenvector", pcm::to_json(eigen)},
              {"rgm_weights", std::vector<double>(rgm.values().begin(), rgm.values().end())},
              {"inconsistency", inconsistency}};
  publish(manifest, {}, o.json, std::move(doc), o.json);
  return 0;
}

int run_audit(const AuditOptions& o) {
  const std::vector<double> factors =
      o.factors.empty() ? std::vector<double>{pcm::kDefaultPerturbationFactor} : o.factors;
  require_factors(factors);
  const auto method = pcm::parse_method(o.method);
  RunManifest manifest;
  manifest.command = "audit";
  manifest.started = utc_timestamp();
  const auto a = pcm::read_matrix_file(o.path);
  manifest.config = {{"matrix", pcm::to_json(a)},
                     {"factors", factors},
                     {"method", std::string(pcm::to_string(method))},
                     {"margin", o.margin}};

  const auto scan = pcm::min_violation_factor_scan(a, factors, method, o.margin);
  json reports = json::array();
  for (const auto& [factor, report] : scan) {
    std::cout << printf_string("factor %g (%s): %s\n", factor,
                               std::string(pcm::to_string(method)).c_str(),
                               report.monotonic() ? "not detected" : "detected");
    for (const auto& v : report.violations) {
      std::cout << printf_string(
          "  VIOLATION: entry (%zu,%zu), pair (%zu,%zu)  w%zu/w%zu %.12g -> %.12g\n", v.i + 1,
          v.j + 1, v.i + 1, v.k + 1, v.i + 1, v.k + 1, v.ratio_before, v.ratio_after);
    }
    for (const auto& w : report.weak_violations) {
      std::cout << printf_string("  WEAK VIOLATION: entry (%zu,%zu), w%zu decreased\n", w.i + 1,
                                 w.j + 1, w.i + 1);
    }
    if (report.violations.empty() && report.weak_violations.empty()) {
      std::cout << "  no violations\n";
    }
    reports.push_back(pcm::to_json(report));
  }
  json doc = {{"schema", "pcm.audit/1"}, {"matrix", pcm::to_json(a)}, {"reports", reports}};
  publish(manifest, {}, o.json, std::move(doc), o.json);
  return 0;
}

int run_gen(const GenOptions& o) {
  if (o.count < 1) throw pcm::ValidationError("--count must be at least 1");
  if (o.count > 1 && o.out.empty()) {
    throw pcm::ValidationError("--count above 1 requires --out");
  }
  const pcm::GeneratorConfig config{o.n, pcm::parse_scale(o.scale), o.seed};
  const pcm::MatrixGenerator gen(config);
  RunManifest manifest;
  manifest.command = "gen";
  manifest.started = utc_timestamp();
  manifest.config = {{"n", o.n},
                     {"scale", o.scale},
                     {"seed", o.seed},
                     {"ordinal", o.ordinal},
                     {"count", o.count}};

  std::vector<std::pair<std::string, std::string>> files;
  for (std::uint64_t k = 0; k < o.count; ++k) {
    const auto a = gen.generate(o.ordinal + k);
    std::string text = printf_string("# seed %llu ordinal %llu scale %s\n",
                                     static_cast<unsigned long long>(o.seed),
                                     static_cast<unsigned long long>(o.ordinal + k),
                                     o.scale.c_str()) +
                       pcm::format_matrix(a);
    if (o.out.empty()) {
      std::cout << text;
      continue;
    }
    std::string path = o.out;
    if (o.count > 1) {
      const fs::path p(o.out);
      path = (p.parent_path() /
              (p.stem().string() + "_" + std::to_string(o.ordinal + k) + p.extension().string()))
                 .string();
    }
    files.emplace_back(std::move(path), std::move(text));
  }
  if (!o.out.empty()) publish(manifest, files, {}, {}, o.out);
  return 0;
}

int run_simulate(const SimulateOptions& o) {
  const std::vector<double> factors =
      o.factors.empty() ? std::vector<double>{pcm::kDefaultPerturbationFactor} : o.factors;
  require_factors(factors);
  if (factors.size() > 1 && o.out.empty()) {
    throw pcm::ValidationError("several factors require --out for the per-factor CSV files");
  }
  if (o.iterations < 1) throw pcm::ValidationError("--iters must be at least 1");

  pcm::SimulationConfig base;
  base.generator = {o.n, pcm::parse_scale(o.scale), o.seed};
  base.iterations = o.iterations;
  base.beta = o.beta;
  base.check_cap = o.cr_cap;
  base.overflow_at = o.overflow;
  base.margin = o.margin;
  base.eigen.tol = o.eigen_tol;
  base.method = pcm::parse_method(o.method);
  if (!o.ri_table.empty()) base.ri_table = load_table(o.ri_table, base.generator.scale);
  base.workers = o.workers;
  // Fail on table, size or binning problems before the first long run.
  (void)pcm::CrHistogram(o.beta, o.overflow);
  {
    const auto table =
        base.ri_table ? *base.ri_table : pcm::RandomIndexTable::builtin(base.generator.scale);
    (void)table.at(o.n);
  }

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.workers = o.workers;
  manifest.started = utc_timestamp();
  manifest.config = {{"n", o.n},
                     {"scale", o.scale},
                     {"seed", o.seed},
                     {"iterations", o.iterations},
                     {"beta", o.beta},
                     {"factors", factors},
                     {"cr_cap", o.cr_cap ? json(*o.cr_cap) : json(nullptr)},
                     {"overflow_at", o.overflow ? json(*o.overflow) : json(nullptr)},
                     {"method", std::string(pcm::to_string(base.method))},
                     {"margin", o.margin},
                     {"eigen_tol", o.eigen_tol},
                     {"ri_table", base.ri_table ? pcm::to_json(*base.ri_table) : json(nullptr)}};

  std::vector<std::pair<std::string, std::string>> files;
  json histograms = json::array();
  for (double factor : factors) {
    auto config = base;
    config.factor = factor;
    const auto h = pcm::run_simulation(config);
    const auto t = h.totals();
    std::cerr << printf_string(
        "simulate n=%zu %s factor %g: %llu binned, %llu violating (%.4f), %llu skipped, "
        "%llu failures, %llu boundary ties\n",
        o.n, o.scale.c_str(), factor, static_cast<unsigned long long>(t.total),
        static_cast<unsigned long long>(t.violating),
        t.total ? static_cast<double>(t.violating) / static_cast<double>(t.total) : 0.0,
        static_cast<unsigned long long>(h.skipped()),
        static_cast<unsigned long long>(h.failures()),
        static_cast<unsigned long long>(h.boundary_ties()));
    if (h.min_cr_example()) {
      std::cerr << "  smallest violating " << describe_example(*h.min_cr_example()) << '\n';
    }
    manifest.failures += h.failures();
    manifest.skipped += h.skipped();
    manifest.boundary_ties += h.boundary_ties();
    histograms.push_back({{"factor", factor}, {"histogram", pcm::to_json(h)}});
    if (o.out.empty()) {
      std::cout << h.to_csv();
    } else {
      files.emplace_back(factors.size() > 1 ? factor_path(o.out, factor) : o.out, h.to_csv());
    }
  }
  json doc = {{"schema", "pcm.simulate/1"}, {"results", histograms}};
  publish(manifest, files, o.json, std::move(doc), anchor_of(o.out, o.json));
  return 0;
}

int run_enumerate(const EnumerateOptions& o) {
  const std::vector<double> factors =
      o.factors.empty() ? std::vector<double>{pcm::kDefaultPerturbationFactor} : o.factors;
  require_factors(factors);
  if (factors.size() > 1 && o.out.empty()) {
    throw pcm::ValidationError("several factors require --out for the per-factor CSV files");
  }
  if (o.no_overflow && o.overflow) {
    throw pcm::ValidationError("--overflow and --no-overflow are mutually exclusive");
  }

  pcm::EnumerationConfig config;
  config.beta = o.beta;
  config.factors = factors;
  config.overflow_at = o.no_overflow ? std::nullopt : o.overflow ? o.overflow : 3.5;
  config.margin = o.margin;
  config.eigen.tol = o.eigen_tol;
  config.begin = o.begin;
  config.end = o.end == 0 ? pcm::kN4DiscreteCount : o.end;
  config.stride = o.stride;
  config.workers = o.workers;
  if (!o.checkpoint.empty()) config.checkpoint = o.checkpoint;
  if (o.checkpoint_every > 0) config.checkpoint_every = o.checkpoint_every;
  (void)pcm::CrHistogram(config.beta, config.overflow_at);
  if (!o.quiet) {
    config.progress = [](std::uint64_t done, std::uint64_t total) {
      std::cerr << printf_string("enumerated %llu / %llu (%.1f%%)\n",
                                 static_cast<unsigned long long>(done),
                                 static_cast<unsigned long long>(total),
                                 100.0 * static_cast<double>(done) / static_cast<double>(total));
    };
  }

  RunManifest manifest;
  manifest.command = "enumerate";
  manifest.workers = o.workers;
  manifest.started = utc_timestamp();
  manifest.config = {
      {"beta", config.beta},
      {"factors", factors},
      {"overflow_at", config.overflow_at ? json(*config.overflow_at) : json(nullptr)},
      {"margin", config.margin},
      {"eigen_tol", config.eigen.tol},
      {"begin", config.begin},
      {"end", config.end},
      {"stride", config.stride}};

  const auto result = pcm::enumerate_n4_discrete(config);
  std::cerr << printf_string("visited %llu matrices%s\n",
                             static_cast<unsigned long long>(result.visited),
                             result.resumed ? " (resumed from checkpoint)" : "");

  std::vector<std::pair<std::string, std::string>> files;
  json histograms = json::array();
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& h = result.histograms[f];
    const auto t = h.totals();
    std::cerr << printf_string(
        "factor %g: %llu binned, %llu violating, %llu failures, %llu boundary ties\n", factors[f],
        static_cast<unsigned long long>(t.total), static_cast<unsigned long long>(t.violating),
        static_cast<unsigned long long>(h.failures()),
        static_cast<unsigned long long>(h.boundary_ties()));
    if (h.min_cr_example()) {
      std::cerr << "  smallest violating " << describe_example(*h.min_cr_example()) << '\n';
    }
    manifest.failures += h.failures();
    manifest.boundary_ties += h.boundary_ties();
    histograms.push_back({{"factor", factors[f]}, {"histogram", pcm::to_json(h)}});
    if (o.out.empty()) {
      std::cout << h.to_csv();
    } else {
      files.emplace_back(factors.size() > 1 ? factor_path(o.out, factors[f]) : o.out,
                         h.to_csv());
    }
  }
  json doc = {{"schema", "pcm.enumerate/1"},
              {"visited", result.visited},
              {"results", histograms}};
  publish(manifest, files, o.json, std::move(doc), anchor_of(o.out, o.json));
  return 0;
}

int run_ri(const RiOptions& o) {
  if (o.sizes.empty()) throw pcm::ValidationError("--n is required");
  for (std::size_t n : o.sizes) {
    if (n < 3) throw pcm::ValidationError("random index needs n >= 3");
  }
  if (o.samples < 1) throw pcm::ValidationError("--samples must be at least 1");
  const auto scale = pcm::parse_scale(o.scale);

  RunManifest manifest;
  manifest.command = "ri";
  manifest.workers = o.workers;
  manifest.started = utc_timestamp();
  manifest.config = {{"n", o.sizes}, {"scale", o.scale}, {"samples", o.samples}, {"seed", o.seed}};

  std::map<std::size_t, double> values;
  std::string csv = "n,scale,samples,seed,ri\n";
  for (std::size_t n : o.sizes) {
    const double ri = pcm::estimate_random_index(n, scale, o.samples, o.seed, o.workers);
    values[n] = ri;
    std::cerr << printf_string("RI_%zu (%s, %llu samples, seed %llu) = %.4f\n", n,
                               o.scale.c_str(), static_cast<unsigned long long>(o.samples),
                               static_cast<unsigned long long>(o.seed), ri);
    csv += printf_string("%zu,%s,%llu,%llu,%.10f\n", n, o.scale.c_str(),
                         static_cast<unsigned long long>(o.samples),
                         static_cast<unsigned long long>(o.seed), ri);
  }
  if (o.out.empty()) std::cout << csv;

  json doc;
  if (!o.json.empty()) {
    // Loadable through --ri-table when the sizes form a valid table.
    doc = {{"schema", "pcm.ri/1"},
           {"scale", o.scale},
           {"values", json::object()},
           {"sample_size", o.samples}};
    for (const auto& [n, ri] : values) doc["values"][std::to_string(n)] = ri;
  }
  std::vector<std::pair<std::string, std::string>> files;
  if (!o.out.empty()) files.emplace_back(o.out, csv);
  publish(manifest, files, o.json, std::move(doc), anchor_of(o.out, o.json));
  return 0;
}

}  // namespace pcmaudit
