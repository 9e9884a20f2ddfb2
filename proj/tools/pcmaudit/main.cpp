#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "pcm/errors.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/version.hpp"
#include "pcm/weighting.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInvalid = 2, kNoConvergence = 3, kIo = 4 };

// Figure and table parameter sets. A preset only fills options the user
// did not give explicitly.
struct Preset {
  const char* command;
  double beta;
  std::optional<double> overflow;
  std::optional<double> cr_cap;
  std::vector<double> factors;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"fig2", {"simulate", 0.1, std::nullopt, std::nullopt, {1.01}}},
      {"fig3", {"enumerate", 0.1, 3.5, std::nullopt, {1.01}}},
      {"fig4", {"simulate", 0.02, std::nullopt, 0.4, {1.01}}},
      {"fig5", {"enumerate", 0.01, 3.5, std::nullopt, {1.001, 1.01, 1.1}}},
      {"table2", {"simulate", 0.1, std::nullopt, std::nullopt, {1.01}}},
  };
  return table;
}

const Preset& find_preset(const std::string& name, const std::string& command) {
  const auto it = presets().find(name);
  if (it == presets().end() || it->second.command != command) {
    throw pcm::ValidationError("preset '" + name + "' does not apply to " + command);
  }
  return it->second;
}

std::vector<std::string> preset_names(const std::string& command) {
  std::vector<std::string> names;
  for (const auto& [name, p] : presets()) {
    if (p.command == command) names.push_back(name);
  }
  return names;
}

bool given(const CLI::Option* opt) { return opt->count() > 0; }

}  // namespace

int main(int argc, char** argv) {
  using namespace pcmaudit;

  CLI::App app{"Pairwise comparison matrix auditor: consistency, eigenvector "
               "monotonicity, Monte Carlo and exhaustive sweeps"};
  app.set_version_flag("--version", std::string(pcm::library_version()));
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "Weights, CI and CR of a matrix file");
  a->add_option("file", analyze.path, "Matrix file")->required();
  a->add_option("--scale", analyze.scale, "Built-in random index table")
      ->check(CLI::IsMember({"discrete", "continuous"}));
  a->add_option("--ri-table", analyze.ri_table, "Random index table JSON");
  a->add_option("--json", analyze.json, "Write a JSON report");

  AuditOptions audit;
  audit.margin = pcm::kViolationMargin;
  auto* u = app.add_subcommand("audit", "Check a matrix for monotonicity violations");
  u->add_option("file", audit.path, "Matrix file")->required();
  u->add_option("--factor,--factors", audit.factors, "Perturbation factor(s), comma separated")
      ->delimiter(',');
  u->add_option("--method", audit.method, "em or rgm")
      ->check(CLI::IsMember({"em", "eigenvector", "rgm", "row_geometric_mean"}));
  u->add_option("--margin", audit.margin, "Relative decrease counted as a violation");
  u->add_option("--json", audit.json, "Write a JSON report");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Write random matrix files");
  g->add_option("--n", gen.n, "Matrix size")->required();
  g->add_option("--scale", gen.scale)->check(CLI::IsMember({"discrete", "continuous"}));
  g->add_option("--seed", gen.seed);
  g->add_option("--ordinal", gen.ordinal, "First draw ordinal");
  g->add_option("--count", gen.count, "Number of matrices");
  g->add_option("--out", gen.out, "Output file (an ordinal suffix is added when count > 1)");

  SimulateOptions sim;
  sim.margin = pcm::kViolationMargin;
  sim.eigen_tol = pcm::kBulkEigenTolerance;
  std::string sim_preset;
  auto* s = app.add_subcommand("simulate", "Monte Carlo violation histogram");
  s->add_option("--preset", sim_preset)->check(CLI::IsMember(preset_names("simulate")));
  s->add_option("--n", sim.n, "Matrix size")->required();
  s->add_option("--scale", sim.scale)->check(CLI::IsMember({"discrete", "continuous"}));
  s->add_option("--seed", sim.seed);
  s->add_option("--iters", sim.iterations, "Number of random matrices")->required();
  auto* s_beta = s->add_option("--beta", sim.beta, "CR bin width");
  auto* s_factor = s->add_option("--factor,--factors", sim.factors, "Perturbation factor(s)")
                       ->delimiter(',');
  auto* s_cap = s->add_option("--cr-cap", sim.cr_cap, "Skip audits for CR at or above this");
  auto* s_over = s->add_option("--overflow", sim.overflow, "Single bucket for CR at or above this");
  s->add_option("--method", sim.method)
      ->check(CLI::IsMember({"em", "eigenvector", "rgm", "row_geometric_mean"}));
  s->add_option("--margin", sim.margin);
  s->add_option("--eigen-tol", sim.eigen_tol);
  s->add_option("--ri-table", sim.ri_table, "Random index table JSON");
  s->add_option("--workers", sim.workers, "Threads (0 = hardware)");
  s->add_option("--out", sim.out, "CSV output (stdout if omitted)");
  s->add_option("--json", sim.json, "JSON output");

  EnumerateOptions en;
  en.margin = pcm::kViolationMargin;
  en.eigen_tol = pcm::kBulkEigenTolerance;
  std::string en_preset;
  auto* e = app.add_subcommand("enumerate", "Exhaustive sweep of 4x4 discrete matrices");
  e->add_option("--preset", en_preset)->check(CLI::IsMember(preset_names("enumerate")));
  auto* e_beta = e->add_option("--beta", en.beta, "CR bin width");
  auto* e_factor = e->add_option("--factor,--factors", en.factors, "Perturbation factor(s)")
                       ->delimiter(',');
  auto* e_over = e->add_option("--overflow", en.overflow, "Overflow bucket start (default 3.5)");
  e->add_flag("--no-overflow", en.no_overflow, "Keep every bin separate");
  e->add_option("--begin", en.begin, "First lexicographic index");
  e->add_option("--end", en.end, "One past the last index");
  e->add_option("--stride", en.stride, "Visit every stride-th index")->check(CLI::PositiveNumber);
  e->add_option("--margin", en.margin);
  e->add_option("--eigen-tol", en.eigen_tol);
  e->add_option("--checkpoint", en.checkpoint, "Checkpoint file to resume from and update");
  e->add_option("--checkpoint-every", en.checkpoint_every);
  e->add_option("--workers", en.workers, "Threads (0 = hardware)");
  e->add_flag("--quiet", en.quiet, "No progress on stderr");
  e->add_option("--out", en.out, "CSV output (stdout if omitted)");
  e->add_option("--json", en.json, "JSON output");

  RiOptions ri;
  ri.samples = 4'000'000;
  auto* r = app.add_subcommand("ri", "Estimate the random index");
  r->add_option("--n", ri.sizes, "Matrix size(s), comma separated")->delimiter(',')->required();
  r->add_option("--scale", ri.scale)->check(CLI::IsMember({"discrete", "continuous"}));
  r->add_option("--samples", ri.samples);
  r->add_option("--seed", ri.seed);
  r->add_option("--workers", ri.workers, "Threads (0 = hardware)");
  r->add_option("--out", ri.out, "CSV output (stdout if omitted)");
  r->add_option("--json", ri.json, "JSON table usable with --ri-table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*a) return run_analyze(analyze);
    if (*u) return run_audit(audit);
    if (*g) return run_gen(gen);
    if (*s) {
      if (!sim_preset.empty()) {
        const auto& p = find_preset(sim_preset, "simulate");
        if (!given(s_beta)) sim.beta = p.beta;
        if (!given(s_factor)) sim.factors = p.factors;
        if (!given(s_cap) && p.cr_cap) sim.cr_cap = p.cr_cap;
        if (!given(s_over) && p.overflow) sim.overflow = p.overflow;
      }
      return run_simulate(sim);
    }
    if (*e) {
      if (!en_preset.empty()) {
        const auto& p = find_preset(en_preset, "enumerate");
        if (!given(e_beta)) en.beta = p.beta;
        if (!given(e_factor)) en.factors = p.factors;
        if (!given(e_over) && !en.no_overflow) en.overflow = p.overflow;
      }
      return run_enumerate(en);
    }
    if (*r) return run_ri(ri);
  } catch (const pcm::ConvergenceError& err) {
    std::cerr << "error: " << err.what() << " (residual " << err.residual() << " after "
              << err.iterations() << " iterations)\n";
    return kNoConvergence;
  } catch (const pcm::IoError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIo;
  } catch (const pcm::ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvalid;
  } catch (const pcm::ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvalid;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
