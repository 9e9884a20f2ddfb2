#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcmaudit {

// Option values as parsed from the command line. Empty strings mean "not
// given". Each run_* function validates its options before doing any work,
// writes its outputs and returns the process exit status.

struct AnalyzeOptions {
  std::string path;
  std::string scale = "discrete";
  std::string ri_table;
  std::string json;
};

struct AuditOptions {
  std::string path;
  std::vector<double> factors;
  std::string method = "em";
  double margin = 0.0;
  std::string json;
};

struct GenOptions {
  std::size_t n = 0;
  std::string scale = "discrete";
  std::uint64_t seed = 1;
  std::uint64_t ordinal = 0;
  std::uint64_t count = 1;
  std::string out;
};

struct SimulateOptions {
  std::size_t n = 0;
  std::string scale = "discrete";
  std::uint64_t seed = 1;
  std::uint64_t iterations = 0;
  double beta = 0.1;
  std::vector<double> factors;
  std::optional<double> cr_cap;
  std::optional<double> overflow;
  std::string method = "em";
  double margin = 0.0;
  double eigen_tol = 0.0;
  std::string ri_table;
  unsigned workers = 0;
  std::string out;
  std::string json;
};

struct EnumerateOptions {
  double beta = 0.1;
  std::vector<double> factors;
  std::optional<double> overflow;
  bool no_overflow = false;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t stride = 1;
  double margin = 0.0;
  double eigen_tol = 0.0;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0;
  unsigned workers = 0;
  bool quiet = false;
  std::string out;
  std::string json;
};

struct RiOptions {
  std::vector<std::size_t> sizes;
  std::string scale = "discrete";
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string json;
};

int run_analyze(const AnalyzeOptions& o);
int run_audit(const AuditOptions& o);
int run_gen(const GenOptions& o);
int run_simulate(const SimulateOptions& o);
int run_enumerate(const EnumerateOptions& o);
int run_ri(const RiOptions& o);

/// Output path for one factor of a multi-factor run: "out.csv" with factor
/// 1.01 becomes "out_f1.01.csv".
[[nodiscard]] std::string factor_path(const std::string& out, double factor);

}  // namespace pcmaudit
