#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pcmaudit {

/// Provenance record written next to every output file.
///
/// The run id hashes the version and subcommand together with the parameter
/// echo, so two runs that must produce identical outputs share an id. The
/// worker count and file paths are recorded but not hashed: they never
/// change results.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  unsigned workers = 0;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;
  std::uint64_t boundary_ties = 0;

  [[nodiscard]] std::string run_id() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Current UTC time as ISO 8601 with second resolution.
[[nodiscard]] std::string utc_timestamp();

/// `<output>.manifest.json`
[[nodiscard]] std::filesystem::path manifest_path(const std::filesystem::path& output);

/// Writes `text` to `path` through a temporary file and a rename. Throws
/// pcm::IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pcmaudit
