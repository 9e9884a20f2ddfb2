#include "run_manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "pcm/errors.hpp"
#include "pcm/version.hpp"

namespace pcmaudit {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string RunManifest::run_id() const {
  const std::string key = std::string(pcm::library_version()) + '\n' + command +
                          '\n' + config.dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(key)));
  return buf;
}

nlohmann::json RunManifest::to_json() const {
  return {{"schema", "pcm.manifest/1"},
          {"run_id", run_id()},
          {"tool_version", std::string(pcm::library_version())},
          {"command", command},
          {"config", config},
          {"workers", workers},
          {"started", started},
          {"finished", finished},
          {"outputs", outputs},
          {"failures", failures},
          {"skipped", skipped},
          {"boundary_ties", boundary_ties}};
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw pcm::IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.flush()) throw pcm::IoError("error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw pcm::IoError("cannot write " + path.string());
  }
}

}  // namespace pcmaudit
