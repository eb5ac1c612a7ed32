#include "detmodes/io/manifest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "detmodes/io/field_file.hpp"

namespace detmodes::io {

namespace fs = std::filesystem;

std::vector<ManifestFile> list_outputs(const fs::path& dir) {
  std::vector<ManifestFile> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir);
    if (rel == kManifestName) continue;
    out.push_back({rel.generic_string(), sha256_file(entry.path()), entry.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

void write_manifest(const fs::path& dir, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["experiment"] = m.experiment;
  j["spec_hash"] = m.spec_hash;
  j["version"] = m.version;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["status"] = m.status == RunStatus::ok ? "ok" : "failed";
  if (!m.error.empty()) j["error"] = m.error;
  if (!m.verdict.empty()) j["verdict"] = m.verdict;
  j["inconclusive"] = m.inconclusive;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : m.files) {
    j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  std::ofstream out(dir / kManifestName);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << j.dump(2) << "\n";
}

RunManifest read_manifest(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  const auto j = nlohmann::json::parse(in);
  RunManifest m;
  m.experiment = j.at("experiment").get<std::string>();
  m.spec_hash = j.at("spec_hash").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.started = j.at("started").get<std::string>();
  m.finished = j.at("finished").get<std::string>();
  m.status = j.at("status").get<std::string>() == "ok" ? RunStatus::ok : RunStatus::failed;
  m.error = j.value("error", "");
  m.verdict = j.value("verdict", "");
  m.inconclusive = j.value("inconclusive", false);
  for (const auto& f : j.at("files")) {
    m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                       f.at("bytes").get<std::uintmax_t>()});
  }
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detmodes::io
