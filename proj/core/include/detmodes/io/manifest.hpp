#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace detmodes::io {

struct ManifestFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
  bool operator==(const ManifestFile&) const = default;
};

enum class RunStatus { ok, failed };

struct RunManifest {
  std::string experiment;
  std::string spec_hash;
  std::string version;
  std::string started;   // ISO 8601, UTC
  std::string finished;
  RunStatus status = RunStatus::ok;
  std::string error;
  std::string verdict;        // sync verdict or critical-q outcome, empty otherwise
  bool inconclusive = false;  // some verdict of the run was inconclusive
  std::vector<ManifestFile> files;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Every regular file under `dir` except the manifest, sorted by path.
std::vector<ManifestFile> list_outputs(const std::filesystem::path& dir);

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& file);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace detmodes::io
