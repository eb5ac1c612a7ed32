#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "detmodes/nse/flow_state.hpp"

namespace detmodes::io {

/// Run metadata stored next to a vorticity snapshot.
struct CheckpointMeta {
  double t = 0.0;
  double nu = 0.0;
  double dt = 0.0;
  std::string forcing_kind = "none";
  double forcing_amplitude = 0.0;
  int forcing_shell = 0;
  std::uint64_t seed = 0;
};

struct Checkpoint {
  nse::FlowState state;
  CheckpointMeta meta;
};

/// Writes `<stem>.field` (vorticity) and `<stem>.json` (metadata plus the
/// field file's SHA-256).
void write_checkpoint(const std::filesystem::path& stem, const nse::FlowState& state, const CheckpointMeta& meta);

/// Accepts the stem or either file. Throws ChecksumError when the field file
/// is corrupt or does not match the sidecar.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace detmodes::io
