#include "detmodes/io/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

#include "detmodes/errors.hpp"
#include "detmodes/io/field_file.hpp"

namespace detmodes::io {

namespace {

std::filesystem::path with_ext(std::filesystem::path p, const char* ext) {
  if (p.extension() == ".field" || p.extension() == ".json") p.replace_extension();
  p += ext;
  return p;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& stem, const nse::FlowState& state, const CheckpointMeta& meta) {
  const auto field_path = with_ext(stem, ".field");
  write_field(field_path, state.omega, "vorticity", state.t);
  nlohmann::ordered_json j;
  j["field"] = field_path.filename().string();
  j["field_sha256"] = sha256_file(field_path);
  j["n"] = state.grid().n();
  j["L"] = state.grid().length();
  j["t"] = state.t;
  j["nu"] = state.nu;
  j["dt"] = meta.dt;
  j["forcing"] = {{"kind", meta.forcing_kind}, {"amplitude", meta.forcing_amplitude}, {"shell", meta.forcing_shell}};
  j["seed"] = meta.seed;
  std::ofstream out(with_ext(stem, ".json"));
  if (!out) throw std::runtime_error("cannot write checkpoint sidecar for " + stem.string());
  out << j.dump(2) << "\n";
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  const auto sidecar = with_ext(path, ".json");
  const auto field_path = with_ext(path, ".field");
  std::ifstream in(sidecar);
  if (!in) throw std::runtime_error("cannot open checkpoint sidecar " + sidecar.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed checkpoint sidecar " + sidecar.string() + ": " + e.what());
  }
  FieldSnapshot snap = read_field(field_path);
  try {
    if (j.at("field_sha256").get<std::string>() != sha256_file(field_path)) {
      throw ChecksumError("field file " + field_path.string() + " does not match its sidecar");
    }
    Checkpoint cp{nse::FlowState{std::move(snap.field), snap.t, j.at("nu").get<double>()}, {}};
    cp.meta.t = snap.t;
    cp.meta.nu = cp.state.nu;
    cp.meta.dt = j.at("dt").get<double>();
    const auto& f = j.at("forcing");
    cp.meta.forcing_kind = f.at("kind").get<std::string>();
    cp.meta.forcing_amplitude = f.at("amplitude").get<double>();
    cp.meta.forcing_shell = f.at("shell").get<int>();
    cp.meta.seed = j.at("seed").get<std::uint64_t>();
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("incomplete checkpoint sidecar " + sidecar.string() + ": " + e.what());
  }
}

}  // namespace detmodes::io
