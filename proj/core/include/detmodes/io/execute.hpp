#pragma once

#include <filesystem>

#include "detmodes/io/manifest.hpp"
#include "detmodes/io/run_spec.hpp"
#include "detmodes/lp/grid.hpp"
#include "detmodes/nse/flow_state.hpp"
#include "detmodes/nse/forcing.hpp"

namespace detmodes::io {

/// Runs the experiment into spec.output.dir and writes the manifest last.
///
/// Spec problems throw ConfigError (after a failed manifest is written when
/// the output directory already exists). Any other error during the run is
/// caught: partial outputs stay, the manifest is marked failed and returned.
RunManifest execute(const RunSpec& spec);

/// Shell spectrum of a checkpoint as CSV with columns
/// q, lambda_q, u_l2, omega_l2, omega_linf. Throws ChecksumError for a corrupt checkpoint.
void export_spectra(const std::filesystem::path& checkpoint, const std::filesystem::path& out);

/// The run's forcing and starting state as execute builds them.
nse::Forcing make_forcing(const RunSpec& spec, const lp::Grid& grid);
nse::FlowState initial_state(const RunSpec& spec, const lp::Grid& grid);

}  // namespace detmodes::io
