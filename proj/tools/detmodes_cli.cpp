#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "detmodes/errors.hpp"
#include "detmodes/io/execute.hpp"
#include "detmodes/io/run_spec.hpp"
#include "detmodes/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpec = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitInconclusive = 4;

struct RunOptions {
  std::string spec;
  std::string out;
  long long seed = -1;
  std::vector<std::string> sets;
};

int run_experiment(const std::string& name, const RunOptions& opt) {
  using namespace detmodes;
  std::vector<std::string> overrides = {"experiment=" + name};
  if (!opt.out.empty()) overrides.push_back("output.dir=" + opt.out);
  if (opt.seed >= 0) overrides.push_back("seed=" + std::to_string(opt.seed));
  overrides.insert(overrides.end(), opt.sets.begin(), opt.sets.end());

  io::RunSpec spec;
  try {
    if (opt.spec.empty()) {
      spec = io::parse_spec_text("{}", overrides);
    } else {
      spec = io::parse_spec(opt.spec, overrides);
    }
  } catch (const ConfigError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  }

  io::RunManifest m;
  try {
    m = io::execute(spec);
  } catch (const ConfigError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cout << m.experiment << " -> " << spec.output.dir << " (" << m.files.size() << " files)";
  if (!m.verdict.empty()) std::cout << " verdict: " << m.verdict;
  std::cout << "\n";
  if (m.status == io::RunStatus::failed) {
    std::cerr << "run failed: " << m.error << "\n";
    return kExitRuntime;
  }
  if (spec.experiment == io::Experiment::critical_q && m.inconclusive) return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral 2D Navier-Stokes experiments: determining modes and turbulence diagnostics"};
  app.set_version_flag("--version", std::string(detmodes::kVersion));
  app.require_subcommand(1);

  RunOptions opt;
  int exit_code = kExitOk;
  const char* experiments[] = {"simulate", "diagnose", "sync", "critical-q", "scaling", "calibrate-cb"};
  for (const char* name : experiments) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--spec", opt.spec, "JSON run spec")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (output.dir)");
    sub->add_option("--seed", opt.seed, "random seed (seed)")->check(CLI::NonNegativeNumber);
    sub->add_option("--set", opt.sets, "override a spec key, key=value")->take_all();
    sub->callback([&exit_code, &opt, name] { exit_code = run_experiment(name, opt); });
  }

  std::string checkpoint, csv_out;
  CLI::App* exp = app.add_subcommand("export-spectra", "write the shell spectrum of a checkpoint as CSV");
  exp->add_option("checkpoint", checkpoint, "checkpoint stem, .field or .json")->required();
  exp->add_option("--out", csv_out, "CSV path")->required();
  exp->callback([&] {
    try {
      detmodes::io::export_spectra(checkpoint, csv_out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      exit_code = kExitRuntime;
    }
  });

  CLI::App* keys = app.add_subcommand("keys", "list the accepted spec keys with their defaults");
  keys->callback([] { std::cout << detmodes::io::serialize_spec(detmodes::io::RunSpec{}); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitSpec;
  }
  return exit_code;
}
