// Copyright 2026 The kerrsqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "kerrsqueeze/evolve.hpp"
#include "kerrsqueeze/fit.hpp"
#include "kerrsqueeze/mle.hpp"
#include "kerrsqueeze/table_io.hpp"

namespace ks = kerrsqueeze;
namespace cli = kerrsqueeze::cli;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kFatal = 4 };

int fail(int code, const std::string& what) {
  std::cerr << "kerrsqueeze: error: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr-oscillator squeezing simulator", "kerrsqueeze"};
  app.set_version_flag("--version", std::string(KERRSQUEEZE_VERSION));
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  int workers = 1;
  std::uint64_t seed = 0;
  const std::vector<std::pair<std::string, void (*)(const cli::Config&, const cli::RunContext&)>> commands{
      {"evolve", cli::cmd_evolve},
      {"protocol", cli::cmd_protocol},
      {"sweep", cli::cmd_sweep},
      {"reconstruct", cli::cmd_reconstruct},
  };
  const std::map<std::string, std::string> help{
      {"evolve", "Time evolution of a single state; writes trajectory.csv"},
      {"protocol", "Cyclic or Trotter squeezing; writes Wigner grids and fits.json"},
      {"sweep", "Parameter sweep; writes sweep.csv and sweep.meta.json"},
      {"reconstruct", "Maximum-likelihood state from a Wigner CSV"},
  };
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", seed, "Seed for noise injection")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    const cli::Config config = cli::load_config(config_path);
    cli::OutputSet out(out_dir);
    cli::RunContext ctx{&out, workers, seed};
    for (const auto& [name, fn] : commands) {
      if (name == command) fn(config, ctx);
    }
    cli::ManifestInfo info;
    info.command = command;
    info.config_path = config_path;
    info.config_sha256 = config.sha256;
    info.seed = seed;
    info.workers = workers;
    info.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cli::write_manifest(out, info);
  } catch (const cli::ConfigError& e) {
    return fail(kConfig, e.what());
  } catch (const ks::SchemaError& e) {
    return fail(kConfig, e.what());
  } catch (const ks::InvalidParameter& e) {
    return fail(kConfig, std::string("invalid parameter: ") + e.what());
  } catch (const ks::InvalidDimension& e) {
    return fail(kConfig, std::string("invalid dimension: ") + e.what());
  } catch (const ks::TruncationFault& e) {
    return fail(kNumerical, std::string("truncation fault: ") + e.what() + " (leakage " +
                                std::to_string(e.leakage()) + "); increase dim");
  } catch (const ks::UnderDetermined& e) {
    return fail(kNumerical, std::string("under-determined: ") + e.what());
  } catch (const ks::FitFailure& e) {
    return fail(kNumerical, std::string("fit failure: ") + e.what());
  } catch (const ks::Error& e) {
    return fail(kNumerical, std::string("numerical fault: ") + e.what());
  } catch (const std::exception& e) {
    return fail(kFatal, e.what());
  }
  return kOk;
}
