// Copyright 2026 The Tripod Authors
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


// tripodsim {simulate,gate,sweep,phase} --config <file> [--out <dir>]
//           [--workers <n>] [--verbose]

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <tripod/gates.hpp>
#include <tripod/propagator.hpp>

#include "tripodsim/commands.hpp"
#include "tripodsim/config.hpp"
#include "tripodsim/output.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  unsigned workers = 0;
  bool verbose = false;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Args& args) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", args.config, "experiment configuration (JSON)")->required();
  sub->add_option("--out", args.out, "output directory");
  sub->add_option("--workers", args.workers, "parallel workers for sweeps (0: all cores)");
  sub->add_flag("--verbose", args.verbose, "progress and diagnostics on stderr");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tripodsim;

  CLI::App app{"Geometric-phase gates on tripod atoms"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Args args;
  CLI::App* simulate = add_command(app, "simulate", "propagate one state, write a trajectory CSV", args);
  CLI::App* gate = add_command(app, "gate", "run a gate protocol, write a gate report", args);
  CLI::App* sweep = add_command(app, "sweep", "run a gate over a 1- or 2-axis grid", args);
  CLI::App* phase = add_command(app, "phase", "Berry and two-qubit phase oracles", args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    RunOptions options;
    options.out_dir = args.out;
    options.workers = args.workers;
    options.verbose = args.verbose;
    try {
      options.config_text = read_file(args.config);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    const ExperimentConfig config = parse_config(options.config_text);
    std::filesystem::create_directories(options.out_dir);

    if (simulate->parsed()) return cmd_simulate(config, options);
    if (gate->parsed()) return cmd_gate(config, options);
    if (sweep->parsed()) return cmd_sweep(config, options);
    if (phase->parsed()) return cmd_phase(config, options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const tripod::IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const tripod::LeakageError& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIntegrationFailure;
  }
  return kExitConfigError;
}
