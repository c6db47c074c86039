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


#pragma once

// The four subcommands. Each pure step (building systems, running, rendering
// CSV/JSON) is exposed separately from the file-writing entry points.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <tripod/gates.hpp>
#include <tripod/propagator.hpp>

#include "tripodsim/config.hpp"

namespace tripodsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitIntegrationFailure = 2,
  kExitPartialSweep = 3,
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned workers = 0;  // 0: all available cores
  bool verbose = false;
  std::string config_text;  // hashed into the manifest
};

// simulate
tripod::HamiltonianFn system_hamiltonian(const ExperimentConfig& c);
tripod::BasisPtr system_basis(const ExperimentConfig& c);
tripod::TimeGrid simulation_grid(const ExperimentConfig& c);
tripod::Trajectory simulate_trajectory(const ExperimentConfig& c);
/// Header t,pop_<label>...,phase_<label>...; undefined phases are empty.
std::string trajectory_csv(const tripod::Trajectory& traj);

// gate
tripod::GateSpec gate_spec_from(const ExperimentConfig& c);
std::string gate_report_json(const tripod::GateReport& report, const tripod::GateSpec& spec);

// sweep
using SweepPoint = std::vector<std::pair<std::string, double>>;
/// Grid points, first axis slowest.
std::vector<SweepPoint> sweep_points(const SweepConfig& sweep);
/// The config a standalone run of this point would use.
ExperimentConfig config_at(const ExperimentConfig& c, const SweepPoint& point);

struct SweepRow {
  SweepPoint point;
  std::optional<tripod::GateReport> report;
  std::string error;
  double wall_clock_seconds = 0.0;
};

/// Rows in grid order regardless of worker count.
std::vector<SweepRow> run_sweep(const ExperimentConfig& c, unsigned workers, bool verbose = false);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// phase
std::string phase_summary_json(const ExperimentConfig& c);

// Entry points: write outputs plus manifest into options.out_dir and return
// an exit code. Config and integration errors propagate as exceptions.
int cmd_simulate(const ExperimentConfig& c, const RunOptions& options);
int cmd_gate(const ExperimentConfig& c, const RunOptions& options);
int cmd_sweep(const ExperimentConfig& c, const RunOptions& options);
int cmd_phase(const ExperimentConfig& c, const RunOptions& options);

}  // namespace tripodsim
