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

// Experiment configuration: a JSON document with the sections
//   system, schedule, drives, grid, gate, sweep, output, seed.
// Every key is checked; unknown keys and wrong types are errors that name
// the offending field.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tripod/gates.hpp>
#include <tripod/pulses.hpp>

namespace tripodsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { lambda, tripod, two_atom };

std::string to_string(SystemKind kind);

struct SystemConfig {
  SystemKind kind = SystemKind::lambda;
  std::string initial_state = "j";
  double detuning = 0.0;
  double coupling = 0.0;  // two_atom only

  bool operator==(const SystemConfig&) const = default;
};

/// One drive field. The field on |2> follows the stokes timing, every other
/// field the pump timing. phi(t) = phase0 + slope * t.
struct DriveConfig {
  double omega_max = 0.0;
  double phase0 = 0.0;
  double slope = 0.0;

  bool operator==(const DriveConfig&) const = default;
};

struct GridConfig {
  std::optional<double> t_start;  // default: schedule start
  std::optional<double> t_end;    // default: last pulse off
  std::optional<double> base_step;  // default: min(tau / 200, 1 / peak omega_max)
  std::size_t sample_stride = 1;
  double convergence_tol = 1e-8;
  int max_halvings = 10;

  bool operator==(const GridConfig&) const = default;
};

struct GateConfig {
  tripod::GateKind kind = tripod::GateKind::phase;
  double omega_max = 200.0 * tripod::kPi;
  std::optional<double> omega_max_2;  // default: omega_max
  std::optional<double> target_phase;
  std::optional<double> slope;
  double coupling = 0.0;
  double detuning = 0.0;
  double convergence_tol = 1e-8;
  std::optional<double> base_step;

  bool operator==(const GateConfig&) const = default;
};

struct SweepAxis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 1;

  /// min, ..., max evenly spaced; a single point is min.
  std::vector<double> values() const;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepConfig {
  std::vector<SweepAxis> axes;

  bool operator==(const SweepConfig&) const = default;
};

struct OutputConfig {
  std::string trajectory = "trajectory.csv";
  std::string gate_report = "gate_report.json";
  std::string sweep = "sweep.csv";
  std::string phase = "phase.json";
  std::string manifest = "manifest.json";

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  SystemConfig system;
  tripod::StirapSchedule schedule;
  std::map<std::string, DriveConfig> drives;  // keyed by lower-level label
  GridConfig grid;
  std::optional<GateConfig> gate;
  std::optional<SweepConfig> sweep;
  OutputConfig output;
  std::uint64_t seed = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parameters a sweep axis may vary.
const std::vector<std::string>& sweep_parameters();

/// Throws ConfigError naming the field on malformed or out-of-range input.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Range and consistency checks shared by parse_config and programmatic
/// construction.
void validate_config(const ExperimentConfig& config);

}  // namespace tripodsim
