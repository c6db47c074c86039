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


#include "tripodsim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>
#include <tripod/geomphase.hpp>
#include <tripod/systems.hpp>

#include "tripodsim/output.hpp"

namespace tripodsim {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

tripod::PhaseRamp ramp_of(const DriveConfig& d) {
  return d.slope != 0.0 ? tripod::PhaseRamp::linear(d.phase0, d.slope)
                        : tripod::PhaseRamp::constant(d.phase0);
}

tripod::DriveField drive_of(const ExperimentConfig& c, const std::string& label) {
  const auto it = c.drives.find(label);
  if (it == c.drives.end() || it->second.omega_max == 0.0) return tripod::idle_drive(label);
  const auto role = label == "2" ? tripod::FieldRole::stokes : tripod::FieldRole::pump;
  return tripod::stirap_drive(c.schedule, role, it->second.omega_max, ramp_of(it->second), label);
}

tripod::TripodSystem tripod_of(const ExperimentConfig& c) {
  tripod::TripodSystem sys;
  sys.drive_0 = drive_of(c, "0");
  sys.drive_1 = drive_of(c, "1");
  sys.drive_2 = drive_of(c, "2");
  sys.detuning = c.system.detuning;
  return sys;
}

Json complex_matrix(const tripod::CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

void log(bool verbose, const std::string& line) {
  if (verbose) std::cerr << line << "\n";
}

int finish_manifest(const std::string& command, const ExperimentConfig& c,
                    const RunOptions& options, std::vector<std::string> outputs,
                    std::vector<ManifestRun> runs) {
  Manifest m;
  m.command = command;
  m.config_sha256 =
      sha256_hex(options.config_text.empty() ? serialize_config(c) : options.config_text);
  m.outputs = std::move(outputs);
  m.runs = std::move(runs);
  write_file(options.out_dir / c.output.manifest, manifest_json(m, options.out_dir));
  return kExitOk;
}

}  // namespace

tripod::BasisPtr system_basis(const ExperimentConfig& c) {
  switch (c.system.kind) {
    case SystemKind::lambda: return tripod::lambda_basis();
    case SystemKind::tripod: return tripod::tripod_basis();
    case SystemKind::two_atom: return tripod::two_atom_basis();
  }
  return tripod::lambda_basis();
}

tripod::HamiltonianFn system_hamiltonian(const ExperimentConfig& c) {
  switch (c.system.kind) {
    case SystemKind::lambda: {
      tripod::LambdaSystem sys;
      sys.drive_j = drive_of(c, "j");
      sys.drive_2 = drive_of(c, "2");
      sys.detuning = c.system.detuning;
      return [sys](double t) { return tripod::lambda_hamiltonian(sys, t); };
    }
    case SystemKind::tripod: {
      const tripod::TripodSystem sys = tripod_of(c);
      return [sys](double t) { return tripod::tripod_hamiltonian(sys, t); };
    }
    case SystemKind::two_atom: {
      tripod::TwoAtomTripod sys;
      sys.atom_a = tripod_of(c);
      sys.atom_b = sys.atom_a;
      sys.coupling = c.system.coupling;
      return [sys](double t) { return tripod::two_atom_hamiltonian(sys, t); };
    }
  }
  throw ConfigError("system.kind: unsupported");
}

tripod::TimeGrid simulation_grid(const ExperimentConfig& c) {
  const tripod::ScheduleTiming timing = tripod::build_schedule(c.schedule);
  tripod::TimeGrid g;
  g.t_start = c.grid.t_start.value_or(c.schedule.t_start);
  g.t_end = c.grid.t_end.value_or(timing.t_end);
  double peak = 0.0;
  for (const auto& [label, d] : c.drives) peak = std::max(peak, d.omega_max);
  g.base_step = c.grid.base_step.value_or(tripod::default_base_step(c.schedule.tau, peak));
  g.sample_stride = c.grid.sample_stride;
  if (!(g.t_end > g.t_start)) throw ConfigError("grid: t_end must be > t_start");
  return g;
}

tripod::Trajectory simulate_trajectory(const ExperimentConfig& c) {
  const auto psi0 = tripod::StateVector::basis_state(system_basis(c), c.system.initial_state);
  auto [traj, report] = tripod::converge(system_hamiltonian(c), psi0, simulation_grid(c),
                                         c.grid.convergence_tol, c.grid.max_halvings);
  return std::move(traj);
}

std::string trajectory_csv(const tripod::Trajectory& traj) {
  const auto& labels = traj.basis->labels();
  std::string out = "t";
  for (const auto& l : labels) out += ",pop_" + l;
  for (const auto& l : labels) out += ",phase_" + l;
  out += "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out += format_double(traj.times[s]);
    for (double p : traj.populations[s]) out += "," + format_double(p);
    for (const auto& ph : traj.phases[s]) {
      out += ",";
      if (ph) out += format_double(*ph);
    }
    out += "\n";
  }
  return out;
}

tripod::GateSpec gate_spec_from(const ExperimentConfig& c) {
  if (!c.gate) throw ConfigError("gate: section required");
  const GateConfig& g = *c.gate;
  const double delta_T = c.schedule.delta_T;
  const double omega_2 = g.omega_max_2.value_or(g.omega_max);
  tripod::GateSpec spec;
  try {
    switch (g.kind) {
      case tripod::GateKind::phase:
        if (g.slope) {
          spec.kind = tripod::GateKind::phase;
          spec.schedule = c.schedule;
          spec.ramp = tripod::PhaseRamp::linear(0.0, *g.slope);
          spec.requested_phase = g.target_phase.value_or(-*g.slope * delta_T);
        } else {
          spec = tripod::GateSpec::phase_gate(*g.target_phase, c.schedule, g.omega_max);
        }
        break;
      case tripod::GateKind::hadamard:
        spec = tripod::GateSpec::hadamard(c.schedule, g.omega_max);
        if (g.slope) spec.ramp = tripod::PhaseRamp::linear(0.0, *g.slope);
        spec.requested_phase = g.target_phase.value_or(-spec.ramp.slope * delta_T);
        break;
      case tripod::GateKind::controlled_phase:
        if (g.target_phase) {
          spec = tripod::GateSpec::controlled_phase(*g.target_phase, c.schedule, g.coupling,
                                                    g.omega_max, omega_2);
        } else {
          spec.kind = tripod::GateKind::controlled_phase;
          spec.schedule = c.schedule;
          spec.coupling = g.coupling;
          spec.omega_max = g.omega_max;
          spec.omega_max_2 = omega_2;
          spec.requested_phase = tripod::predicted_two_qubit_phase(spec);
        }
        break;
    }
    spec.omega_max = g.omega_max;
    spec.omega_max_2 = omega_2;
    spec.detuning = g.detuning;
    spec.convergence_tol = g.convergence_tol;
    spec.base_step = g.base_step.value_or(0.0);
    spec.max_halvings = c.grid.max_halvings;
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("gate: ") + e.what());
  }
  return spec;
}

std::string gate_report_json(const tripod::GateReport& r, const tripod::GateSpec& spec) {
  Json j;
  j["kind"] = tripod::to_string(r.kind);
  j["labels"] = r.labels;
  j["fidelity"] = r.fidelity;
  j["requested_phase"] = r.requested_phase;
  j["achieved_phase"] = r.achieved_phase;
  j["phase_error"] = r.phase_error;
  j["reconstructed"] = complex_matrix(r.reconstructed);
  j["target"] = complex_matrix(r.target);
  j["leakage"] = r.leakage;
  j["max_leakage"] = r.max_leakage;
  j["max_excited_population"] = r.max_excited_population;
  j["adiabaticity"] = r.adiabaticity;
  j["norm_drift"] = r.norm_drift;
  j["low_confidence"] = r.low_confidence;
  if (!r.single_qubit_phases.empty()) j["single_qubit_phases"] = r.single_qubit_phases;
  j["accepted_step"] = r.accepted_step;
  j["timing"] = {{"t_start", r.t_start},
                 {"t_end", r.t_end},
                 {"tau", spec.schedule.tau},
                 {"delta_t", spec.schedule.delta_t},
                 {"delta_T", spec.schedule.delta_T}};
  j["fields"] = {{"omega_max", spec.omega_max},
                 {"omega_max_2", spec.omega_max_2},
                 {"phase0", spec.ramp.phi0},
                 {"slope", spec.ramp.slope},
                 {"detuning", spec.detuning},
                 {"coupling", spec.coupling}};
  return j.dump(2) + "\n";
}

std::vector<SweepPoint> sweep_points(const SweepConfig& sweep) {
  std::vector<SweepPoint> points;
  const auto& axes = sweep.axes;
  const auto first = axes.at(0).values();
  const std::vector<double> second = axes.size() > 1 ? axes[1].values() : std::vector<double>{};
  for (double a : first) {
    if (axes.size() == 1) {
      points.push_back({{axes[0].parameter, a}});
      continue;
    }
    for (double b : second) points.push_back({{axes[0].parameter, a}, {axes[1].parameter, b}});
  }
  return points;
}

ExperimentConfig config_at(const ExperimentConfig& c, const SweepPoint& point) {
  ExperimentConfig out = c;
  if (!out.gate) throw ConfigError("sweep: a gate section is required");
  GateConfig& g = *out.gate;
  for (const auto& [name, v] : point) {
    if (name == "tau") out.schedule.tau = v;
    else if (name == "delta_t") out.schedule.delta_t = v;
    else if (name == "delta_T") out.schedule.delta_T = v;
    else if (name == "t_start") out.schedule.t_start = v;
    else if (name == "omega_max" || name == "omega_max_scale") {
      // Common mode: every field keeps its ratio to omega_max.
      const double factor = name == "omega_max" ? v / g.omega_max : v;
      g.omega_max *= factor;
      if (g.omega_max_2) *g.omega_max_2 *= factor;
    } else if (name == "coupling") g.coupling = v;
    else if (name == "detuning") g.detuning = v;
    else if (name == "target_phase") g.target_phase = v;
    else if (name == "slope") g.slope = v;
    else throw ConfigError("sweep: unknown parameter '" + name + "'");
  }
  out.sweep.reset();
  validate_config(out);
  return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& c, unsigned workers, bool verbose) {
  if (!c.sweep) throw ConfigError("sweep: section required");
  const std::vector<SweepPoint> points = sweep_points(*c.sweep);
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      SweepRow& row = rows[i];
      row.point = points[i];
      const auto t0 = Clock::now();
      try {
        row.report = tripod::run_gate(gate_spec_from(config_at(c, points[i])));
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.wall_clock_seconds = seconds_since(t0);
      if (verbose) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "sweep point " << i + 1 << "/" << points.size()
                  << (row.error.empty() ? "" : " failed: " + row.error) << "\n";
      }
    }
  };

  unsigned n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, points.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  if (rows.empty()) return out;
  for (const auto& [name, v] : rows.front().point) out += name + ",";
  out += "fidelity,achieved_phase,requested_phase,phase_error,max_leakage,"
         "max_excited_population,adiabaticity,low_confidence,error\n";
  for (const auto& row : rows) {
    for (const auto& [name, v] : row.point) out += format_double(v) + ",";
    if (row.report) {
      const auto& r = *row.report;
      for (double x : {r.fidelity, r.achieved_phase, r.requested_phase, r.phase_error,
                       r.max_leakage, r.max_excited_population, r.adiabaticity}) {
        out += format_double(x) + ",";
      }
      out += r.low_confidence ? "1," : "0,";
    } else {
      out += ",,,,,,,,";
    }
    out += csv_field(row.error) + "\n";
  }
  return out;
}

std::string phase_summary_json(const ExperimentConfig& c) {
  const tripod::ScheduleTiming timing = tripod::build_schedule(c.schedule);
  const auto it2 = c.drives.find("2");
  const tripod::PhaseRamp ramp =
      it2 != c.drives.end() ? ramp_of(it2->second) : tripod::PhaseRamp::constant(0.0);
  const double base = c.grid.base_step.value_or(c.schedule.tau / 200.0);

  Json j;
  j["schedule"] = {{"tau", c.schedule.tau},
                   {"delta_t", c.schedule.delta_t},
                   {"delta_T", c.schedule.delta_T},
                   {"t_start", c.schedule.t_start},
                   {"t_a", timing.t_a},
                   {"t_end", timing.t_end}};
  j["ramp"] = {{"phase0", ramp.phi0}, {"slope", ramp.slope}};
  const tripod::QuadratureResult numeric = tripod::berry_phase_numeric(c.schedule, ramp, base / 10.0);
  const double closed = tripod::berry_phase_closed_form(ramp, timing.t_a, timing.delta_T);
  j["berry_phase_numeric"] = numeric.value;
  j["berry_phase_numeric_error"] = numeric.error_estimate;
  j["berry_phase_closed_form"] = closed;
  j["difference"] = std::abs(numeric.value - closed);

  if (c.system.kind == SystemKind::two_atom) {
    const double e = c.system.coupling;
    const auto it1 = c.drives.find("1");
    const double pump = it1 != c.drives.end() ? it1->second.omega_max : 1.0;
    const double stokes = it2 != c.drives.end() ? it2->second.omega_max : 1.0;
    const auto pump_field = tripod::stirap_drive(c.schedule, tripod::FieldRole::pump, pump,
                                                 tripod::PhaseRamp::constant(0.0), "1");
    const auto stokes_field = tripod::stirap_drive(c.schedule, tripod::FieldRole::stokes, stokes,
                                                   tripod::PhaseRamp::constant(0.0), "2");
    auto theta = [timing, pump_field, stokes_field](double t) {
      const auto m = tripod::schedule_mixing_angle(timing, pump_field.amplitude(t),
                                                   stokes_field.amplitude(t), t);
      return std::asin(std::sqrt(std::clamp(m.sin2, 0.0, 1.0)));
    };
    tripod::TimeGrid g;
    g.t_start = c.schedule.t_start;
    g.t_end = timing.t_end;
    g.base_step = base;
    const tripod::QuadratureResult integral = tripod::two_qubit_phase(theta, e, g);
    const tripod::WzTrajectory wz = tripod::wz_propagate(theta, e, g);
    j["two_qubit"] = {{"coupling", e},
                      {"two_qubit_phase", integral.value},
                      {"two_qubit_phase_error", integral.error_estimate},
                      {"wz_terminal_phase", wz.terminal_phase},
                      {"wz_max_leakage", wz.max_leakage},
                      {"wz_terminal_leakage", wz.terminal_leakage},
                      {"wz_norm_drift", wz.norm_drift},
                      {"difference", std::abs(tripod::wrap_phase(wz.terminal_phase - integral.value))}};
  }
  return j.dump(2) + "\n";
}

int cmd_simulate(const ExperimentConfig& c, const RunOptions& options) {
  const auto t0 = Clock::now();
  const tripod::Trajectory traj = simulate_trajectory(c);
  write_file(options.out_dir / c.output.trajectory, trajectory_csv(traj));
  const double wall = seconds_since(t0);
  log(options.verbose, "simulate: " + std::to_string(traj.times.size()) + " samples, step " +
                           format_double(traj.step) + ", norm drift " +
                           format_double(traj.norm_drift) + ", max excited population " +
                           format_double(traj.max_e_population));
  return finish_manifest("simulate", c, options, {c.output.trajectory}, {{"simulate", wall}});
}

int cmd_gate(const ExperimentConfig& c, const RunOptions& options) {
  const auto t0 = Clock::now();
  const tripod::GateSpec spec = gate_spec_from(c);
  const tripod::GateReport report = tripod::run_gate(spec);
  write_file(options.out_dir / c.output.gate_report, gate_report_json(report, spec));
  const double wall = seconds_since(t0);
  log(options.verbose, "gate " + tripod::to_string(report.kind) + ": fidelity " +
                           format_double(report.fidelity) + ", achieved phase " +
                           format_double(report.achieved_phase) +
                           (report.low_confidence ? " (low confidence)" : ""));
  return finish_manifest("gate", c, options, {c.output.gate_report}, {{"gate", wall}});
}

int cmd_sweep(const ExperimentConfig& c, const RunOptions& options) {
  const std::vector<SweepRow> rows = run_sweep(c, options.workers, options.verbose);
  write_file(options.out_dir / c.output.sweep, sweep_csv(rows));
  std::vector<ManifestRun> runs;
  bool failed = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    runs.push_back({"row " + std::to_string(i), rows[i].wall_clock_seconds});
    failed = failed || !rows[i].error.empty();
  }
  finish_manifest("sweep", c, options, {c.output.sweep}, std::move(runs));
  return failed ? kExitPartialSweep : kExitOk;
}

int cmd_phase(const ExperimentConfig& c, const RunOptions& options) {
  const auto t0 = Clock::now();
  const std::string summary = phase_summary_json(c);
  write_file(options.out_dir / c.output.phase, summary);
  log(options.verbose, summary);
  return finish_manifest("phase", c, options, {c.output.phase}, {{"phase", seconds_since(t0)}});
}

}  // namespace tripodsim
