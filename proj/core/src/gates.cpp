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

#include "tripod/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tripod/geomphase.hpp"
#include "tripod/systems.hpp"

namespace tripod {
namespace {

const double kHadamardAngle = kPi / 8.0;  // tan = sqrt(2) - 1

// Unitarity slack handed to unitary_fidelity; leakage is bounded separately
// by reconstruct_unitary.
constexpr double kReconstructedUnitarityTol = 0.25;

TripodSystem tripod_for(const GateSpec& spec) {
  const StirapSchedule& s = spec.schedule;
  TripodSystem sys;
  sys.detuning = spec.detuning;
  sys.drive_2 = stirap_drive(s, FieldRole::stokes, spec.omega_max_2, spec.ramp, "2");
  if (spec.kind == GateKind::hadamard) {
    sys.drive_0 = stirap_drive(s, FieldRole::pump, -spec.omega_max * std::sin(kHadamardAngle),
                               PhaseRamp::constant(0.0), "0");
    sys.drive_1 = stirap_drive(s, FieldRole::pump, spec.omega_max * std::cos(kHadamardAngle),
                               PhaseRamp::constant(0.0), "1");
  } else {
    sys.drive_0 = idle_drive("0");
    sys.drive_1 = stirap_drive(s, FieldRole::pump, spec.omega_max, PhaseRamp::constant(0.0), "1");
  }
  return sys;
}

TwoAtomTripod two_atom_for(const GateSpec& spec) {
  TwoAtomTripod sys;
  sys.atom_a = tripod_for(spec);
  sys.atom_b = sys.atom_a;
  sys.coupling = spec.coupling;
  return sys;
}

// theta2(t) from the actual pump/stokes amplitudes, continued where both vanish.
std::function<double(double)> mixing_theta(const GateSpec& spec) {
  const ScheduleTiming timing = build_schedule(spec.schedule);
  const DriveField pump =
      stirap_drive(spec.schedule, FieldRole::pump, spec.omega_max, PhaseRamp::constant(0.0), "1");
  const DriveField stokes =
      stirap_drive(spec.schedule, FieldRole::stokes, spec.omega_max_2, PhaseRamp::constant(0.0), "2");
  return [timing, pump, stokes](double t) {
    const MixingAngle m =
        schedule_mixing_angle(timing, pump.amplitude(t), stokes.amplitude(t), t);
    return std::asin(std::sqrt(std::clamp(m.sin2, 0.0, 1.0)));
  };
}

double sin4_integral(const GateSpec& spec) {
  TimeGrid g;
  g.t_start = spec.schedule.t_start;
  g.t_end = build_schedule(spec.schedule).t_end;
  g.base_step = spec.schedule.tau / 2000.0;
  return -two_qubit_phase(mixing_theta(spec), 1.0, g).value;
}

// Population outside the tripod dark subspace: |e> plus the component along
// the bright direction (conj Omega_0, conj Omega_1, conj Omega_2).
double tripod_adiabaticity(const TripodSystem& sys, const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const double t = traj.times[s];
    const CVector& a = traj.states[s].amplitudes();
    const Complex o0 = sys.drive_0.value(t);
    const Complex o1 = sys.drive_1.value(t);
    const Complex o2 = sys.drive_2.value(t);
    double outside = std::norm(a(3));
    const double r2 = std::norm(o0) + std::norm(o1) + std::norm(o2);
    if (r2 > 0.0) {
      const Complex proj = std::conj(o0) * a(0) + std::conj(o1) * a(1) + std::conj(o2) * a(2);
      outside += std::norm(proj) / r2;
    }
    worst = std::max(worst, outside);
  }
  return worst;
}

double two_atom_adiabaticity(const GateSpec& spec, const Trajectory& traj) {
  const auto theta = mixing_theta(spec);
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const double t = traj.times[s];
    const StateVector psi_i = to_interaction(traj.states[s], spec.coupling, t);
    const DressedBasis dark = two_atom_dark_states(theta(t), spec.coupling, t);
    double inside = 0.0;
    for (const auto& d : dark.states) inside += std::norm(d.inner(psi_i));
    worst = std::max(worst, psi_i.norm_squared() - inside);
  }
  return std::clamp(worst, 0.0, 1.0);
}

struct Runs {
  std::vector<StateVector> outputs;
  std::vector<Trajectory> trajectories;
};

Runs run_inputs(const GateSpec& spec) {
  Runs r;
  const BasisPtr basis = gate_basis(spec);
  for (const auto& label : computational_labels(spec.kind)) {
    Trajectory traj = propagate_gate(spec, StateVector::basis_state(basis, label));
    r.outputs.push_back(traj.final_state());
    r.trajectories.push_back(std::move(traj));
  }
  return r;
}

GateReport assemble(const GateSpec& spec, const Runs& runs, CMatrix target) {
  GateReport rep;
  rep.kind = spec.kind;
  rep.labels = computational_labels(spec.kind);
  rep.reconstructed = reconstruct_unitary(runs.outputs, rep.labels, &rep.leakage);
  rep.target = std::move(target);
  rep.fidelity = unitary_fidelity(rep.target, rep.reconstructed, kReconstructedUnitarityTol);
  rep.max_leakage = *std::max_element(rep.leakage.begin(), rep.leakage.end());
  for (const auto& traj : runs.trajectories) {
    rep.max_excited_population = std::max(rep.max_excited_population, traj.max_e_population);
    rep.norm_drift = std::max(rep.norm_drift, traj.norm_drift);
    rep.accepted_step =
        rep.accepted_step == 0.0 ? traj.step : std::min(rep.accepted_step, traj.step);
  }
  rep.requested_phase = spec.requested_phase;
  rep.t_start = spec.schedule.t_start;
  rep.t_end = build_schedule(spec.schedule).t_end;
  rep.outputs = runs.outputs;
  return rep;
}

void finish(GateReport& rep) {
  rep.phase_error = wrap_phase(rep.achieved_phase - rep.requested_phase);
  rep.low_confidence = rep.adiabaticity > kLowConfidenceThreshold;
}

void expect_kind(const GateSpec& spec, GateKind kind) {
  if (spec.kind != kind) {
    throw std::invalid_argument("gate spec is '" + to_string(spec.kind) + "', expected '" +
                                to_string(kind) + "'");
  }
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::phase: return "phase";
    case GateKind::hadamard: return "hadamard";
    case GateKind::controlled_phase: return "controlled_phase";
  }
  return "unknown";
}

GateKind parse_gate_kind(std::string_view name) {
  if (name == "phase") return GateKind::phase;
  if (name == "hadamard") return GateKind::hadamard;
  if (name == "controlled_phase") return GateKind::controlled_phase;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) +
                              "' (expected phase, hadamard or controlled_phase)");
}

void GateSpec::validate() const {
  schedule.validate();
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
    throw std::invalid_argument("gate: omega_max must be finite and > 0");
  }
  if (!(omega_max_2 > 0.0) || !std::isfinite(omega_max_2)) {
    throw std::invalid_argument("gate: omega_max_2 must be finite and > 0");
  }
  if (!std::isfinite(detuning)) throw std::invalid_argument("gate: detuning must be finite");
  if (!std::isfinite(coupling)) throw std::invalid_argument("gate: coupling must be finite");
  if (!(convergence_tol > 0.0)) throw std::invalid_argument("gate: convergence_tol must be > 0");
  if (base_step < 0.0) throw std::invalid_argument("gate: base_step must be >= 0");
  if (max_halvings < 1) throw std::invalid_argument("gate: max_halvings must be >= 1");
  if (kind != GateKind::controlled_phase && coupling != 0.0) {
    throw std::invalid_argument("gate: coupling applies to controlled_phase only");
  }
  if (kind == GateKind::hadamard &&
      std::abs(omega_max_2 - omega_max) > 1e-12 * std::max(omega_max, omega_max_2)) {
    throw std::invalid_argument(
        "hadamard: omega_max_2 must equal the combined omega_max of the |0> and |1> fields");
  }
  if (kind == GateKind::controlled_phase) {
    if (detuning != 0.0) throw std::invalid_argument("controlled_phase: detuning must be 0");
    if (ramp.kind != RampKind::constant || wrap_phase(ramp.phi0) != 0.0) {
      throw std::invalid_argument("controlled_phase: the |2> field must be real with a fixed phase 0");
    }
  }
}

TimeGrid GateSpec::grid() const {
  TimeGrid g;
  g.t_start = schedule.t_start;
  g.t_end = build_schedule(schedule).t_end;
  g.base_step = base_step > 0.0 ? base_step
                                : default_base_step(schedule.tau, std::max(omega_max, omega_max_2));
  g.sample_stride = 1;
  return g;
}

GateSpec GateSpec::phase_gate(double phi, const StirapSchedule& schedule, double omega_max) {
  schedule.validate();
  GateSpec g;
  g.kind = GateKind::phase;
  g.schedule = schedule;
  g.omega_max = omega_max;
  g.omega_max_2 = omega_max;
  g.ramp = PhaseRamp::linear(0.0, -phi / schedule.delta_T);
  g.requested_phase = phi;
  return g;
}

GateSpec GateSpec::hadamard(const StirapSchedule& schedule, double omega_max) {
  schedule.validate();
  GateSpec g;
  g.kind = GateKind::hadamard;
  g.schedule = schedule;
  g.omega_max = omega_max;
  g.omega_max_2 = omega_max;
  g.ramp = PhaseRamp::linear(0.0, kPi / schedule.delta_T);
  g.requested_phase = -kPi;
  return g;
}

GateSpec GateSpec::controlled_phase(double phi, const StirapSchedule& schedule, double coupling,
                                    double omega_max, double omega_max_2) {
  schedule.validate();
  GateSpec g;
  g.kind = GateKind::controlled_phase;
  g.schedule = schedule;
  g.omega_max = omega_max;
  g.omega_max_2 = omega_max;
  if (omega_max_2 > 0.0) g.omega_max_2 = omega_max_2;
  g.ramp = PhaseRamp::constant(0.0);
  g.coupling = coupling;
  g.requested_phase = phi;
  if (coupling == 0.0) {
    if (std::abs(wrap_phase(phi)) > 1e-12) {
      throw std::invalid_argument("controlled_phase: E = 0 gives no two-qubit phase");
    }
    return g;
  }
  // The integral grows one-for-one with delta_T once the sequences separate.
  g.schedule.delta_T = 2.0 * schedule.tau + schedule.delta_t + 0.1 * schedule.tau;
  const double i_min = sin4_integral(g);
  const double period = 2.0 * kPi / std::abs(coupling);
  double need = -phi / coupling;
  need += period * std::ceil((i_min - need) / period);
  g.schedule.delta_T += need - i_min;
  return g;
}

double predicted_two_qubit_phase(const GateSpec& spec) {
  return -spec.coupling * sin4_integral(spec);
}

CMatrix phase_gate_target(double phi) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

CMatrix hadamard_target() {
  CMatrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

CMatrix controlled_phase_target(double phi) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = std::polar(1.0, phi);
  return m;
}

CMatrix reconstruct_unitary(const std::vector<StateVector>& outputs,
                            const std::vector<std::string>& labels, std::vector<double>* leakage) {
  if (outputs.size() != labels.size() || outputs.empty()) {
    throw std::invalid_argument("reconstruct_unitary: need one output per computational label");
  }
  const auto d = static_cast<Eigen::Index>(labels.size());
  CMatrix m(d, d);
  std::vector<double> leak(labels.size());
  for (Eigen::Index k = 0; k < d; ++k) {
    const StateVector& out = outputs[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < d; ++i) m(i, k) = out.amplitude(labels[static_cast<std::size_t>(i)]);
    leak[static_cast<std::size_t>(k)] = std::max(0.0, out.norm_squared() - m.col(k).squaredNorm());
    if (leak[static_cast<std::size_t>(k)] > kMaxReconstructionLeakage) {
      std::ostringstream msg;
      msg << "reconstruct_unitary: output for |" << labels[static_cast<std::size_t>(k)]
          << "> leaks " << leak[static_cast<std::size_t>(k)] << " out of the computational subspace";
      throw LeakageError(msg.str());
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(m(i, i));
    if (a > 1e-8) {
      m *= std::conj(m(i, i)) / a;
      break;
    }
  }
  if (leakage) *leakage = std::move(leak);
  return m;
}

HamiltonianFn gate_hamiltonian(const GateSpec& spec) {
  spec.validate();
  if (spec.kind == GateKind::controlled_phase) {
    const TwoAtomTripod sys = two_atom_for(spec);
    return [sys](double t) { return two_atom_hamiltonian(sys, t); };
  }
  const TripodSystem sys = tripod_for(spec);
  return [sys](double t) { return tripod_hamiltonian(sys, t); };
}

BasisPtr gate_basis(const GateSpec& spec) {
  return spec.kind == GateKind::controlled_phase ? two_atom_basis() : tripod_basis();
}

std::vector<std::string> computational_labels(GateKind kind) {
  if (kind == GateKind::controlled_phase) return {"00", "01", "10", "11"};
  return {"0", "1"};
}

Trajectory propagate_gate(const GateSpec& spec, const StateVector& input) {
  auto [traj, report] =
      converge(gate_hamiltonian(spec), input, spec.grid(), spec.convergence_tol, spec.max_halvings);
  return std::move(traj);
}

GateReport run_phase_gate(const GateSpec& spec) {
  expect_kind(spec, GateKind::phase);
  const Runs runs = run_inputs(spec);
  GateReport rep = assemble(spec, runs, phase_gate_target(spec.requested_phase));
  rep.achieved_phase = std::arg(rep.reconstructed(1, 1) / rep.reconstructed(0, 0));
  const TripodSystem sys = tripod_for(spec);
  for (const auto& traj : runs.trajectories) {
    rep.adiabaticity = std::max(rep.adiabaticity, tripod_adiabaticity(sys, traj));
  }
  finish(rep);
  return rep;
}

GateReport run_hadamard(const GateSpec& spec) {
  expect_kind(spec, GateKind::hadamard);
  const Runs runs = run_inputs(spec);
  // Dark combination passes untouched, bright combination picks up the phase.
  const double c = std::cos(kHadamardAngle);
  const double s = std::sin(kHadamardAngle);
  CVector dark(2), bright(2);
  dark << c, s;
  bright << s, -c;
  const CMatrix target =
      dark * dark.adjoint() + std::polar(1.0, spec.requested_phase) * bright * bright.adjoint();
  GateReport rep = assemble(spec, runs, target);
  const Complex on_dark = dark.dot(rep.reconstructed * dark);
  const Complex on_bright = bright.dot(rep.reconstructed * bright);
  rep.achieved_phase = std::arg(on_bright / on_dark);
  const TripodSystem sys = tripod_for(spec);
  for (const auto& traj : runs.trajectories) {
    rep.adiabaticity = std::max(rep.adiabaticity, tripod_adiabaticity(sys, traj));
  }
  finish(rep);
  return rep;
}

GateReport run_controlled_phase(const GateSpec& spec) {
  expect_kind(spec, GateKind::controlled_phase);
  const Runs runs = run_inputs(spec);
  GateReport rep = assemble(spec, runs, controlled_phase_target(spec.requested_phase));
  const CMatrix& u = rep.reconstructed;
  rep.achieved_phase = std::arg(u(3, 3) / u(0, 0));
  rep.single_qubit_phases = {std::arg(u(1, 1) / u(0, 0)), std::arg(u(2, 2) / u(0, 0))};
  for (const auto& traj : runs.trajectories) {
    rep.adiabaticity = std::max(rep.adiabaticity, two_atom_adiabaticity(spec, traj));
  }
  finish(rep);
  return rep;
}

GateReport run_gate(const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::phase: return run_phase_gate(spec);
    case GateKind::hadamard: return run_hadamard(spec);
    case GateKind::controlled_phase: return run_controlled_phase(spec);
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace tripod
