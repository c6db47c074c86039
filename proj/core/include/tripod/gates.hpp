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

// Geometric gates on tripod qubits {|0>, |1>}.
//
//   phase             |1> picks up the Berry phase of a double STIRAP on
//                     (Omega_1, Omega_2); |0> is never coupled.
//   hadamard          all three fields on; the bright combination of |0>, |1>
//                     is cycled through |2> and returns with phase -pi.
//   controlled_phase  two coupled tripods driven on (Omega_1, Omega_2) with
//                     real fields; |11> picks up -E integral sin^4(theta2).
//
// Each run propagates the computational basis states through the full
// Hamiltonian, reconstructs the gate matrix and compares it to the target.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tripod/propagator.hpp"
#include "tripod/pulses.hpp"
#include "tripod/qcore.hpp"

namespace tripod {

enum class GateKind { phase, hadamard, controlled_phase };

std::string to_string(GateKind kind);
/// Accepts "phase", "hadamard" and "controlled_phase".
GateKind parse_gate_kind(std::string_view name);

/// Raised by reconstruct_unitary when an output leaves the computational
/// subspace by more than kMaxReconstructionLeakage.
class LeakageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxReconstructionLeakage = 0.05;
inline constexpr double kLowConfidenceThreshold = 1e-3;

struct GateSpec {
  GateKind kind = GateKind::phase;
  StirapSchedule schedule;
  /// Peak of the field on |1> (phase, controlled_phase) or of the combined
  /// sqrt(Omega_0^2 + Omega_1^2) (hadamard).
  double omega_max = 200.0 * kPi;
  double omega_max_2 = 200.0 * kPi;  // peak of the field on |2>
  PhaseRamp ramp;                    // phase of the field on |2>
  double detuning = 0.0;
  double coupling = 0.0;  // E, controlled_phase only
  double requested_phase = 0.0;
  double convergence_tol = 1e-8;
  double base_step = 0.0;  // 0 selects default_base_step
  int max_halvings = 10;

  /// Throws std::invalid_argument when the kind's field constraints fail.
  void validate() const;
  TimeGrid grid() const;

  /// Linear ramp with -slope * delta_T = phi.
  static GateSpec phase_gate(double phi, const StirapSchedule& schedule,
                             double omega_max = 200.0 * kPi);
  /// Ramp slope pi / delta_T, so the bright combination returns with phase -pi.
  static GateSpec hadamard(const StirapSchedule& schedule, double omega_max = 200.0 * kPi);
  /// Keeps `coupling` and retunes delta_T so -E integral sin^4 = phi (mod 2 pi),
  /// taking the shortest admissible delta_T. E = 0 only admits phi = 0.
  /// omega_max_2 = 0 means equal peaks.
  static GateSpec controlled_phase(double phi, const StirapSchedule& schedule, double coupling,
                                   double omega_max = 200.0 * kPi, double omega_max_2 = 0.0);

  bool operator==(const GateSpec&) const = default;
};

struct GateReport {
  GateKind kind = GateKind::phase;
  std::vector<std::string> labels;  // computational basis, column order
  CMatrix reconstructed;
  CMatrix target;
  double fidelity = 0.0;
  std::vector<double> leakage;  // per input basis state
  double max_leakage = 0.0;
  double max_excited_population = 0.0;
  double adiabaticity = 0.0;  // worst population outside the dark subspace
  double norm_drift = 0.0;
  double requested_phase = 0.0;
  double achieved_phase = 0.0;  // (-pi, pi]
  double phase_error = 0.0;     // wrapped achieved - requested
  /// controlled_phase: phases of |01> and |10> relative to |00>.
  std::vector<double> single_qubit_phases;
  bool low_confidence = false;
  double t_start = 0.0;
  double t_end = 0.0;
  double accepted_step = 0.0;
  std::vector<StateVector> outputs;
};

/// -E integral sin^4(theta2) dt over the gate's schedule, theta2 taken from
/// the |1> and |2> field amplitudes.
double predicted_two_qubit_phase(const GateSpec& spec);

/// Target matrices on the computational basis.
CMatrix phase_gate_target(double phi);
CMatrix hadamard_target();
CMatrix controlled_phase_target(double phi);

/// Columns are the computational amplitudes of each output, in `labels`
/// order; the first diagonal entry with modulus above 1e-8 is made real and
/// positive. `leakage` receives 1 - (computational norm) per column.
CMatrix reconstruct_unitary(const std::vector<StateVector>& outputs,
                            const std::vector<std::string>& labels,
                            std::vector<double>* leakage = nullptr);

/// Hamiltonian and basis of the system a gate acts on.
HamiltonianFn gate_hamiltonian(const GateSpec& spec);
BasisPtr gate_basis(const GateSpec& spec);
std::vector<std::string> computational_labels(GateKind kind);

/// Converged propagation of one input through the gate's pulses.
Trajectory propagate_gate(const GateSpec& spec, const StateVector& input);

GateReport run_phase_gate(const GateSpec& spec);
GateReport run_hadamard(const GateSpec& spec);
GateReport run_controlled_phase(const GateSpec& spec);
GateReport run_gate(const GateSpec& spec);

}  // namespace tripod
