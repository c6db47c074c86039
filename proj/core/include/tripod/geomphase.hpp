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

// Geometric phases from connection integrals.
//
// One qubit: the Berry phase of the lambda dark state,
//   gamma = -integral sin^2(theta) dphi,
// integrated numerically over the schedule and, separately, in its closed
// form phi(t_a) - phi(t_a + delta_T) for four identical translated pulses.
//
// Two qubits: the coefficients of D5 and D6 in the degenerate dark space of
// the coupled tripods, driven by the Wilczek-Zee connection
//   dB_c/dt = -sum_b <D_c|dD_b/dt> B_b,
// and the adiabatic phase -E integral sin^4(theta2) dt.

#include <array>
#include <functional>
#include <vector>

#include "tripod/propagator.hpp"
#include "tripod/pulses.hpp"
#include "tripod/qcore.hpp"

namespace tripod {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // Richardson estimate |S_h - S_2h| / 15
};

/// Composite Simpson rule on a uniform grid of at least `intervals`
/// (rounded up to an even number) intervals.
QuadratureResult simpson(const std::function<double(double)>& f, double a, double b,
                         std::size_t intervals);

/// -integral sin^2(theta) (dphi/dt) dt over the full schedule support, with
/// the idle-value continuation of schedule_mixing_angle. Throws
/// std::invalid_argument for a non-monotonic ramp or quad_step <= 0.
QuadratureResult berry_phase_numeric(const StirapSchedule& schedule, const PhaseRamp& ramp,
                                     double quad_step);

/// phi(t_a) - phi(t_a + delta_T).
double berry_phase_closed_form(const PhaseRamp& ramp, double t_a, double delta_T);

/// Non-vanishing elements <D_c|dD_b/dt> among the six two-atom dark states.
/// All of them come from the e^{iEt} factor on |22>; time derivatives of
/// theta2 contribute nothing.
struct WzConnection {
  Complex d55;  // i E sin^4
  Complex d56;  // -(i/sqrt 2) E cos^2 sin^2
  Complex d65;  // -(i/sqrt 2) E cos^2 sin^2
  Complex d66;  // (i/2) E cos^4
};

WzConnection wz_connection(double theta2, double coupling);

/// B_1..B_6 of psi_I = sum_b B_b |D_b>.
struct WzCoefficients {
  std::array<Complex, 6> b{};

  double leakage() const { return std::norm(b[5]); }  // |B6|^2
  double phase() const { return std::arg(b[4]); }     // arg B5
  double norm_squared() const;
};

struct WzTrajectory {
  std::vector<double> times;
  std::vector<WzCoefficients> samples;
  double max_leakage = 0.0;
  double terminal_leakage = 0.0;
  double terminal_phase = 0.0;  // arg B5 at the end, (-pi, pi]
  double norm_drift = 0.0;

  const WzCoefficients& final_coefficients() const { return samples.back(); }
};

/// RK4 integration of the D5/D6 block from B = (0,0,0,0,1,0); B1..B4 are
/// constant. Same grid contract as propagate. Throws IntegrationError if
/// |sum |B|^2 - 1| exceeds 1e-6.
WzTrajectory wz_propagate(const std::function<double(double)>& theta2, double coupling,
                          const TimeGrid& grid);

/// -E integral sin^4(theta2) dt over the grid span by composite Simpson with
/// grid.base_step as the quadrature step.
QuadratureResult two_qubit_phase(const std::function<double(double)>& theta2, double coupling,
                                 const TimeGrid& grid);

/// theta(t) = asin(sqrt(sin^2 theta)) for equal pulses on a schedule.
std::function<double(double)> schedule_theta(const StirapSchedule& schedule);

/// Interaction picture to Schroedinger picture: |22> amplitude times e^{-iEt}.
StateVector transform_interaction(const StateVector& psi_interaction, double coupling, double t);
/// Inverse of transform_interaction.
StateVector to_interaction(const StateVector& psi, double coupling, double t);

}  // namespace tripod
