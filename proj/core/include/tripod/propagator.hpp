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

// Fixed-step integration of i d(psi)/dt = H(t) psi with the classical
// fourth-order Runge-Kutta scheme, a step-halving convergence ladder, and
// observable extraction.
//
// The norm is never renormalized. Its drift is reported and a drift above
// PropagateOptions::max_norm_drift raises IntegrationError.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripod/qcore.hpp"
#include "tripod/systems.hpp"

namespace tripod {

/// Integration-quality failure: norm drift or an exhausted refinement ladder.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using HamiltonianFn = std::function<HermitianOperator(double)>;

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  double base_step = 1e-3;
  std::size_t sample_stride = 1;

  /// Throws std::invalid_argument unless t_end > t_start, base_step > 0 and
  /// sample_stride >= 1.
  void validate() const;
  /// ceil((t_end - t_start) / base_step); the actual step divides the span evenly.
  std::size_t step_count() const;
  double step() const;
  /// Exactly twice the steps, sampled at the same times.
  TimeGrid halved() const;

  bool operator==(const TimeGrid&) const = default;
};

/// Starting step for a convergence ladder: min(tau / 200, 1 / omega_peak).
/// Coarser steps leave the bright-state oscillation unresolved and the first
/// refinement distances are not yet in the fourth-order regime.
double default_base_step(double tau, double omega_peak);

/// Populations and unwrapped phases, one row per stored sample.
struct Observables {
  std::vector<std::vector<double>> populations;
  std::vector<std::vector<std::optional<double>>> phases;
};

struct Trajectory {
  BasisPtr basis;
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<std::vector<double>> populations;
  std::vector<std::vector<std::optional<double>>> phases;
  double norm_drift = 0.0;        // max_t | ||psi(t)||^2 - 1 |
  double max_e_population = 0.0;  // summed over levels whose label contains 'e'
  double step = 0.0;

  const StateVector& final_state() const { return states.back(); }
  std::size_t column(std::string_view label) const { return basis->index_of(label); }
};

struct PropagateOptions {
  double max_norm_drift = 1e-6;
  bool check_norm = true;
  double population_floor = kPopulationFloor;
};

/// Stores every sample_stride-th step plus the final state. Deterministic in
/// (H, psi0, grid).
Trajectory propagate(const HamiltonianFn& h, const StateVector& psi0, const TimeGrid& grid,
                     const PropagateOptions& options = {});

struct ConvergenceReport {
  std::vector<double> steps;      // step sizes tried, coarse to fine
  std::vector<double> distances;  // ||psi_h(T) - psi_{h/2}(T)|| for consecutive pairs
  double accepted_step = 0.0;
  bool converged = false;
};

/// Halves the step until two successive terminal states differ by at most
/// `tol` in vector norm, up to `max_halvings` halvings. Returns the finer
/// trajectory of the accepted pair. Throws IntegrationError when the ladder
/// is exhausted or the accepted trajectory fails the norm check.
std::pair<Trajectory, ConvergenceReport> converge(const HamiltonianFn& h, const StateVector& psi0,
                                                  const TimeGrid& grid, double tol,
                                                  int max_halvings = 10,
                                                  const PropagateOptions& options = {});

/// Per-level populations and unwrapped phases.
///
/// A phase is undefined while its population is at or below `floor`.
/// Consecutive defined samples are unwrapped so they differ by less than pi.
/// After an undefined gap the phase is placed on the 2 pi branch nearest the
/// last defined value extrapolated across the gap. The extrapolation rate is
/// the mean rate over the final stretch of the preceding defined run, of
/// length one eighth of the gap.
Observables extract_observables(const std::vector<double>& times,
                                const std::vector<StateVector>& states,
                                double floor = kPopulationFloor);
Observables extract_observables(const Trajectory& traj, double floor = kPopulationFloor);

/// Largest population found outside span(dressed_states(t)) over the stored
/// samples. The dressed states at each time must be orthonormal.
double adiabaticity_report(const Trajectory& traj,
                           const std::function<DressedBasis(double)>& dressed_states);

}  // namespace tripod
