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

// Shared scenario builders for the unit tests.

#include <tripod/propagator.hpp>
#include <tripod/pulses.hpp>
#include <tripod/systems.hpp>

namespace tripod::testing {

inline constexpr double kReferenceOmega = 200.0 * kPi;

inline StirapSchedule reference_schedule() { return {1.0, 1.0, 5.0, 0.0}; }

/// Lambda system with the pump on |j>, the stokes on |2> and phi(t) = slope t
/// on the stokes field.
inline LambdaSystem reference_lambda(const StirapSchedule& s = reference_schedule(),
                                     double omega = kReferenceOmega, double slope = 1.0) {
  LambdaSystem sys;
  sys.drive_j = stirap_drive(s, FieldRole::pump, omega, PhaseRamp::constant(0.0), "j");
  sys.drive_2 = stirap_drive(s, FieldRole::stokes, omega, PhaseRamp::linear(0.0, slope), "2");
  return sys;
}

inline HamiltonianFn lambda_fn(const LambdaSystem& sys) {
  return [sys](double t) { return lambda_hamiltonian(sys, t); };
}

inline TimeGrid schedule_grid(const StirapSchedule& s, double omega, std::size_t stride = 1) {
  const ScheduleTiming timing = build_schedule(s);
  return {timing.t_begin, timing.t_end, default_base_step(s.tau, omega), stride};
}

}  // namespace tripod::testing
