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


#include <benchmark/benchmark.h>

#include <tripod/gates.hpp>
#include <tripod/geomphase.hpp>
#include <tripod/propagator.hpp>
#include <tripod/systems.hpp>

namespace {

using namespace tripod;

const StirapSchedule kSchedule{1.0, 1.0, 5.0, 0.0};
constexpr double kOmega = 200.0 * kPi;

LambdaSystem reference_lambda() {
  LambdaSystem sys;
  sys.drive_j = stirap_drive(kSchedule, FieldRole::pump, kOmega, PhaseRamp::constant(0.0), "j");
  sys.drive_2 = stirap_drive(kSchedule, FieldRole::stokes, kOmega, PhaseRamp::linear(0.0, 1.0), "2");
  return sys;
}

// One fixed-step pass over the reference schedule; range(0) halvings below the default step.
void BM_PropagateReference(benchmark::State& state) {
  const LambdaSystem sys = reference_lambda();
  const HamiltonianFn h = [sys](double t) { return lambda_hamiltonian(sys, t); };
  const ScheduleTiming timing = build_schedule(kSchedule);
  TimeGrid grid{timing.t_begin, timing.t_end, default_base_step(1.0, kOmega), 1000};
  for (long i = 0; i < state.range(0); ++i) grid = grid.halved();
  const StateVector psi0 = StateVector::basis_state(lambda_basis(), "j");
  for (auto _ : state) benchmark::DoNotOptimize(propagate(h, psi0, grid).final_state());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.step_count()));
}
BENCHMARK(BM_PropagateReference)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ConvergeReference(benchmark::State& state) {
  const LambdaSystem sys = reference_lambda();
  const HamiltonianFn h = [sys](double t) { return lambda_hamiltonian(sys, t); };
  const ScheduleTiming timing = build_schedule(kSchedule);
  const TimeGrid grid{timing.t_begin, timing.t_end, default_base_step(1.0, kOmega), 1000};
  const StateVector psi0 = StateVector::basis_state(lambda_basis(), "j");
  for (auto _ : state) benchmark::DoNotOptimize(converge(h, psi0, grid, 1e-8).second.accepted_step);
}
BENCHMARK(BM_ConvergeReference)->Unit(benchmark::kMillisecond);

void BM_TwoAtomHamiltonian(benchmark::State& state) {
  TripodSystem atom;
  atom.drive_1 = stirap_drive(kSchedule, FieldRole::pump, kOmega, PhaseRamp::constant(0.0), "1");
  atom.drive_2 = stirap_drive(kSchedule, FieldRole::stokes, kOmega, PhaseRamp::constant(0.0), "2");
  const TwoAtomTripod sys{atom, atom, 0.2};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_atom_hamiltonian(sys, t).matrix().data());
    t += 1e-3;
  }
}
BENCHMARK(BM_TwoAtomHamiltonian);

void BM_EigHermitian16(benchmark::State& state) {
  TripodSystem atom;
  atom.drive_1 = stirap_drive(kSchedule, FieldRole::pump, kOmega, PhaseRamp::constant(0.0), "1");
  atom.drive_2 = stirap_drive(kSchedule, FieldRole::stokes, kOmega, PhaseRamp::constant(0.0), "2");
  const HermitianOperator h = two_atom_hamiltonian({atom, atom, 0.2}, 1.7);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h).eigenvalues.data());
}
BENCHMARK(BM_EigHermitian16);

void BM_BerryQuadrature(benchmark::State& state) {
  const PhaseRamp ramp = PhaseRamp::linear(0.0, 1.0);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(berry_phase_numeric(kSchedule, ramp, step).value);
}
BENCHMARK(BM_BerryQuadrature)->Arg(200)->Arg(2000);

void BM_WzPropagate(benchmark::State& state) {
  const auto theta = schedule_theta(kSchedule);
  const ScheduleTiming timing = build_schedule(kSchedule);
  const TimeGrid grid{timing.t_begin, timing.t_end, 1.0 / 400.0, 100};
  for (auto _ : state) benchmark::DoNotOptimize(wz_propagate(theta, 0.2, grid).terminal_phase);
}
BENCHMARK(BM_WzPropagate);

void BM_PhaseGate(benchmark::State& state) {
  const GateSpec spec = GateSpec::phase_gate(-5.0, kSchedule, kOmega);
  for (auto _ : state) benchmark::DoNotOptimize(run_gate(spec).fidelity);
}
BENCHMARK(BM_PhaseGate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
