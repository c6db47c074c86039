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


#include <cmath>

#include <gtest/gtest.h>
#include <tripod/geomphase.hpp>

#include "fixtures.hpp"
#include "test_util.hpp"

namespace tripod {
namespace {

using testing::Rng;

StirapSchedule random_schedule(Rng& rng) {
  StirapSchedule s;
  s.tau = testing::uniform(rng, 0.3, 3.0);
  s.delta_t = testing::uniform(rng, 0.1, 1.9) * s.tau;
  s.delta_T = 2.0 * s.tau + s.delta_t + testing::uniform(rng, 0.05, 5.0);
  s.t_start = testing::uniform(rng, -4.0, 4.0);
  return s;
}

TimeGrid support_grid(const StirapSchedule& s, double step) {
  const ScheduleTiming t = build_schedule(s);
  return {t.t_begin, t.t_end, step, 1};
}

TEST(Simpson, ExactOnCubics) {
  const QuadratureResult q = simpson([](double x) { return x * x * x - 2.0 * x; }, -1.0, 2.0, 4);
  EXPECT_NEAR(q.value, (16.0 - 1.0) / 4.0 - 3.0, 1e-13);
  EXPECT_NEAR(q.error_estimate, 0.0, 1e-13);
  EXPECT_NEAR(simpson([](double x) { return std::sin(x); }, 0.0, kPi, 400).value, 2.0, 1e-10);
  EXPECT_THROW(simpson([](double) { return 1.0; }, 1.0, 1.0, 4), std::invalid_argument);
}

TEST(BerryPhase, Examples) {
  const StirapSchedule s = testing::reference_schedule();
  EXPECT_EQ(berry_phase_numeric(s, PhaseRamp::constant(0.4), 0.01).value, 0.0);
  EXPECT_NEAR(berry_phase_numeric(s, PhaseRamp::linear(0.0, 0.0), 0.01).value, 0.0, 1e-15);
  const QuadratureResult q = berry_phase_numeric(s, PhaseRamp::linear(0.0, 1.0), 0.005);
  EXPECT_NEAR(q.value, -5.0, 1e-8);
  EXPECT_LT(q.error_estimate, 1e-6);
  EXPECT_THROW(berry_phase_numeric(s, PhaseRamp::linear(0.0, 1.0), 0.0), std::invalid_argument);
}

TEST(BerryPhase, ClosedFormExamples) {
  EXPECT_EQ(berry_phase_closed_form(PhaseRamp::linear(0.0, 1.0), 1.0, 5.0), -5.0);
  EXPECT_EQ(berry_phase_closed_form(PhaseRamp::constant(2.0), 1.0, 5.0), 0.0);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const double slope = testing::uniform(rng, -3.0, 3.0);
    const double dT = testing::uniform(rng, 1.0, 10.0);
    const PhaseRamp ramp = PhaseRamp::linear(testing::uniform(rng, -1.0, 1.0), slope);
    EXPECT_NEAR(berry_phase_closed_form(ramp, testing::uniform(rng, -5.0, 5.0), dT), -slope * dT, 1e-12);
  }
}

TEST(BerryPhase, NumericMatchesClosedFormOnRandomSchedules) {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const StirapSchedule s = random_schedule(rng);
    const PhaseRamp ramp = PhaseRamp::linear(testing::uniform(rng, -3.0, 3.0), testing::uniform(rng, -2.0, 2.0));
    const double numeric = berry_phase_numeric(s, ramp, s.tau / 400.0).value;
    const double closed = berry_phase_closed_form(ramp, build_schedule(s).t_a, s.delta_T);
    EXPECT_NEAR(numeric, closed, 1e-6) << "tau " << s.tau << " dt " << s.delta_t << " dT " << s.delta_T;
  }
}

TEST(WzConnection, EndpointExamples) {
  const WzConnection zero = wz_connection(0.0, 0.8);
  EXPECT_EQ(zero.d55, Complex(0.0, 0.0));
  EXPECT_EQ(zero.d56, Complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(zero.d66 - Complex(0.0, 0.4)), 0.0, 1e-15);
  const WzConnection half = wz_connection(kPi / 2.0, 0.8);
  EXPECT_NEAR(std::abs(half.d55 - Complex(0.0, 0.8)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(half.d56), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(half.d66), 0.0, 1e-15);
}

// <D_c(t)| (D_b(t + h) - D_b(t - h)) / 2h> for all 36 pairs at fixed theta2.
CMatrix finite_difference_connection(double theta2, double e, double t, double h) {
  const DressedBasis now = two_atom_dark_states(theta2, e, t);
  const DressedBasis ahead = two_atom_dark_states(theta2, e, t + h);
  const DressedBasis behind = two_atom_dark_states(theta2, e, t - h);
  CMatrix a(6, 6);
  for (int c = 0; c < 6; ++c) {
    for (int b = 0; b < 6; ++b) {
      const CVector d = (ahead.states[b].amplitudes() - behind.states[b].amplitudes()) / (2.0 * h);
      a(c, b) = now.states[c].amplitudes().dot(d);
    }
  }
  return a;
}

TEST(WzConnection, FiniteDifferenceOracleConvergesQuadratically) {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const double theta2 = testing::uniform(rng, 0.0, kPi / 2.0);
    const double e = testing::uniform(rng, 0.05, 3.0);
    const double t = testing::uniform(rng, -10.0, 10.0);
    const WzConnection w = wz_connection(theta2, e);
    CMatrix exact = CMatrix::Zero(6, 6);
    exact(4, 4) = w.d55;
    exact(4, 5) = w.d56;
    exact(5, 4) = w.d65;
    exact(5, 5) = w.d66;
    const double h1 = 0.02 / e;
    const double err1 = (finite_difference_connection(theta2, e, t, h1) - exact).cwiseAbs().maxCoeff();
    const double err2 = (finite_difference_connection(theta2, e, t, h1 / 2.0) - exact).cwiseAbs().maxCoeff();
    EXPECT_LT(err1, 1e-4 * e);
    if (err1 > 1e-9 * e) {
      // Central differences: halving h divides the error by about four.
      EXPECT_NEAR(err1 / err2, 4.0, 0.1) << "theta2 " << theta2;
    }
  }
}

TEST(WzPropagate, ConstantAnglesHaveClosedForms) {
  const double e = 0.7;
  const double T = 3.0;
  const WzTrajectory full = wz_propagate([](double) { return kPi / 2.0; }, e, {0.0, T, 1e-3, 100});
  EXPECT_NEAR(std::abs(full.final_coefficients().b[4] - std::polar(1.0, -e * T)), 0.0, 1e-10);
  EXPECT_NEAR(full.max_leakage, 0.0, 1e-20);
  const WzTrajectory none = wz_propagate([](double) { return 0.0; }, e, {0.0, T, 1e-3, 100});
  EXPECT_EQ(none.final_coefficients().b[4], Complex(1.0, 0.0));
  EXPECT_EQ(none.max_leakage, 0.0);
}

TEST(WzPropagate, NormConserved) {
  Rng rng(34);
  for (int i = 0; i < 10; ++i) {
    const StirapSchedule s = random_schedule(rng);
    const double e = testing::uniform(rng, 0.05, 2.0);
    const WzTrajectory traj = wz_propagate(schedule_theta(s), e, support_grid(s, s.tau / 400.0));
    EXPECT_LE(traj.norm_drift, 1e-10);
    for (const auto& c : traj.samples) EXPECT_NEAR(c.norm_squared(), 1.0, 1e-10);
  }
}

TEST(WzPropagate, PhaseMatchesQuadratureWhenLeakageIsSmall) {
  const StirapSchedule s{1.0, 1.0, 8.0, 0.0};
  for (double e : {0.02, 0.05, 0.1}) {
    const TimeGrid grid = support_grid(s, s.tau / 400.0);
    const WzTrajectory traj = wz_propagate(schedule_theta(s), e, grid);
    ASSERT_LE(traj.max_leakage, 1e-4) << "E " << e;
    const double quad = two_qubit_phase(schedule_theta(s), e, grid).value;
    EXPECT_LT(testing::angle_distance(traj.terminal_phase, quad), 1e-3) << "E " << e;
  }
}

TEST(TwoQubitPhase, Examples) {
  const TimeGrid grid{0.0, 4.0, 1e-3, 1};
  EXPECT_EQ(two_qubit_phase([](double) { return 0.3; }, 0.0, grid).value, 0.0);
  EXPECT_NEAR(two_qubit_phase([](double) { return kPi / 2.0; }, 0.3, grid).value, -1.2, 1e-12);
}

TEST(TwoQubitPhase, RampCorrectionScalesWithTau) {
  // -E (delta_T + c tau): c depends only on the pulse shape and delta_t / tau.
  const double e = 0.3;
  double c_ref = 0.0;
  for (double tau : {0.5, 1.0, 2.0}) {
    const StirapSchedule s{tau, tau, 5.0 * tau, 0.0};
    const double phase = two_qubit_phase(schedule_theta(s), e, support_grid(s, tau / 400.0)).value;
    const double c = (-phase / e - s.delta_T) / tau;
    if (tau == 0.5) c_ref = c;
    EXPECT_NEAR(c, c_ref, 1e-8) << "tau " << tau;
  }
  // The sin^4 ramps give less than a full-strength hold over the pulse overlaps.
  EXPECT_LT(std::abs(c_ref), 2.0);
}

TEST(Leakage, StrictlyDecreasesWhenTauIsHalved) {
  for (double e : {0.1, 0.3, 1.0}) {
    double previous = 1.0;
    for (double tau : {2.0, 1.0, 0.5, 0.25}) {
      const StirapSchedule s{tau, 0.8 * tau, 10.0, 0.0};
      const WzTrajectory traj = wz_propagate(schedule_theta(s), e, support_grid(s, tau / 400.0));
      EXPECT_LT(traj.max_leakage, previous) << "E " << e << " tau " << tau;
      previous = traj.max_leakage;
    }
  }
}

TEST(InteractionPicture, TransformExamples) {
  const BasisPtr b = two_atom_basis();
  const StateVector s22 = StateVector::basis_state(b, "22");
  const StateVector moved = transform_interaction(s22, 0.4, 2.0);
  EXPECT_NEAR(std::abs(moved.amplitude("22") - std::polar(1.0, -0.8)), 0.0, 1e-15);
  Rng rng(35);
  const StateVector psi(b, testing::random_state(rng, 16));
  EXPECT_EQ(transform_interaction(psi, 0.4, 0.0).amplitudes(), psi.amplitudes());
  for (int i = 0; i < 100; ++i) {
    const StateVector r(b, testing::random_state(rng, 16));
    const double e = testing::uniform(rng, -3.0, 3.0);
    const double t = testing::uniform(rng, -10.0, 10.0);
    const StateVector back = to_interaction(transform_interaction(r, e, t), e, t);
    EXPECT_LE((back.amplitudes() - r.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_THROW(transform_interaction(StateVector::basis_state(tripod_basis(), "0"), 1.0, 1.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace tripod
