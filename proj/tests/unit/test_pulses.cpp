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
#include <tripod/pulses.hpp>
#include <tripod/qcore.hpp>

#include "test_util.hpp"

namespace tripod {
namespace {

using testing::Rng;

double sin2_oracle(double peak, double on, double fwhm, double t) {
  if (t <= on || t >= on + 2.0 * fwhm) return 0.0;
  const double s = std::sin(kPi * (t - on) / (2.0 * fwhm));
  return peak * s * s;
}

TEST(Envelope, Examples) {
  const PulseEnvelope p{EnvelopeShape::sin_squared, 1.0, 0.0, 1.0};
  EXPECT_NEAR(envelope_value(p, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(envelope_value(p, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(envelope_value(p, 1.5), 0.5, 1e-15);
  EXPECT_EQ(envelope_value(p, -0.1), 0.0);
  EXPECT_EQ(envelope_value(p, 2.0), 0.0);
  EXPECT_EQ(envelope_value(p, 2.1), 0.0);
  EXPECT_EQ(envelope_value({EnvelopeShape::off, 3.0, 0.0, 1.0}, 1.0), 0.0);
}

TEST(Envelope, FwhmIsTau) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double tau = testing::uniform(rng, 0.1, 5.0);
    const double on = testing::uniform(rng, -3.0, 3.0);
    const PulseEnvelope p{EnvelopeShape::sin_squared, 2.0, on, tau};
    EXPECT_NEAR(envelope_value(p, on + tau / 2.0), 1.0, 1e-12);
    EXPECT_NEAR(envelope_value(p, on + 1.5 * tau), 1.0, 1e-12);
    for (int k = 0; k < 20; ++k) {
      const double t = testing::uniform(rng, on - tau, on + 3.0 * tau);
      EXPECT_NEAR(envelope_value(p, t), sin2_oracle(2.0, on, tau, t), 1e-13);
    }
  }
}

TEST(Envelope, Validation) {
  EXPECT_THROW((PulseEnvelope{EnvelopeShape::sin_squared, -1.0, 0.0, 1.0}.validate()),
               std::invalid_argument);
  EXPECT_THROW((PulseEnvelope{EnvelopeShape::sin_squared, 1.0, 0.0, 0.0}.validate()),
               std::invalid_argument);
  EXPECT_NO_THROW((PulseEnvelope{EnvelopeShape::sin_squared, 0.0, 0.0, 1.0}.validate()));
}

TEST(Schedule, ReferenceOnsets) {
  const ScheduleTiming t = build_schedule({1.0, 1.0, 5.0, 0.0});
  EXPECT_EQ(t.stokes_onsets, (std::array<double, 2>{0.0, 6.0}));
  EXPECT_EQ(t.pump_onsets, (std::array<double, 2>{1.0, 5.0}));
  EXPECT_EQ(t.t_a, 1.0);
  EXPECT_EQ(t.t_b, 2.0);
  EXPECT_EQ(t.t_begin, 0.0);
  EXPECT_EQ(t.t_end, 8.0);
}

TEST(Schedule, Validation) {
  EXPECT_THROW(build_schedule({0.0, 1.0, 5.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(build_schedule({1.0, 2.0, 5.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(build_schedule({1.0, 0.0, 5.0, 0.0}), std::invalid_argument);
  try {
    build_schedule({1.0, 1.0, 3.0, 0.0});
    FAIL() << "overlapping sequences accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("delta_T"), std::string::npos);
  }
}

TEST(MixingAngle, Examples) {
  EXPECT_NEAR(mixing_angle(1.0, 1.0).sin2, 0.5, 1e-15);
  EXPECT_EQ(mixing_angle(1.0, 0.0).sin2, 1.0);
  EXPECT_EQ(mixing_angle(0.0, 2.0).sin2, 0.0);
  const MixingAngle idle = mixing_angle(0.0, 0.0);
  EXPECT_TRUE(idle.idle);
  EXPECT_EQ(idle.sin2, 0.0);
}

TEST(MixingAngle, ScaleInvariance) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double a = testing::uniform(rng, -10.0, 10.0);
    const double b = testing::uniform(rng, -10.0, 10.0);
    const double k = testing::uniform(rng, 1e-3, 1e3);
    EXPECT_NEAR(mixing_angle(k * a, k * b).sin2, mixing_angle(a, b).sin2, 1e-13);
    EXPECT_NEAR(mixing_angle(a, b).sin2, a * a / (a * a + b * b), 1e-14);
  }
}

TEST(MixingAngle, ReferenceScheduleMarkers) {
  const StirapSchedule s{1.0, 1.0, 5.0, 0.0};
  const ScheduleTiming timing = build_schedule(s);
  EXPECT_GE(schedule_mixing_angle(s, timing.t_b + 0.1 * s.tau).sin2, 0.99);
  EXPECT_LE(schedule_mixing_angle(s, timing.t_a - 0.1 * s.tau).sin2, 0.01);
  // Idle continuation: 0 outside the schedule, 1 between the sequences.
  EXPECT_EQ(schedule_mixing_angle(s, -1.0).sin2, 0.0);
  EXPECT_EQ(schedule_mixing_angle(s, 9.0).sin2, 0.0);
  EXPECT_EQ(schedule_mixing_angle(s, 4.5).sin2, 1.0);
}

TEST(MixingAngle, FourPulseSimilarity) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double tau = testing::uniform(rng, 0.2, 3.0);
    const double dt = testing::uniform(rng, 0.05, 1.95) * tau;
    const double dT = 2.0 * tau + dt + testing::uniform(rng, 0.01, 4.0);
    const StirapSchedule s{tau, dt, dT, testing::uniform(rng, -5.0, 5.0)};
    for (int k = 0; k < 20; ++k) {
      const double t = s.t_start + testing::uniform(rng, 0.0, dt + 2.0 * tau);
      const double sum = schedule_mixing_angle(s, t).sin2 + schedule_mixing_angle(s, t + dT).sin2;
      EXPECT_NEAR(sum, 1.0, 1e-12) << "tau " << tau << " t " << t;
    }
  }
}

TEST(PhaseRamp, ValueAndRate) {
  const PhaseRamp lin = PhaseRamp::linear(0.5, -2.0);
  EXPECT_DOUBLE_EQ(lin.value(3.0), 0.5 - 6.0);
  EXPECT_EQ(lin.rate(10.0), -2.0);
  const PhaseRamp c = PhaseRamp::constant(1.25);
  EXPECT_EQ(c.value(7.0), 1.25);
  EXPECT_EQ(c.rate(7.0), 0.0);
}

TEST(DriveField, StirapDriveCarriesRampAndTiming) {
  const StirapSchedule s{1.0, 1.0, 5.0, 0.0};
  const DriveField stokes = stirap_drive(s, FieldRole::stokes, 3.0, PhaseRamp::linear(0.0, 1.0), "2");
  const DriveField pump = stirap_drive(s, FieldRole::pump, 3.0, PhaseRamp::constant(0.0), "j");
  EXPECT_EQ(stokes.lower_level, "2");
  for (double t : {0.3, 1.0, 1.7, 5.5, 6.9, 7.5}) {
    const double amp = sin2_oracle(3.0, 0.0, 1.0, t) + sin2_oracle(3.0, 6.0, 1.0, t);
    EXPECT_NEAR(std::abs(stokes.value(t) - std::polar(amp, t)), 0.0, 1e-13) << t;
    const double pamp = sin2_oracle(3.0, 1.0, 1.0, t) + sin2_oracle(3.0, 5.0, 1.0, t);
    EXPECT_NEAR(std::abs(pump.value(t) - Complex(pamp, 0.0)), 0.0, 1e-13) << t;
  }
  EXPECT_FALSE(stokes.is_off());
  EXPECT_TRUE(idle_drive("0").is_off());
  EXPECT_EQ(idle_drive("0").value(1.0), Complex(0.0, 0.0));
}

TEST(DriveField, NegativePeakFlipsSign) {
  const StirapSchedule s{1.0, 1.0, 5.0, 0.0};
  const DriveField pos = stirap_drive(s, FieldRole::pump, 2.0, PhaseRamp::linear(0.3, 0.7), "0");
  const DriveField neg = stirap_drive(s, FieldRole::pump, -2.0, PhaseRamp::linear(0.3, 0.7), "0");
  for (double t = 0.0; t < 8.0; t += 0.37) {
    EXPECT_NEAR(std::abs(neg.value(t) + pos.value(t)), 0.0, 1e-13);
  }
}

}  // namespace
}  // namespace tripod
