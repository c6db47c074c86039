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

#include "tripod/pulses.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tripod/qcore.hpp"

namespace tripod {

void PulseEnvelope::validate() const {
  if (!(omega_max >= 0.0) || !std::isfinite(omega_max)) {
    throw std::invalid_argument("pulse omega_max must be finite and >= 0");
  }
  if (!(fwhm > 0.0) || !std::isfinite(fwhm)) {
    throw std::invalid_argument("pulse FWHM must be finite and > 0");
  }
}

double envelope_value(const PulseEnvelope& p, double t) {
  if (p.shape == EnvelopeShape::off) return 0.0;
  const double x = t - p.t_on;
  if (x <= 0.0 || x >= 2.0 * p.fwhm) return 0.0;
  const double s = std::sin(kPi * x / (2.0 * p.fwhm));
  return p.omega_max * s * s;
}

double PhaseRamp::value(double t) const {
  return kind == RampKind::linear ? phi0 + slope * t : phi0;
}

double PhaseRamp::rate(double) const { return kind == RampKind::linear ? slope : 0.0; }

void StirapSchedule::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("schedule: " + what); };
  if (!std::isfinite(tau) || !std::isfinite(delta_t) || !std::isfinite(delta_T) ||
      !std::isfinite(t_start)) {
    fail("all times must be finite");
  }
  if (!(tau > 0.0)) fail("tau must be > 0");
  if (!(delta_t > 0.0)) fail("delta_t must be > 0");
  if (!(delta_t < 2.0 * tau)) fail("delta_t must be < 2 tau so the pulses of a pair overlap");
  if (!(delta_T > 2.0 * tau + delta_t)) {
    std::ostringstream msg;
    msg << "delta_T must exceed 2 tau + delta_t = " << 2.0 * tau + delta_t
        << " so the two sequences stay separate";
    fail(msg.str());
  }
}

ScheduleTiming build_schedule(const StirapSchedule& s) {
  s.validate();
  ScheduleTiming out;
  out.stokes_onsets = {s.t_start, s.t_start + s.delta_t + s.delta_T};
  out.pump_onsets = {s.t_start + s.delta_t, s.t_start + s.delta_T};
  out.t_a = s.t_start + s.delta_t;
  out.t_b = s.t_start + 2.0 * s.tau;
  out.t_begin = s.t_start;
  out.t_end = s.t_start + s.delta_t + s.delta_T + 2.0 * s.tau;
  out.delta_T = s.delta_T;
  return out;
}

double DriveField::amplitude(double t) const {
  double sum = 0.0;
  for (const auto& e : envelopes) sum += envelope_value(e, t);
  return sum;
}

std::complex<double> DriveField::value(double t) const {
  const double a = amplitude(t);
  if (a == 0.0) return {0.0, 0.0};
  return std::polar(a, phase.value(t));
}

bool DriveField::is_off() const {
  for (const auto& e : envelopes) {
    if (e.shape != EnvelopeShape::off && e.omega_max != 0.0) return false;
  }
  return true;
}

DriveField stirap_drive(const StirapSchedule& s, FieldRole role, double omega_max, PhaseRamp ramp,
                        std::string lower_level) {
  const ScheduleTiming timing = build_schedule(s);
  const auto& onsets = role == FieldRole::pump ? timing.pump_onsets : timing.stokes_onsets;
  if (omega_max < 0.0) {
    ramp.phi0 += kPi;
    omega_max = -omega_max;
  }
  DriveField field;
  field.phase = ramp;
  field.lower_level = std::move(lower_level);
  for (double on : onsets) {
    PulseEnvelope p{EnvelopeShape::sin_squared, omega_max, on, s.tau};
    p.validate();
    field.envelopes.push_back(p);
  }
  return field;
}

DriveField idle_drive(std::string lower_level) {
  DriveField field;
  field.lower_level = std::move(lower_level);
  return field;
}

MixingAngle mixing_angle(double omega_a, double omega_b) {
  const double a2 = omega_a * omega_a;
  const double b2 = omega_b * omega_b;
  if (a2 + b2 == 0.0) return {0.0, true};
  return {a2 / (a2 + b2), false};
}

MixingAngle schedule_mixing_angle(const ScheduleTiming& timing, double omega_pump,
                                  double omega_stokes, double t) {
  MixingAngle m = mixing_angle(omega_pump, omega_stokes);
  if (m.idle) {
    // Between the sequences the pump span [t_a, t_b + delta_T] is open.
    const bool between = t > timing.t_a && t < timing.t_b + timing.delta_T;
    m.sin2 = between ? 1.0 : 0.0;
  }
  return m;
}

MixingAngle schedule_mixing_angle(const StirapSchedule& s, double t) {
  const ScheduleTiming timing = build_schedule(s);
  double pump = 0.0;
  double stokes = 0.0;
  for (double on : timing.pump_onsets) pump += envelope_value({EnvelopeShape::sin_squared, 1.0, on, s.tau}, t);
  for (double on : timing.stokes_onsets) {
    stokes += envelope_value({EnvelopeShape::sin_squared, 1.0, on, s.tau}, t);
  }
  return schedule_mixing_angle(timing, pump, stokes, t);
}

}  // namespace tripod
