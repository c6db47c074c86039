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

// Pulse envelopes, STIRAP double-sequence timing, mixing angles and laser
// phase ramps. Together they define the complex Rabi frequency of every
// drive field.
//
// A double STIRAP sequence moves population from a lower level |j> to |2>
// and back. The "stokes" field couples |2>, the "pump" field couples |j>.
// Sequence one is counterintuitive (stokes first), sequence two is its
// time-reversed ordering (pump first):
//
//   stokes: onsets t0,           t0 + dt + DT
//   pump:   onsets t0 + dt,      t0 + DT
//
// with dt the delay inside a pair and DT the delay between the sequences.

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace tripod {

enum class EnvelopeShape { sin_squared, off };

/// Omega_max sin^2(pi (t - t_on) / (2 tau)) on [t_on, t_on + 2 tau], zero
/// elsewhere. tau is the full width at half maximum.
struct PulseEnvelope {
  EnvelopeShape shape = EnvelopeShape::sin_squared;
  double omega_max = 0.0;  // rad/T0
  double t_on = 0.0;
  double fwhm = 1.0;

  /// Throws std::invalid_argument on omega_max < 0 or fwhm <= 0.
  void validate() const;
  double t_off() const { return t_on + 2.0 * fwhm; }

  bool operator==(const PulseEnvelope&) const = default;
};

double envelope_value(const PulseEnvelope& p, double t);

enum class RampKind { constant, linear };

/// phi(t) = phi0 + slope * t.
struct PhaseRamp {
  RampKind kind = RampKind::constant;
  double phi0 = 0.0;
  double slope = 0.0;  // rad/T0, ignored for constant ramps

  static PhaseRamp constant(double phi0) { return {RampKind::constant, phi0, 0.0}; }
  static PhaseRamp linear(double phi0, double slope) { return {RampKind::linear, phi0, slope}; }

  double value(double t) const;
  double rate(double t) const;
  bool is_monotonic() const { return true; }

  bool operator==(const PhaseRamp&) const = default;
};

struct StirapSchedule {
  double tau = 1.0;      // FWHM of every pulse
  double delta_t = 1.0;  // delay between the two pulses of a pair
  double delta_T = 5.0;  // delay between the two sequences
  double t_start = 0.0;  // onset of the first (stokes) pulse

  /// Requires tau > 0, 0 < delta_t < 2 tau (pulses in a pair overlap) and
  /// delta_T > 2 tau + delta_t (sequences stay separate). Throws
  /// std::invalid_argument naming the violated bound.
  void validate() const;

  bool operator==(const StirapSchedule&) const = default;
};

struct ScheduleTiming {
  std::array<double, 2> stokes_onsets{};
  std::array<double, 2> pump_onsets{};
  /// sin^2 theta ~ 0 before t_a, ~ 1 on (t_b, t_a + delta_T).
  double t_a = 0.0;
  double t_b = 0.0;
  double t_begin = 0.0;  // first onset
  double t_end = 0.0;    // last pulse off
  double delta_T = 0.0;
};

/// Validates the schedule and returns the four onsets plus markers.
ScheduleTiming build_schedule(const StirapSchedule& s);

enum class FieldRole { pump, stokes };

/// Laser field on one lower-level <-> |e> transition. The envelopes add;
/// the phase ramp multiplies the sum.
struct DriveField {
  std::vector<PulseEnvelope> envelopes;
  PhaseRamp phase;
  std::string lower_level;

  double amplitude(double t) const;
  std::complex<double> value(double t) const;
  bool is_off() const;

  bool operator==(const DriveField&) const = default;
};

/// Two pulses of the given role timed by `s`, each of peak `omega_max`.
/// A negative omega_max flips the sign of the field.
DriveField stirap_drive(const StirapSchedule& s, FieldRole role, double omega_max,
                        PhaseRamp ramp, std::string lower_level);

DriveField idle_drive(std::string lower_level);

struct MixingAngle {
  double sin2 = 0.0;
  bool idle = false;  // both fields were zero
};

/// sin^2 theta = a^2 / (a^2 + b^2). Both zero gives {0, idle}.
MixingAngle mixing_angle(double omega_a, double omega_b);

/// Mixing angle of a pump/stokes pair along a schedule. Where both fields
/// vanish the value is continued from its limits: 0 before the first
/// sequence and after the last, 1 between the sequences.
MixingAngle schedule_mixing_angle(const ScheduleTiming& timing, double omega_pump,
                                  double omega_stokes, double t);

/// Same, for the common unit-amplitude pulse on both fields.
MixingAngle schedule_mixing_angle(const StirapSchedule& s, double t);

}  // namespace tripod
