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

#include "tripod/geomphase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tripod {

QuadratureResult simpson(const std::function<double(double)>& f, double a, double b,
                         std::size_t intervals) {
  if (!(b > a)) throw std::invalid_argument("simpson: empty interval");
  // A multiple of four so the half-resolution rule is itself a Simpson rule.
  const std::size_t n = std::max<std::size_t>(4, (intervals + 3) / 4 * 4);
  const double h = (b - a) / static_cast<double>(n);

  std::vector<double> y(n + 1);
  for (std::size_t i = 0; i <= n; ++i) y[i] = f(i == n ? b : a + static_cast<double>(i) * h);

  double fine = y[0] + y[n];
  for (std::size_t i = 1; i < n; ++i) fine += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  fine *= h / 3.0;

  double coarse = y[0] + y[n];
  for (std::size_t i = 2; i < n; i += 2) coarse += ((i / 2) % 2 == 1 ? 4.0 : 2.0) * y[i];
  coarse *= 2.0 * h / 3.0;

  return {fine, std::abs(fine - coarse) / 15.0};
}

QuadratureResult berry_phase_numeric(const StirapSchedule& schedule, const PhaseRamp& ramp,
                                     double quad_step) {
  if (!ramp.is_monotonic()) {
    throw std::invalid_argument("berry_phase_numeric: the phase ramp must be monotonic");
  }
  if (!(quad_step > 0.0)) throw std::invalid_argument("berry_phase_numeric: quad_step must be > 0");
  const ScheduleTiming timing = build_schedule(schedule);
  if (ramp.rate(0.0) == 0.0 && ramp.kind == RampKind::constant) return {0.0, 0.0};

  auto integrand = [&](double t) {
    return -schedule_mixing_angle(schedule, t).sin2 * ramp.rate(t);
  };
  const double span = timing.t_end - timing.t_begin;
  const auto n = static_cast<std::size_t>(std::ceil(span / quad_step));
  return simpson(integrand, timing.t_begin, timing.t_end, n);
}

double berry_phase_closed_form(const PhaseRamp& ramp, double t_a, double delta_T) {
  return ramp.value(t_a) - ramp.value(t_a + delta_T);
}

WzConnection wz_connection(double theta2, double coupling) {
  const double c2 = std::cos(theta2) * std::cos(theta2);
  const double s2 = std::sin(theta2) * std::sin(theta2);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex off = -kI * r * coupling * c2 * s2;
  return {kI * coupling * s2 * s2, off, off, 0.5 * kI * coupling * c2 * c2};
}

double WzCoefficients::norm_squared() const {
  double n = 0.0;
  for (const auto& x : b) n += std::norm(x);
  return n;
}

WzTrajectory wz_propagate(const std::function<double(double)>& theta2, double coupling,
                          const TimeGrid& grid) {
  grid.validate();
  const std::size_t n = grid.step_count();
  const double dt = grid.step();

  using Pair = std::array<Complex, 2>;  // (B5, B6)
  auto rhs = [&](double t, const Pair& y) -> Pair {
    const WzConnection a = wz_connection(theta2(t), coupling);
    return {-(a.d55 * y[0] + a.d56 * y[1]), -(a.d65 * y[0] + a.d66 * y[1])};
  };
  auto axpy = [](const Pair& y, double h, const Pair& k) -> Pair {
    return {y[0] + h * k[0], y[1] + h * k[1]};
  };

  WzCoefficients c;
  c.b[4] = 1.0;
  Pair y{c.b[4], c.b[5]};

  WzTrajectory out;
  auto store = [&](double t) {
    c.b[4] = y[0];
    c.b[5] = y[1];
    out.times.push_back(t);
    out.samples.push_back(c);
  };
  store(grid.t_start);
  out.max_leakage = c.leakage();

  for (std::size_t step = 1; step <= n; ++step) {
    const double t = grid.t_start + static_cast<double>(step - 1) * dt;
    const double t_next = step == n ? grid.t_end : grid.t_start + static_cast<double>(step) * dt;
    const Pair k1 = rhs(t, y);
    const Pair k2 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const Pair k3 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const Pair k4 = rhs(t_next, axpy(y, dt, k3));
    for (int i = 0; i < 2; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double drift = std::abs(std::norm(y[0]) + std::norm(y[1]) - 1.0);
    if (!std::isfinite(drift) || drift > 1e-6) {
      std::ostringstream msg;
      msg << "wz_propagate: norm drift " << drift << " at t = " << t_next << "; refine the step";
      throw IntegrationError(msg.str());
    }
    out.norm_drift = std::max(out.norm_drift, drift);
    out.max_leakage = std::max(out.max_leakage, std::norm(y[1]));
    if (step % grid.sample_stride == 0 || step == n) store(t_next);
  }
  out.terminal_leakage = out.samples.back().leakage();
  out.terminal_phase = wrap_phase(out.samples.back().phase());
  return out;
}

QuadratureResult two_qubit_phase(const std::function<double(double)>& theta2, double coupling,
                                 const TimeGrid& grid) {
  grid.validate();
  if (coupling == 0.0) return {0.0, 0.0};
  auto sin4 = [&](double t) {
    const double s = std::sin(theta2(t));
    return s * s * s * s;
  };
  QuadratureResult q = simpson(sin4, grid.t_start, grid.t_end, grid.step_count());
  return {-coupling * q.value, std::abs(coupling) * q.error_estimate};
}

std::function<double(double)> schedule_theta(const StirapSchedule& schedule) {
  schedule.validate();
  return [schedule](double t) {
    const double s2 = std::clamp(schedule_mixing_angle(schedule, t).sin2, 0.0, 1.0);
    return std::asin(std::sqrt(s2));
  };
}

namespace {

StateVector rephase_22(const StateVector& psi, double angle) {
  if (psi.dim() != 16) throw std::invalid_argument("interaction-picture transform needs a 16-level state");
  CVector v = psi.amplitudes();
  const auto i22 = static_cast<Eigen::Index>(psi.basis().index_of("22"));
  v(i22) *= std::polar(1.0, angle);
  return StateVector(psi.basis_ptr(), std::move(v), std::abs(psi.norm_squared() - 1.0) + 1e-14);
}

}  // namespace

StateVector transform_interaction(const StateVector& psi_interaction, double coupling, double t) {
  return rephase_22(psi_interaction, -coupling * t);
}

StateVector to_interaction(const StateVector& psi, double coupling, double t) {
  return rephase_22(psi, coupling * t);
}

}  // namespace tripod
