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

#include "tripod/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tripod {

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw std::invalid_argument("time grid: t_end must be finite and > t_start");
  }
  if (!(base_step > 0.0) || !std::isfinite(base_step)) {
    throw std::invalid_argument("time grid: base_step must be finite and > 0");
  }
  if (sample_stride < 1) throw std::invalid_argument("time grid: sample_stride must be >= 1");
}

std::size_t TimeGrid::step_count() const {
  const double n = std::ceil((t_end - t_start) / base_step - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

double TimeGrid::step() const { return (t_end - t_start) / static_cast<double>(step_count()); }

TimeGrid TimeGrid::halved() const {
  TimeGrid g = *this;
  g.base_step = 0.5 * step();
  g.sample_stride *= 2;
  return g;
}

double default_base_step(double tau, double omega_peak) {
  const double base = tau / 200.0;
  return omega_peak > 0.0 ? std::min(base, 1.0 / omega_peak) : base;
}

Trajectory propagate(const HamiltonianFn& h, const StateVector& psi0, const TimeGrid& grid,
                     const PropagateOptions& options) {
  grid.validate();
  if (std::abs(psi0.norm_squared() - 1.0) > 1e-10) {
    throw std::invalid_argument("propagate: initial state is not normalized");
  }
  const std::size_t n = grid.step_count();
  const double dt = grid.step();
  const double store_tol =
      options.check_norm ? options.max_norm_drift : std::numeric_limits<double>::infinity();
  // Without the norm check a blow-up is still cut short: the result is useless.
  const double abort_drift = options.check_norm ? options.max_norm_drift : 1.0;

  Trajectory traj;
  traj.basis = psi0.basis_ptr();
  traj.step = dt;
  traj.states.reserve(n / grid.sample_stride + 2);
  traj.times.reserve(n / grid.sample_stride + 2);

  CVector psi = psi0.amplitudes();
  CMatrix h_now = h(grid.t_start).matrix();
  if (static_cast<std::size_t>(h_now.rows()) != psi0.dim()) {
    throw std::invalid_argument("propagate: Hamiltonian dimension does not match the state");
  }

  auto store = [&](double t) {
    traj.times.push_back(t);
    traj.states.emplace_back(traj.basis, psi, store_tol);
  };
  store(grid.t_start);

  CVector k1, k2, k3, k4, tmp;
  double drift = 0.0;
  for (std::size_t step = 1; step <= n; ++step) {
    const double t = grid.t_start + static_cast<double>(step - 1) * dt;
    const double t_next = step == n ? grid.t_end : grid.t_start + static_cast<double>(step) * dt;
    const CMatrix h_mid = h(t + 0.5 * dt).matrix();
    CMatrix h_next = h(t_next).matrix();

    k1.noalias() = -kI * (h_now * psi);
    tmp = psi + (0.5 * dt) * k1;
    k2.noalias() = -kI * (h_mid * tmp);
    tmp = psi + (0.5 * dt) * k2;
    k3.noalias() = -kI * (h_mid * tmp);
    tmp = psi + dt * k3;
    k4.noalias() = -kI * (h_next * tmp);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    h_now = std::move(h_next);

    const double d = std::abs(psi.squaredNorm() - 1.0);
    if (!std::isfinite(d) || d > abort_drift) {
      std::ostringstream msg;
      msg << "norm drift " << d << " at t = " << t_next << " exceeds " << abort_drift
          << " with step " << dt << "; refine the time step";
      throw IntegrationError(msg.str());
    }
    drift = std::max(drift, d);
    if (step % grid.sample_stride == 0 || step == n) store(t_next);
  }
  traj.norm_drift = drift;

  Observables obs = extract_observables(traj.times, traj.states, options.population_floor);
  traj.populations = std::move(obs.populations);
  traj.phases = std::move(obs.phases);

  std::vector<std::size_t> excited;
  for (std::size_t i = 0; i < traj.basis->dim(); ++i) {
    if (traj.basis->label(i).find('e') != std::string::npos) excited.push_back(i);
  }
  for (const auto& row : traj.populations) {
    double pe = 0.0;
    for (std::size_t i : excited) pe += row[i];
    traj.max_e_population = std::max(traj.max_e_population, pe);
  }
  return traj;
}

std::pair<Trajectory, ConvergenceReport> converge(const HamiltonianFn& h, const StateVector& psi0,
                                                  const TimeGrid& grid, double tol,
                                                  int max_halvings,
                                                  const PropagateOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("converge: tolerance must be > 0");
  grid.validate();

  PropagateOptions trial = options;
  trial.check_norm = false;
  auto attempt = [&](const TimeGrid& g) -> std::optional<Trajectory> {
    try {
      return propagate(h, psi0, g, trial);
    } catch (const IntegrationError&) {
      return std::nullopt;
    }
  };

  ConvergenceReport report;
  TimeGrid g = grid;
  std::optional<Trajectory> coarse = attempt(g);
  report.steps.push_back(g.step());
  for (int k = 1; k <= max_halvings; ++k) {
    g = g.halved();
    std::optional<Trajectory> fine = attempt(g);
    report.steps.push_back(g.step());
    double distance = std::numeric_limits<double>::infinity();
    if (coarse && fine) {
      distance = (fine->final_state().amplitudes() - coarse->final_state().amplitudes()).norm();
    }
    report.distances.push_back(distance);
    if (distance <= tol) {
      report.accepted_step = g.step();
      report.converged = true;
      if (options.check_norm && fine->norm_drift > options.max_norm_drift) {
        std::ostringstream msg;
        msg << "converged trajectory has norm drift " << fine->norm_drift << " > "
            << options.max_norm_drift;
        throw IntegrationError(msg.str());
      }
      return {std::move(*fine), std::move(report)};
    }
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "no convergence to " << tol << " after " << max_halvings << " halvings (last distance "
      << report.distances.back() << ")";
  throw IntegrationError(msg.str());
}

Observables extract_observables(const std::vector<double>& times,
                                const std::vector<StateVector>& states, double floor) {
  Observables out;
  if (states.empty()) return out;
  const std::size_t dim = states.front().dim();
  out.populations.assign(states.size(), std::vector<double>(dim, 0.0));
  out.phases.assign(states.size(), std::vector<std::optional<double>>(dim));

  constexpr double two_pi = 2.0 * kPi;
  for (std::size_t level = 0; level < dim; ++level) {
    // (time, unwrapped value) of the latest stretch of defined samples.
    std::vector<std::pair<double, double>> run;
    bool in_gap = false;
    for (std::size_t s = 0; s < states.size(); ++s) {
      const Complex a = states[s].amplitudes()(static_cast<Eigen::Index>(level));
      const double pop = std::norm(a);
      out.populations[s][level] = pop;
      if (!(pop > floor)) {
        in_gap = true;
        continue;
      }
      const double raw = std::arg(a);
      double reference = raw;
      if (!run.empty()) {
        const auto [t_last, v_last] = run.back();
        reference = v_last;
        if (in_gap) {
          // Samples next to the floor carry noisy phases, so the rate is taken
          // over the final eighth-of-the-gap of the previous stretch.
          const double gap = times[s] - t_last;
          auto ref = run.front();
          for (auto it = run.rbegin(); it != run.rend(); ++it) {
            if (it->first <= t_last - gap / 8.0) {
              ref = *it;
              break;
            }
          }
          const double span = t_last - ref.first;
          const double rate = span > 0.0 ? (v_last - ref.second) / span : 0.0;
          reference = v_last + rate * gap;
          run.clear();
        }
      }
      in_gap = false;
      const double value = raw + two_pi * std::round((reference - raw) / two_pi);
      run.emplace_back(times[s], value);
      out.phases[s][level] = value;
    }
  }
  return out;
}

Observables extract_observables(const Trajectory& traj, double floor) {
  return extract_observables(traj.times, traj.states, floor);
}

double adiabaticity_report(const Trajectory& traj,
                           const std::function<DressedBasis(double)>& dressed_states) {
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const DressedBasis basis = dressed_states(traj.times[s]);
    const StateVector& psi = traj.states[s];
    double inside = 0.0;
    for (const auto& d : basis.states) inside += std::norm(d.inner(psi));
    worst = std::max(worst, psi.norm_squared() - inside);
  }
  return std::clamp(worst, 0.0, 1.0);
}

}  // namespace tripod
