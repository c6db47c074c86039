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

#include "tripod/systems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tripod {
namespace {

constexpr Eigen::Index kE = 3;  // |e> in the tripod basis

void check_target(const DriveField& d, const char* expected) {
  if (!d.lower_level.empty() && d.lower_level != expected) {
    throw std::invalid_argument("drive for level '" + std::string(expected) +
                                "' is labeled '" + d.lower_level + "'");
  }
}

void add_coupling(CMatrix& h, Eigen::Index lower, Eigen::Index excited, Complex omega) {
  h(lower, excited) += 0.5 * omega;
  h(excited, lower) += 0.5 * std::conj(omega);
}

CMatrix tripod_matrix(const TripodSystem& sys, double t) {
  check_target(sys.drive_0, "0");
  check_target(sys.drive_1, "1");
  check_target(sys.drive_2, "2");
  CMatrix h = CMatrix::Zero(4, 4);
  add_coupling(h, 0, kE, sys.drive_0.value(t));
  add_coupling(h, 1, kE, sys.drive_1.value(t));
  add_coupling(h, 2, kE, sys.drive_2.value(t));
  h(kE, kE) = sys.detuning;
  return h;
}

constexpr Eigen::Index pair_index(Eigen::Index a, Eigen::Index b) { return 4 * a + b; }
constexpr Eigen::Index k22 = pair_index(2, 2);

CMatrix two_atom_drive_matrix(const TwoAtomTripod& sys, double t) {
  const CMatrix ha = tripod_matrix(sys.atom_a, t);
  const CMatrix hb = tripod_matrix(sys.atom_b, t);
  CMatrix h = CMatrix::Zero(16, 16);
  for (Eigen::Index a = 0; a < 4; ++a) {
    for (Eigen::Index a2 = 0; a2 < 4; ++a2) {
      for (Eigen::Index b = 0; b < 4; ++b) {
        h(pair_index(a, b), pair_index(a2, b)) += ha(a, a2);
        h(pair_index(b, a), pair_index(b, a2)) += hb(a, a2);
      }
    }
  }
  return h;
}

}  // namespace

bool TwoAtomTripod::is_real_resonant() const {
  auto real_drive = [](const DriveField& d) {
    return d.is_off() || (std::abs(std::sin(d.phase.value(0.0))) < 1e-15 && d.phase.rate(0.0) == 0.0);
  };
  for (const TripodSystem* atom : {&atom_a, &atom_b}) {
    if (atom->detuning != 0.0) return false;
    if (!real_drive(atom->drive_0) || !real_drive(atom->drive_1) || !real_drive(atom->drive_2)) {
      return false;
    }
  }
  return true;
}

const StateVector& DressedBasis::state(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return states[i];
  }
  throw std::invalid_argument("dressed basis has no state '" + label + "'");
}

HermitianOperator lambda_hamiltonian(const LambdaSystem& sys, double t) {
  check_target(sys.drive_j, "j");
  check_target(sys.drive_2, "2");
  CMatrix h = CMatrix::Zero(3, 3);
  add_coupling(h, 0, 1, sys.drive_j.value(t));
  add_coupling(h, 2, 1, sys.drive_2.value(t));
  h(1, 1) = sys.detuning;
  return HermitianOperator(std::move(h));
}

HermitianOperator tripod_hamiltonian(const TripodSystem& sys, double t) {
  return HermitianOperator(tripod_matrix(sys, t));
}

HermitianOperator two_atom_hamiltonian(const TwoAtomTripod& sys, double t) {
  CMatrix h = two_atom_drive_matrix(sys, t);
  h(k22, k22) += sys.coupling;
  return HermitianOperator(std::move(h));
}

HermitianOperator two_atom_interaction_hamiltonian(const TwoAtomTripod& sys, double t) {
  CMatrix h = two_atom_drive_matrix(sys, t);
  // Conjugation by the diagonal e^{i E t |22><22|} rephases row and column 22.
  const Complex phase = std::polar(1.0, sys.coupling * t);
  h.row(k22) *= phase;
  h.col(k22) *= std::conj(phase);
  return HermitianOperator(std::move(h));
}

StateVector dark_state(double theta, double phi) {
  CVector v(3);
  v << std::cos(theta), 0.0, -std::sin(theta) * std::polar(1.0, phi);
  return StateVector(lambda_basis(), std::move(v), 1e-12);
}

DressedBasis tripod_dressed_states(double theta01, double phi01, double detuning, double omega0,
                                   double omega1) {
  const double a0 = std::abs(omega0);
  const double a1 = std::abs(omega1);
  if (a0 == 0.0 && a1 == 0.0) {
    throw std::invalid_argument("tripod_dressed_states: Omega_0 and Omega_1 are both zero");
  }
  if (std::abs(std::atan2(a0, a1) - theta01) > 1e-10) {
    throw std::invalid_argument("tripod_dressed_states: theta01 does not match |Omega_0|/|Omega_1|");
  }

  const BasisPtr basis = tripod_basis();
  const double c = std::cos(theta01);
  const double s = std::sin(theta01);
  const Complex rot = std::polar(1.0, phi01);

  CVector dark = CVector::Zero(4);
  dark(0) = c;
  dark(1) = -s * rot;
  CVector bright = CVector::Zero(4);
  bright(0) = s;
  bright(1) = c * rot;

  TripodSystem sys;
  sys.drive_0.envelopes = {{EnvelopeShape::sin_squared, a0, -1.0, 1.0}};
  sys.drive_1.envelopes = {{EnvelopeShape::sin_squared, a1, -1.0, 1.0}};
  sys.drive_1.phase = PhaseRamp::constant(phi01);
  sys.detuning = detuning;
  // Envelopes peak at t = 0.
  const SpectralDecomposition spec = eig_hermitian(tripod_hamiltonian(sys, 0.0));
  const Eigen::Index last = spec.eigenvalues.size() - 1;

  DressedBasis out;
  out.labels = {"D_H", "B", "+", "-"};
  out.states = {StateVector(basis, dark, 1e-12), StateVector(basis, bright, 1e-12),
                StateVector(basis, spec.eigenvectors.col(last), 1e-10),
                StateVector(basis, spec.eigenvectors.col(0), 1e-10)};
  out.eigenvalues = {0.0, 0.0, spec.eigenvalues(last), spec.eigenvalues(0)};

  const double omega_plus = 2.0 * spec.eigenvalues(last);
  const double omega_minus = 2.0 * spec.eigenvalues(0);
  out.angles = {{"theta01", theta01},
                {"phi01", phi01},
                {"omega_plus", omega_plus},
                {"omega_minus", omega_minus},
                {"delta", std::atan(std::sqrt(std::max(0.0, -omega_minus / omega_plus)))}};
  return out;
}

DressedBasis two_atom_dark_states(double theta2, double coupling, double t) {
  const BasisPtr basis = two_atom_basis();
  const double c = std::cos(theta2);
  const double s = std::sin(theta2);
  const Complex rot = std::polar(1.0, coupling * t);
  const double r = 1.0 / std::sqrt(2.0);
  auto idx = [&](const char* label) { return static_cast<Eigen::Index>(basis->index_of(label)); };

  std::vector<CVector> v(6, CVector::Zero(16));
  v[0](idx("00")) = 1.0;

  v[1](idx("10")) = -c;
  v[1](idx("20")) = s;

  v[2](idx("01")) = -c;
  v[2](idx("02")) = s;

  v[3](idx("1e")) = r * s;
  v[3](idx("e1")) = -r * s;
  v[3](idx("2e")) = r * c;
  v[3](idx("e2")) = -r * c;

  v[4](idx("11")) = c * c;
  v[4](idx("12")) = -s * c;
  v[4](idx("21")) = -s * c;
  v[4](idx("22")) = s * s * rot;

  v[5](idx("11")) = -r * s * s;
  v[5](idx("12")) = -r * s * c;
  v[5](idx("21")) = -r * s * c;
  v[5](idx("ee")) = r;
  v[5](idx("22")) = -r * c * c * rot;

  DressedBasis out;
  out.labels = {"D1", "D2", "D3", "D4", "D5", "D6"};
  for (auto& vec : v) out.states.emplace_back(basis, std::move(vec), 1e-12);
  out.angles = {{"theta2", theta2}, {"E", coupling}, {"t", t}};
  return out;
}

StateVector embed_lambda(const StateVector& lambda_state, const std::string& j) {
  const BasisPtr basis = tripod_basis();
  CVector v = CVector::Zero(4);
  v(static_cast<Eigen::Index>(basis->index_of(j))) = lambda_state.amplitude("j");
  v(static_cast<Eigen::Index>(basis->index_of("e"))) = lambda_state.amplitude("e");
  v(static_cast<Eigen::Index>(basis->index_of("2"))) = lambda_state.amplitude("2");
  return StateVector(basis, std::move(v), 1e-10);
}

}  // namespace tripod
