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

// RWA Hamiltonians for the lambda, tripod and coupled two-tripod systems,
// plus analytic dark and dressed states.
//
// Coupling convention: a drive with complex Rabi frequency Omega_l on the
// |l> <-> |e> transition contributes <l|H|e> = Omega_l / 2 and
// <e|H|l> = conj(Omega_l) / 2. The excited level sits at +Delta. With this
// convention cos(theta)|j> - sin(theta) e^{i phi}|2> is annihilated when
// Omega_j = Omega sin(theta) and Omega_2 = Omega cos(theta) e^{i phi}.

#include <map>
#include <string>
#include <vector>

#include "tripod/pulses.hpp"
#include "tripod/qcore.hpp"

namespace tripod {

/// {|j>, |e>, |2>} with |j> <-> |e> and |2> <-> |e> driven.
struct LambdaSystem {
  DriveField drive_j;
  DriveField drive_2;
  double detuning = 0.0;
};

/// Four-level atom, basis order (|0>, |1>, |2>, |e>).
struct TripodSystem {
  DriveField drive_0;
  DriveField drive_1;
  DriveField drive_2;
  double detuning = 0.0;
};

/// H = H_a (x) 1 + 1 (x) H_b + E |22><22| on the 16-dimensional pair basis.
struct TwoAtomTripod {
  TripodSystem atom_a;
  TripodSystem atom_b;
  double coupling = 0.0;  // E, rad/T0

  /// Real drives and zero detuning on both atoms: the regime in which the
  /// six analytic dark states apply.
  bool is_real_resonant() const;
};

/// Labeled set of orthonormal states with the angles that generated them.
struct DressedBasis {
  std::vector<std::string> labels;
  std::vector<StateVector> states;
  std::map<std::string, double> angles;
  /// Eigenvalues of H/hbar, only filled where they are computed.
  std::vector<double> eigenvalues;

  const StateVector& state(const std::string& label) const;
};

HermitianOperator lambda_hamiltonian(const LambdaSystem& sys, double t);
HermitianOperator tripod_hamiltonian(const TripodSystem& sys, double t);
HermitianOperator two_atom_hamiltonian(const TwoAtomTripod& sys, double t);

/// e^{i H0 t} (H - H0) e^{-i H0 t} with H0 = E |22><22|. Its kernel holds the
/// six dark states of two_atom_dark_states.
HermitianOperator two_atom_interaction_hamiltonian(const TwoAtomTripod& sys, double t);

/// cos(theta)|j> - sin(theta) e^{i phi}|2> in the lambda basis.
StateVector dark_state(double theta, double phi);

/// Single dark state |D_H>, bright combination |B> and the two bright
/// eigenstates |+>, |-> of a tripod driven on |0> and |1> only.
///
/// Omega_0 and Omega_1 are magnitudes; Omega_1 carries the relative phase
/// phi01. They must satisfy tan(theta01) = |Omega_0| / |Omega_1|.
///
/// |+> and |-> come from the numeric eigensolver. angles holds theta01,
/// phi01, delta (tan delta = sqrt(-omega_- / omega_+)), omega_plus and
/// omega_minus, where omega_pm = Delta +- sqrt(Delta^2 + Omega_0^2 + Omega_1^2)
/// are twice the corresponding eigenvalues of H/hbar.
DressedBasis tripod_dressed_states(double theta01, double phi01, double detuning, double omega0,
                                   double omega1);

/// The six orthonormal dark states D1..D6 of the two-tripod system driven on
/// |1> and |2> with tan(theta2) = Omega_1 / Omega_2, in the interaction
/// picture with respect to E |22><22| (hence e^{iEt} on the |22> terms).
DressedBasis two_atom_dark_states(double theta2, double coupling, double t);

/// Embed a state of one atom's lambda subspace {j, e, 2} into the tripod
/// basis, with `j` naming the tripod level that plays |j>.
StateVector embed_lambda(const StateVector& lambda_state, const std::string& j);

}  // namespace tripod
