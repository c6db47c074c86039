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

// Dense complex linear algebra for the small Hilbert spaces used here
// (dimension 2, 3, 4 or 16).
//
// Units: operators are stored as H/hbar, i.e. in angular-frequency units
// (rad/T0). Times are measured in units of the reference time T0.

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tripod {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Below this population a level's phase is reported as undefined.
inline constexpr double kPopulationFloor = 1e-6;

/// Ordered list of level labels. Shared between many states, so it is
/// normally handled through BasisPtr.
class Basis {
 public:
  explicit Basis(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// Throws std::invalid_argument for an unknown label.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;

  bool operator==(const Basis& other) const = default;

 private:
  std::vector<std::string> labels_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// {j, e, 2}: the lambda subsystem in the row order of its Hamiltonian.
BasisPtr lambda_basis();
/// {0, 1, 2, e}: one tripod atom.
BasisPtr tripod_basis();
/// Row-major pairs of the tripod basis: 00, 01, 02, 0e, 10, ..., ee.
BasisPtr two_atom_basis();

/// Normalized amplitude vector over a labeled basis.
class StateVector {
 public:
  /// Throws std::invalid_argument if the dimension does not match the basis
  /// or if |sum |a|^2 - 1| exceeds norm_tol.
  StateVector(BasisPtr basis, CVector amplitudes, double norm_tol = 1e-12);

  static StateVector basis_state(BasisPtr basis, std::string_view label);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Basis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const CVector& amplitudes() const { return amplitudes_; }

  Complex amplitude(std::string_view label) const;
  double population(std::string_view label) const;
  double norm_squared() const { return amplitudes_.squaredNorm(); }

  /// <this|other>
  Complex inner(const StateVector& other) const;

  StateVector with_global_phase(double alpha) const;

 private:
  BasisPtr basis_;
  CVector amplitudes_;
};

/// Complex matrix equal to its adjoint within tolerance.
class HermitianOperator {
 public:
  /// Throws std::invalid_argument (quoting the largest |M - M^dagger| entry)
  /// when the matrix is not square or not Hermitian. The tolerance is
  /// scaled by max(1, max|M_ij|).
  explicit HermitianOperator(CMatrix matrix, double tol = 1e-12);

  static HermitianOperator zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  /// Spectral (operator 2-) norm.
  double norm() const;

 private:
  CMatrix matrix_;
};

/// Largest entry of |M - M^dagger|.
double max_asymmetry(const CMatrix& m);

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  CMatrix eigenvectors;         // column k belongs to eigenvalues[k]
};

/// Degenerate eigenspaces come back with an orthonormal but otherwise
/// arbitrary basis.
SpectralDecomposition eig_hermitian(const HermitianOperator& h);
/// Validates Hermiticity first.
SpectralDecomposition eig_hermitian(const CMatrix& h);

/// Maps an angle to (-pi, pi].
double wrap_phase(double angle);

/// arg(<level|psi>) when the level holds more than `floor` population,
/// std::nullopt otherwise. Throws std::invalid_argument for unknown labels.
std::optional<double> overlap_phase(const StateVector& psi, std::string_view level,
                                    double floor = kPopulationFloor);

/// Global-phase-insensitive overlap |Tr(U^dagger V)| / d.
///
/// Both inputs must be unitary within `unitarity_tol` (max entry of
/// U^dagger U - 1); reconstructed gates with small leakage pass a looser
/// tolerance. Throws std::invalid_argument on dimension mismatch or
/// non-unitary input.
double unitary_fidelity(const CMatrix& u, const CMatrix& v, double unitarity_tol = 1e-8);

/// max |U^dagger U - 1|
double unitarity_defect(const CMatrix& u);

}  // namespace tripod
