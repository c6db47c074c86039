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

#include "tripod/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tripod {

Basis::Basis(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("basis must not be empty");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t k = i + 1; k < labels_.size(); ++k) {
      if (labels_[i] == labels_[k]) {
        throw std::invalid_argument("duplicate basis label '" + labels_[i] + "'");
      }
    }
  }
}

std::size_t Basis::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::invalid_argument("unknown level label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Basis::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

BasisPtr lambda_basis() {
  static const BasisPtr basis = std::make_shared<const Basis>(std::vector<std::string>{"j", "e", "2"});
  return basis;
}

BasisPtr tripod_basis() {
  static const BasisPtr basis =
      std::make_shared<const Basis>(std::vector<std::string>{"0", "1", "2", "e"});
  return basis;
}

BasisPtr two_atom_basis() {
  static const BasisPtr basis = [] {
    std::vector<std::string> labels;
    for (const auto& a : tripod_basis()->labels()) {
      for (const auto& b : tripod_basis()->labels()) labels.push_back(a + b);
    }
    return std::make_shared<const Basis>(std::move(labels));
  }();
  return basis;
}

StateVector::StateVector(BasisPtr basis, CVector amplitudes, double norm_tol)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("state vector needs a basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dim()) {
    throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                " does not match basis dimension " +
                                std::to_string(basis_->dim()));
  }
  const double drift = std::abs(amplitudes_.squaredNorm() - 1.0);
  if (!(drift <= norm_tol)) {
    std::ostringstream msg;
    msg << "state is not normalized: |norm^2 - 1| = " << drift << " > " << norm_tol;
    throw std::invalid_argument(msg.str());
  }
}

StateVector StateVector::basis_state(BasisPtr basis, std::string_view label) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
  amps(static_cast<Eigen::Index>(basis->index_of(label))) = 1.0;
  return StateVector(std::move(basis), std::move(amps));
}

Complex StateVector::amplitude(std::string_view label) const {
  return amplitudes_(static_cast<Eigen::Index>(basis_->index_of(label)));
}

double StateVector::population(std::string_view label) const {
  return std::norm(amplitude(label));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("inner product of mismatched dimensions");
  return amplitudes_.dot(other.amplitudes_);
}

StateVector StateVector::with_global_phase(double alpha) const {
  return StateVector(basis_, amplitudes_ * std::polar(1.0, alpha),
                     std::abs(norm_squared() - 1.0) + 1e-15);
}

double max_asymmetry(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("Hermitian operator must be a non-empty square matrix");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  const double asym = max_asymmetry(matrix_);
  if (!(asym <= tol * scale)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M - M^dagger| = " << asym;
    throw std::invalid_argument(msg.str());
  }
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(CMatrix::Zero(n, n));
}

double HermitianOperator::norm() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition eig_hermitian(const CMatrix& h) { return eig_hermitian(HermitianOperator(h)); }

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::optional<double> overlap_phase(const StateVector& psi, std::string_view level, double floor) {
  const Complex a = psi.amplitude(level);
  if (!(std::norm(a) > floor)) return std::nullopt;
  return wrap_phase(std::arg(a));
}

double unitarity_defect(const CMatrix& u) {
  const auto n = u.cols();
  return (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double unitary_fidelity(const CMatrix& u, const CMatrix& v, double unitarity_tol) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows() || u.rows() == 0) {
    throw std::invalid_argument("unitary_fidelity: dimension mismatch (" + std::to_string(u.rows()) +
                                "x" + std::to_string(u.cols()) + " vs " + std::to_string(v.rows()) +
                                "x" + std::to_string(v.cols()) + ")");
  }
  for (const CMatrix* m : {&u, &v}) {
    const double defect = unitarity_defect(*m);
    if (!(defect <= unitarity_tol)) {
      std::ostringstream msg;
      msg << "unitary_fidelity: input is not unitary (max |U^dagger U - 1| = " << defect << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  const double d = static_cast<double>(u.rows());
  return std::clamp(std::abs((u.adjoint() * v).trace()) / d, 0.0, 1.0);
}

}  // namespace tripod
