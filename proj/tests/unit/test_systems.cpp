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
#include <tripod/systems.hpp>

#include "test_util.hpp"

namespace tripod {
namespace {

using testing::Rng;

// A field whose value at t = at is exactly omega e^{i phase}.
DriveField peak_drive(double omega, double phase, std::string level, double at = 0.0) {
  DriveField d;
  d.envelopes = {{EnvelopeShape::sin_squared, omega, at - 1.0, 1.0}};
  d.phase = PhaseRamp::constant(phase);
  d.lower_level = std::move(level);
  return d;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

TEST(LambdaHamiltonian, ElementLayout) {
  LambdaSystem sys;
  sys.drive_j = peak_drive(2.0, 0.0, "j");
  sys.drive_2 = peak_drive(4.0, 0.5, "2");
  sys.detuning = 0.3;
  const CMatrix h = lambda_hamiltonian(sys, 0.0).matrix();
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 1) = expected(1, 0) = 1.0;
  expected(2, 1) = std::polar(2.0, 0.5);
  expected(1, 2) = std::polar(2.0, -0.5);
  expected(1, 1) = 0.3;
  EXPECT_LE((h - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(lambda_hamiltonian(sys, 5.0).matrix().cwiseAbs().maxCoeff(), 0.3);
}

TEST(LambdaHamiltonian, MislabeledDriveRejected) {
  LambdaSystem sys;
  sys.drive_j = peak_drive(1.0, 0.0, "2");
  EXPECT_THROW(lambda_hamiltonian(sys, 0.0), std::invalid_argument);
}

TEST(LambdaHamiltonian, DarkStateAnnihilatedOnDenseGrid) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const StirapSchedule s{testing::uniform(rng, 0.5, 2.0), 0.0, 0.0, 0.0};
    StirapSchedule sch = s;
    sch.delta_t = testing::uniform(rng, 0.2, 1.8) * s.tau;
    sch.delta_T = 2.0 * s.tau + sch.delta_t + 1.0;
    const double omega = testing::uniform(rng, 10.0, 1000.0);
    const PhaseRamp ramp = PhaseRamp::linear(testing::uniform(rng, -1.0, 1.0), testing::uniform(rng, -2.0, 2.0));
    LambdaSystem sys;
    sys.drive_j = stirap_drive(sch, FieldRole::pump, omega, PhaseRamp::constant(0.0), "j");
    sys.drive_2 = stirap_drive(sch, FieldRole::stokes, omega, ramp, "2");
    sys.detuning = testing::uniform(rng, -50.0, 50.0);
    const ScheduleTiming timing = build_schedule(sch);
    for (double t = timing.t_begin; t <= timing.t_end; t += 0.01) {
      const double pj = sys.drive_j.amplitude(t);
      const double p2 = sys.drive_2.amplitude(t);
      if (pj == 0.0 && p2 == 0.0) continue;
      const double theta = std::atan2(pj, p2);
      const CVector v = dark_state(theta, ramp.value(t)).amplitudes();
      const CMatrix h = lambda_hamiltonian(sys, t).matrix();
      EXPECT_LE((h * v).norm(), 1e-12 * omega) << "t " << t;
    }
  }
}

TEST(TripodHamiltonian, ElementLayout) {
  TripodSystem sys;
  sys.drive_0 = peak_drive(1.0, 0.2, "0");
  sys.drive_1 = peak_drive(2.0, 0.0, "1");
  sys.drive_2 = peak_drive(3.0, -1.0, "2");
  sys.detuning = -0.7;
  const CMatrix h = tripod_hamiltonian(sys, 0.0).matrix();
  EXPECT_NEAR(std::abs(h(0, 3) - std::polar(0.5, 0.2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(3, 0) - std::polar(0.5, -0.2)), 0.0, 1e-15);
  EXPECT_EQ(h(1, 3), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(h(2, 3) - std::polar(1.5, -1.0)), 0.0, 1e-15);
  EXPECT_EQ(h(3, 3), Complex(-0.7, 0.0));
  EXPECT_EQ(h.topLeftCorner(3, 3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TripodDressedStates, EqualDrivesExample) {
  const DressedBasis d = tripod_dressed_states(kPi / 4.0, 0.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(d.angles.at("omega_plus"), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d.angles.at("omega_minus"), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(d.angles.at("delta"), kPi / 4.0, 1e-12);
  EXPECT_THROW(tripod_dressed_states(0.3, 0.0, 0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(tripod_dressed_states(0.0, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(TripodDressedStates, PropertyClosedFormsOverRandomTriples) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double theta = testing::uniform(rng, 0.01, kPi / 2.0 - 0.01);
    const double phi = testing::uniform(rng, -kPi, kPi);
    const double delta = testing::uniform(rng, -20.0, 20.0);
    const double omega = testing::uniform(rng, 0.1, 100.0);
    const double o0 = omega * std::sin(theta);
    const double o1 = omega * std::cos(theta);
    const DressedBasis d = tripod_dressed_states(theta, phi, delta, o0, o1);

    const double root = std::sqrt(delta * delta + omega * omega);
    const double wp = delta + root;
    const double wm = delta - root;
    const double scale = std::max(1.0, root);
    EXPECT_NEAR(d.angles.at("omega_plus"), wp, 1e-10 * scale);
    EXPECT_NEAR(d.angles.at("omega_minus"), wm, 1e-10 * scale);
    const double dl = d.angles.at("delta");
    EXPECT_NEAR(std::tan(dl) * std::tan(dl), -wm / wp, 1e-8 * std::max(1.0, -wm / wp));

    TripodSystem sys;
    sys.drive_0 = peak_drive(o0, 0.0, "0");
    sys.drive_1 = peak_drive(o1, phi, "1");
    sys.detuning = delta;
    const CMatrix h = tripod_hamiltonian(sys, 0.0).matrix();
    const CVector dh = d.state("D_H").amplitudes();
    EXPECT_LE((h * dh).norm(), 1e-12 * scale);
    const CVector plus = d.state("+").amplitudes();
    const CVector minus = d.state("-").amplitudes();
    EXPECT_LE((h * plus - 0.5 * wp * plus).norm(), 1e-10 * scale);
    EXPECT_LE((h * minus - 0.5 * wm * minus).norm(), 1e-10 * scale);

    // |B> mixes |+> and |->; {D_H, +, -, |2>} is a complete orthonormal set.
    CMatrix frame(4, 4);
    frame << dh, plus, minus, CVector::Unit(4, 2);
    EXPECT_LE((frame.adjoint() * frame - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(std::abs(d.state("B").inner(d.state("D_H"))), 1e-14);
    EXPECT_NEAR(d.state("B").norm_squared(), 1.0, 1e-14);
  }
}

TwoAtomTripod coupled_pair(double theta2, double omega, double coupling, double at = 0.0) {
  TripodSystem atom;
  atom.drive_0 = idle_drive("0");
  atom.drive_1 = peak_drive(omega * std::sin(theta2), 0.0, "1", at);
  atom.drive_2 = peak_drive(omega * std::cos(theta2), 0.0, "2", at);
  return {atom, atom, coupling};
}

TEST(TwoAtom, KroneckerOracle) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    TwoAtomTripod sys;
    sys.atom_a.drive_0 = peak_drive(testing::uniform(rng, 0, 5), testing::uniform(rng, -3, 3), "0");
    sys.atom_a.drive_1 = peak_drive(testing::uniform(rng, 0, 5), testing::uniform(rng, -3, 3), "1");
    sys.atom_a.drive_2 = peak_drive(testing::uniform(rng, 0, 5), 0.0, "2");
    sys.atom_a.detuning = testing::uniform(rng, -1, 1);
    sys.atom_b.drive_1 = peak_drive(testing::uniform(rng, 0, 5), 0.0, "1");
    sys.atom_b.drive_2 = peak_drive(testing::uniform(rng, 0, 5), testing::uniform(rng, -3, 3), "2");
    const CMatrix ha = tripod_hamiltonian(sys.atom_a, 0.0).matrix();
    const CMatrix hb = tripod_hamiltonian(sys.atom_b, 0.0).matrix();
    const CMatrix id = CMatrix::Identity(4, 4);
    const CMatrix uncoupled = kron(ha, id) + kron(id, hb);
    sys.coupling = 0.0;
    EXPECT_LE((two_atom_hamiltonian(sys, 0.0).matrix() - uncoupled).cwiseAbs().maxCoeff(), 1e-15);
    sys.coupling = testing::uniform(rng, -2, 2);
    CMatrix coupled = uncoupled;
    coupled(10, 10) += sys.coupling;
    EXPECT_LE((two_atom_hamiltonian(sys, 0.0).matrix() - coupled).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(TwoAtom, RealResonantDetection) {
  TwoAtomTripod sys = coupled_pair(0.4, 1.0, 0.2);
  EXPECT_TRUE(sys.is_real_resonant());
  sys.atom_b.detuning = 0.1;
  EXPECT_FALSE(sys.is_real_resonant());
  sys.atom_b.detuning = 0.0;
  sys.atom_a.drive_2.phase = PhaseRamp::constant(0.5);
  EXPECT_FALSE(sys.is_real_resonant());
}

TEST(TwoAtom, DarkStatesOrthonormalAndAnnihilated) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const double theta2 = testing::uniform(rng, 0.0, kPi / 2.0);
    const double omega = testing::uniform(rng, 0.5, 100.0);
    const double e = testing::uniform(rng, -3.0, 3.0);
    const double t = testing::uniform(rng, -10.0, 10.0);
    const DressedBasis d = two_atom_dark_states(theta2, e, t);
    ASSERT_EQ(d.states.size(), 6u);
    const CMatrix hi = two_atom_interaction_hamiltonian(coupled_pair(theta2, omega, e, t), t).matrix();
    for (int a = 0; a < 6; ++a) {
      EXPECT_LE((hi * d.states[a].amplitudes()).norm(), 1e-12 * omega) << d.labels[a];
      for (int b = 0; b < 6; ++b) {
        EXPECT_NEAR(std::abs(d.states[a].inner(d.states[b]) - Complex(a == b ? 1.0 : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(TwoAtom, InteractionKernelIsSixDimensional) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const double theta2 = testing::uniform(rng, 0.05, kPi / 2.0 - 0.05);
    const double omega = testing::uniform(rng, 1.0, 100.0);
    const double e = testing::uniform(rng, 0.1, 3.0);
    const double t = testing::uniform(rng, 0.0, 10.0);
    const SpectralDecomposition s =
        eig_hermitian(two_atom_interaction_hamiltonian(coupled_pair(theta2, omega, e, t), t));
    int zeros = 0;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
      if (std::abs(s.eigenvalues(k)) < 1e-9 * omega) ++zeros;
    const DressedBasis d = two_atom_dark_states(theta2, e, t);
    ASSERT_EQ(zeros, 6);
    CMatrix kernel(16, zeros);
    int col = 0;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
      if (std::abs(s.eigenvalues(k)) < 1e-9 * omega) kernel.col(col++) = s.eigenvectors.col(k);
    // Every analytic dark state lies inside the numeric kernel.
    for (const auto& st : d.states) {
      const CVector v = st.amplitudes();
      EXPECT_NEAR((kernel.adjoint() * v).norm(), 1.0, 1e-10);
    }
  }
}

TEST(TwoAtom, InteractionPictureMatchesAtTimeZero) {
  const TwoAtomTripod sys = coupled_pair(0.7, 3.0, 0.4);
  const CMatrix h = two_atom_hamiltonian(sys, 0.0).matrix();
  CMatrix h0 = CMatrix::Zero(16, 16);
  h0(10, 10) = 0.4;
  EXPECT_LE((two_atom_interaction_hamiltonian(sys, 0.0).matrix() - (h - h0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EmbedLambda, PlacesAmplitudes) {
  const StateVector d = dark_state(0.3, 1.1);
  const StateVector t = embed_lambda(d, "1");
  EXPECT_EQ(t.amplitude("1"), d.amplitude("j"));
  EXPECT_EQ(t.amplitude("2"), d.amplitude("2"));
  EXPECT_EQ(t.amplitude("0"), Complex(0.0, 0.0));
}

}  // namespace
}  // namespace tripod
