// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqss/circuits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace vqss;
using namespace vqss::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// |<a|b>| = 1 means equal up to a global phase.
double overlap(const ComplexVector& a, const ComplexVector& b) { return std::abs(a.dot(b)); }

StateVector basis_state(int nq, std::size_t index) {
  StateVector s{nq, ComplexVector::Zero(static_cast<Eigen::Index>(dim_of(nq)))};
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

}  // namespace

TEST(RotationGate, ZeroAngleIsIdentity) {
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    EXPECT_LE(max_abs_diff(rotation_gate(a, 0.0), ComplexMatrix::Identity(2, 2)), 1e-16);
  }
}

TEST(RotationGate, HalfTurnAboutYFlipsZero) {
  const ComplexVector out = rotation_gate(Axis::Y, kPi) * basis_state(1, 0).amplitudes;
  EXPECT_NEAR(overlap(out, basis_state(1, 1).amplitudes), 1.0, 1e-15);
}

TEST(RotationGate, InverseAngleComposesToIdentity) {
  for (int trial = 0; trial < 20; ++trial) {
    const double t = uniform(-10, 10);
    EXPECT_LE(max_abs_diff(rotation_gate(Axis::X, t) * rotation_gate(Axis::X, -t),
                           ComplexMatrix::Identity(2, 2)),
              1e-12);
  }
}

TEST(RotationGate, MatchesMatrixExponential) {
  // exp(-i t s/2) = cos(t/2) I - i sin(t/2) s for any Pauli s.
  const ComplexMatrix paulis[3] = {mat2(0, 1, 1, 0), mat2(0, Complex(0, -1), Complex(0, 1), 0),
                                   mat2(1, 0, 0, -1)};
  const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  for (int k = 0; k < 3; ++k) {
    const double t = uniform(-5, 5);
    const ComplexMatrix expected = std::cos(t / 2) * ComplexMatrix::Identity(2, 2) -
                                   Complex(0, std::sin(t / 2)) * paulis[k];
    EXPECT_LE(max_abs_diff(rotation_gate(axes[k], t), expected), 1e-15);
  }
}

TEST(RotationGate, GatesAreUnitary) {
  for (int trial = 0; trial < 100; ++trial) {
    const double t = uniform(-20, 20);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) EXPECT_TRUE(is_unitary(rotation_gate(a, t), 1e-12));
    EXPECT_TRUE(is_unitary(dense_cry(t, 0, 1, 2), 1e-12));
  }
}

TEST(SingleQubitGate, IdentityLeavesStateUnchanged) {
  const StateVector psi = random_state(3);
  const StateVector out = apply_single_qubit_gate(psi, ComplexMatrix::Identity(2, 2), 1);
  EXPECT_EQ(out.amplitudes, psi.amplitudes);
}

TEST(SingleQubitGate, FlipOfLeadingQubit) {
  const StateVector out = apply_single_qubit_gate(basis_state(2, 0), rotation_gate(Axis::Y, kPi), 0);
  EXPECT_NEAR(overlap(out.amplitudes, basis_state(2, 0b10).amplitudes), 1.0, 1e-15);
}

TEST(SingleQubitGate, MatchesDenseKronOracle) {
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_state(3);
    const ComplexMatrix g = random_unitary(2);
    const int target = trial % 3;
    const StateVector out = apply_single_qubit_gate(psi, g, target);
    EXPECT_LE(max_abs_diff(out.amplitudes, dense_1q(g, target, 3) * psi.amplitudes), 1e-12);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  }
}

TEST(SingleQubitGate, RejectsBadInputs) {
  const StateVector psi = random_state(2);
  EXPECT_THROW(apply_single_qubit_gate(psi, ComplexMatrix::Identity(2, 2), 2), NumericError);
  EXPECT_THROW(apply_single_qubit_gate(psi, ComplexMatrix::Identity(2, 2), -1), NumericError);
  EXPECT_THROW(apply_single_qubit_gate(psi, mat2(1, 1, 0, 1), 0), NumericError);
  EXPECT_THROW(apply_single_qubit_gate(psi, ComplexMatrix::Identity(4, 4), 0), NumericError);
}

TEST(ControlledRy, InactiveControlLeavesStateUnchanged) {
  // Control qubit 0 in |0>, everything else arbitrary.
  ComplexVector rest = random_unit_vector(4);
  StateVector psi{3, ComplexVector::Zero(8)};
  psi.amplitudes.head(4) = rest;
  const StateVector out = apply_cry(psi, uniform(0, 6), 0, 2);
  EXPECT_EQ(out.amplitudes, psi.amplitudes);
}

TEST(ControlledRy, HalfTurnFlipsTarget) {
  const StateVector out = apply_cry(basis_state(2, 0b10), kPi, 0, 1);
  EXPECT_NEAR(overlap(out.amplitudes, basis_state(2, 0b11).amplitudes), 1.0, 1e-15);
}

TEST(ControlledRy, MatchesDenseOracleForAllPairs) {
  for (int control = 0; control < 3; ++control) {
    for (int target = 0; target < 3; ++target) {
      if (control == target) continue;
      const StateVector psi = random_state(3);
      const double t = uniform(-6, 6);
      const StateVector out = apply_cry(psi, t, control, target);
      EXPECT_LE(max_abs_diff(out.amplitudes, dense_cry(t, control, target, 3) * psi.amplitudes),
                1e-12);
    }
  }
  const StateVector psi = random_state(2);
  const double t = uniform(-6, 6);
  EXPECT_LE(max_abs_diff(apply_cry(psi, t, 0, 1).amplitudes, dense_cry(t, 0, 1, 2) * psi.amplitudes),
            1e-12);
}

TEST(ControlledRy, RejectsBadQubits) {
  const StateVector psi = random_state(2);
  EXPECT_THROW(apply_cry(psi, 0.3, 1, 1), NumericError);
  EXPECT_THROW(apply_cry(psi, 0.3, 0, 2), NumericError);
  EXPECT_THROW(apply_cry(psi, 0.3, 5, 0), NumericError);
}

TEST(ParamCount, Formula) {
  EXPECT_EQ(param_count({4, 4, 4}), 128);
  EXPECT_EQ(param_count({4, 4, 8}), 256);
  EXPECT_EQ(param_count({1, 0, 1}), 4);
}

TEST(AnsatzConfig, Validation) {
  EXPECT_NO_THROW((AnsatzConfig{4, 4, 4}.validate()));
  EXPECT_THROW((AnsatzConfig{2, 3, 1}.validate()), NumericError);
  EXPECT_THROW((AnsatzConfig{0, 0, 1}.validate()), NumericError);
  EXPECT_THROW((AnsatzConfig{2, 1, 0}.validate()), NumericError);
}

TEST(BuildAnsatz, ZeroParametersGiveAllZeroState) {
  const AnsatzConfig cfg{2, 2, 3};
  const ParameterVector p(static_cast<std::size_t>(param_count(cfg)), 0.0);
  const StateVector psi = build_ansatz_state(p, cfg);
  EXPECT_LE(max_abs_diff(psi.amplitudes, basis_state(4, 0).amplitudes), 1e-15);
}

TEST(BuildAnsatz, EightQubitFourLayerCircuitTakes128Angles) {
  const AnsatzConfig cfg{4, 4, 4};
  EXPECT_NO_THROW(build_ansatz_state(ParameterVector(128, 0.1), cfg));
  EXPECT_THROW(build_ansatz_state(ParameterVector(127, 0.1), cfg), NumericError);
  EXPECT_THROW(build_ansatz_state(ParameterVector(129, 0.1), cfg), NumericError);
}

TEST(BuildAnsatz, MatchesDenseUnitaryComposition) {
  const AnsatzConfig configs[] = {{2, 1, 2}, {1, 0, 3}, {1, 1, 2}, {2, 2, 2}, {3, 1, 1}};
  for (const auto& cfg : configs) {
    for (int trial = 0; trial < 3; ++trial) {
      ParameterVector p(static_cast<std::size_t>(param_count(cfg)));
      for (auto& x : p) x = uniform(0, 2 * kPi);
      const StateVector psi = build_ansatz_state(p, cfg);
      const ComplexVector expected = dense_circuit(p, cfg).col(0);
      EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
      EXPECT_LE(max_abs_diff(psi.amplitudes, expected), 1e-11)
          << "n=" << cfg.n_system << " m=" << cfg.m_ancilla << " M=" << cfg.layers;
    }
  }
}

TEST(BuildAnsatz, DeterministicAndNormalized) {
  const AnsatzConfig cfg{4, 4, 4};
  for (int trial = 0; trial < 20; ++trial) {
    ParameterVector p(128);
    for (auto& x : p) x = uniform(-10, 10);
    const StateVector a = build_ansatz_state(p, cfg);
    const StateVector b = build_ansatz_state(p, cfg);
    EXPECT_EQ(a.amplitudes, b.amplitudes);
    EXPECT_NEAR(a.norm(), 1.0, 1e-12);
  }
}
