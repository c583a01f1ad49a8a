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

#include "vqss/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace vqss;
using namespace vqss::testing;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ParameterVector random_angles(const AnsatzConfig& cfg) {
  ParameterVector p(static_cast<std::size_t>(param_count(cfg)));
  for (auto& x : p) x = uniform(0, kTwoPi);
  return p;
}

LindbladModel decaying_qubit() {
  return LindbladModel(1, ComplexMatrix::Zero(2, 2), uniform_lowering_dissipation(1, 1.0));
}

DensityMatrix excited_state() { return DensityMatrix(mat2(0, 0, 0, 1)); }

int numerical_rank(const ComplexMatrix& rho, double tol = 1e-10) {
  const RealVector ev = eigh(rho).eigenvalues;
  return static_cast<int>((ev.array() > tol).count());
}

SolveConfig qubit_solve(std::uint64_t seed) {
  SolveConfig cfg;
  cfg.ansatz = {1, 1, 1};
  cfg.restarts = 1;
  cfg.seed = seed;
  cfg.fidelity_log_stride = 10;
  return cfg;
}

}  // namespace

TEST(AnsatzDensity, ZeroParametersGiveGroundProduct) {
  const AnsatzConfig cfg{2, 2, 2};
  const DensityMatrix rho = ansatz_density(ParameterVector(32, 0.0), cfg);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  EXPECT_LE(max_abs_diff(rho.matrix(), expected), 1e-15);
}

TEST(AnsatzDensity, NoAncillaGivesProjector) {
  const AnsatzConfig cfg{2, 0, 2};
  const ParameterVector p = random_angles(cfg);
  const StateVector psi = build_ansatz_state(p, cfg);
  const DensityMatrix rho = ansatz_density(p, cfg);
  EXPECT_LE(max_abs_diff(rho.matrix(), psi.amplitudes * psi.amplitudes.adjoint()), 1e-15);
  EXPECT_EQ(numerical_rank(rho.matrix()), 1);
}

TEST(AnsatzDensity, SpectrumAndRankBound) {
  const AnsatzConfig configs[] = {{2, 2, 2}, {3, 1, 2}, {4, 2, 1}, {2, 1, 3}};
  for (const auto& cfg : configs) {
    const int bound = 1 << std::min(cfg.n_system, cfg.m_ancilla);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = ansatz_density(random_angles(cfg), cfg);
      const RealVector ev = eigh(rho.matrix()).eigenvalues;
      EXPECT_GE(ev.minCoeff(), -1e-10);
      EXPECT_LE(ev.maxCoeff(), 1.0 + 1e-10);
      EXPECT_NEAR(ev.sum(), 1.0, 1e-12);
      EXPECT_LE(numerical_rank(rho.matrix()), bound);
    }
  }
}

TEST(AnsatzDensity, InvariantsHoldUnderFuzzing) {
  const AnsatzConfig cfg{2, 2, 2};
  for (int trial = 0; trial < 1000; ++trial) {
    ParameterVector p(32);
    for (auto& x : p) x = uniform(-50, 50);
    EXPECT_NO_THROW(ansatz_density(p, cfg));
  }
}

TEST(Loss, VanishesForTrivialGenerator) {
  const LindbladModel zero(2, ComplexMatrix::Zero(4, 4), uniform_lowering_dissipation(2, 0.0));
  const AnsatzConfig cfg{2, 1, 2};
  for (int trial = 0; trial < 10; ++trial) EXPECT_EQ(loss(random_angles(cfg), zero, cfg), 0.0);
}

TEST(Loss, NonNegativeAndMatchesDefinition) {
  const LindbladModel model = tfim_model(3, 0.3, 1.0, 0.5);
  const AnsatzConfig cfg{3, 2, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const ParameterVector p = random_angles(cfg);
    const double value = loss(p, model, cfg);
    EXPECT_GE(value, 0.0);
    const ComplexMatrix lrho = apply_liouvillian(model, ansatz_density(p, cfg).matrix());
    EXPECT_NEAR(value, lrho.squaredNorm(), 1e-12 * std::max(1.0, value));
  }
}

TEST(Loss, EvaluatorAgreesWithFreeFunction) {
  const LindbladModel model = xyz_model(2, 0.9, 0.4, 1.0, 1.0);
  const AnsatzConfig cfg{2, 2, 3};
  LossEvaluator eval(model, cfg);
  EXPECT_EQ(eval.dimension(), param_count(cfg));
  for (int trial = 0; trial < 20; ++trial) {
    const ParameterVector p = random_angles(cfg);
    const double ref = loss(p, model, cfg);
    EXPECT_NEAR(eval(p), ref, 1e-13 * std::max(1.0, ref));
  }
}

TEST(Loss, RejectsDimensionMismatch) {
  const LindbladModel model = tfim_model(3, 0.3, 1.0, 0.5);
  const AnsatzConfig cfg{2, 2, 1};
  EXPECT_THROW(loss(ParameterVector(static_cast<std::size_t>(param_count(cfg)), 0.0), model, cfg),
               NumericError);
  EXPECT_THROW(LossEvaluator(model, cfg), NumericError);
}

TEST(Loss, OracleStateIsAtTheNumericalFloor) {
  const LindbladModel model = tfim_model(4, 0.3, 1.0, 0.5);
  const SteadyState ss = steady_state_exact(model);
  EXPECT_LE(frobenius_norm_sq(apply_liouvillian(model, ss.rho.matrix())), 1e-18);
}

TEST(Loss, DecreasesAlongScanTowardVerifiedOptimum) {
  // One qubit, one ancilla, one layer: the X rotation on the system qubit
  // sweeps |0> to |1>, the decay attractor.
  const LindbladModel model = decaying_qubit();
  const AnsatzConfig cfg{1, 1, 1};
  ParameterVector p(8, 0.0);
  p[1] = std::numbers::pi;
  EXPECT_LE(loss(p, model, cfg), 1e-28);
  EXPECT_NEAR(fidelity(ansatz_density(p, cfg), excited_state()), 1.0, 1e-12);
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 50; ++k) {
    p[1] = std::numbers::pi * k / 50.0;
    const double value = loss(p, model, cfg);
    EXPECT_LT(value, previous) << "step " << k;
    previous = value;
  }
}

TEST(Fidelity, SelfFidelityIsOne) {
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(2 + trial % 2);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  }
}

TEST(Fidelity, PureStatesReduceToOverlap) {
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector a = random_unit_vector(8), b = random_unit_vector(8);
    const double overlap = std::norm(a.dot(b));
    EXPECT_NEAR(fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)), overlap, 1e-10);
  }
}

TEST(Fidelity, GroundStateAgainstMaximallyMixed) {
  EXPECT_NEAR(fidelity(DensityMatrix(mat2(1, 0, 0, 0)), DensityMatrix::maximally_mixed(1)), 0.5,
              1e-12);
}

TEST(Fidelity, SymmetricAndBounded) {
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix a = random_density(2, 1 + trial % 4), b = random_density(2);
    const double ab = fidelity(a, b), ba = fidelity(b, a);
    EXPECT_NEAR(ab, ba, 1e-9);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-9);
  }
}

TEST(Fidelity, RejectsDimensionMismatch) {
  EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(1), DensityMatrix::maximally_mixed(2)),
               NumericError);
}

TEST(RandomParameters, SeededUniformAngles) {
  const ParameterVector a = random_parameters(500, 7), b = random_parameters(500, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_parameters(500, 8));
  for (double x : a) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, kTwoPi);
  }
}

TEST(SolveConfig, Validation) {
  SolveConfig cfg = qubit_solve(1);
  EXPECT_NO_THROW(cfg.validate());
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = qubit_solve(1);
  cfg.max_iter_multiplier = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = qubit_solve(1);
  cfg.fidelity_log_stride = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Solve, DecayingQubitReachesAttractorForEverySeed) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const RunResult r = solve(decaying_qubit(), qubit_solve(seed));
    EXPECT_GE(r.final_fidelity, 0.999) << "seed " << seed;
    EXPECT_LE(r.best_loss, 1e-5) << "seed " << seed;
    EXPECT_GE(fidelity(r.final_rho, excited_state()), 0.999) << "seed " << seed;
    EXPECT_LE(max_abs_diff(r.oracle_rho.matrix(), excited_state().matrix()), 1e-10);
  }
}

TEST(Solve, ResultInvariants) {
  const LindbladModel model = tfim_model(2, 0.3, 1.0, 0.5);
  SolveConfig cfg;
  cfg.ansatz = {2, 2, 1};
  cfg.restarts = 2;
  cfg.max_iter_multiplier = 5;
  cfg.seed = 11;
  cfg.fidelity_log_stride = 7;
  const RunResult r = solve(model, cfg);

  EXPECT_NEAR(r.best_loss, loss(r.best_params, model, cfg.ansatz), 1e-12);
  ASSERT_FALSE(r.loss_trace.empty());
  for (std::size_t k = 0; k < r.loss_trace.size(); ++k) {
    EXPECT_GE(r.loss_trace[k].value, 0.0);
    if (k > 0) EXPECT_LE(r.loss_trace[k].value, r.loss_trace[k - 1].value);
  }
  EXPECT_EQ(r.loss_trace.back().value, r.best_loss);
  EXPECT_LE(r.total_iterations, 2 * 5 * param_count(cfg.ansatz));
  EXPECT_GE(r.total_evaluations, r.total_iterations);
  ASSERT_FALSE(r.fidelity_trace.empty());
  for (std::size_t k = 0; k + 1 < r.fidelity_trace.size(); ++k) {
    EXPECT_EQ(r.fidelity_trace[k].iteration % 7, 0);
  }
  EXPECT_EQ(r.fidelity_trace.back().iteration, r.total_iterations);
  EXPECT_NEAR(r.fidelity_trace.back().value, r.final_fidelity, 1e-12);
  EXPECT_NEAR(r.final_fidelity, fidelity(r.final_rho, r.oracle_rho), 1e-12);
  EXPECT_GE(r.wall_time_seconds, 0.0);
}

TEST(Solve, SeededRunsAreReproducible) {
  const LindbladModel model = tfim_model(2, 0.3, 1.0, 0.5);
  SolveConfig cfg;
  cfg.ansatz = {2, 1, 1};
  cfg.restarts = 2;
  cfg.max_iter_multiplier = 10;
  cfg.seed = 3;
  const RunResult a = solve(model, cfg), b = solve(model, cfg);
  EXPECT_EQ(a.best_params, b.best_params);
  ASSERT_EQ(a.loss_trace.size(), b.loss_trace.size());
  for (std::size_t k = 0; k < a.loss_trace.size(); ++k) {
    EXPECT_EQ(a.loss_trace[k].value, b.loss_trace[k].value);
  }
}

TEST(Solve, RandomRestartModeKeepsIncumbent) {
  const LindbladModel model = tfim_model(2, 0.3, 1.0, 0.5);
  SolveConfig cfg;
  cfg.ansatz = {2, 1, 1};
  cfg.restarts = 3;
  cfg.max_iter_multiplier = 10;
  cfg.seed = 5;
  cfg.restart_mode = RestartMode::Random;
  const RunResult r = solve(model, cfg);
  for (std::size_t k = 1; k < r.loss_trace.size(); ++k) {
    EXPECT_LE(r.loss_trace[k].value, r.loss_trace[k - 1].value);
  }
  EXPECT_NEAR(r.best_loss, loss(r.best_params, model, cfg.ansatz), 1e-12);
}

TEST(Solve, EvaluationCapIsHonoured) {
  const LindbladModel model = tfim_model(2, 0.3, 1.0, 0.5);
  SolveConfig cfg;
  cfg.ansatz = {2, 2, 1};
  cfg.restarts = 100;
  cfg.seed = 9;
  cfg.max_evaluations = 400;
  const RunResult r = solve(model, cfg);
  EXPECT_LE(r.total_evaluations, 400);
  EXPECT_EQ(r.termination, opt::Termination::EvaluationBudget);
}

TEST(Solve, DegenerateOracleAborts) {
  SolveConfig cfg;
  cfg.ansatz = {2, 1, 1};
  cfg.restarts = 1;
  cfg.max_iter_multiplier = 1;
  EXPECT_THROW(solve(tfim_model(2, 0.3, 1.0, 0.0), cfg), DegenerateSteadyState);
}
