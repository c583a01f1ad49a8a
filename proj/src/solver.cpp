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

#include <chrono>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/SVD>

namespace vqss {

namespace {

void check_params(std::span<const double> params, const AnsatzConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(params.size()) != param_count(cfg)) {
    throw NumericError("expected " + std::to_string(param_count(cfg)) +
                       " parameters, got " + std::to_string(params.size()));
  }
}

std::vector<double> draw_angles(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& a : out) a = angle(rng);
  return out;
}

// V diag(sqrt(lambda)) over eigenvalues above the numerical-rank cutoff, so
// that F F^dagger = rho without square roots of rounding noise.
ComplexMatrix support_factor(const DensityMatrix& rho) {
  const auto ev = eigh(rho.matrix());
  const Eigen::Index d = ev.eigenvalues.size();
  const double cutoff = static_cast<double>(d) * std::numeric_limits<double>::epsilon() *
                        std::max(ev.eigenvalues(d - 1), 0.0);
  Eigen::Index first = 0;
  while (first < d - 1 && ev.eigenvalues(first) <= cutoff) ++first;
  const RealVector roots = ev.eigenvalues.tail(d - first).cwiseSqrt();
  return ev.eigenvectors.rightCols(d - first) * roots.cast<Complex>().asDiagonal();
}

}  // namespace

DensityMatrix ansatz_density(std::span<const double> params,
                             const AnsatzConfig& cfg) {
  check_params(params, cfg);
  const StateVector psi = build_ansatz_state(params, cfg);
  return partial_trace_ancilla(psi, cfg.n_system, cfg.m_ancilla);
}

LossEvaluator::LossEvaluator(const LindbladModel& model, const AnsatzConfig& cfg)
    : model_(model), cfg_(cfg) {
  cfg_.validate();
  if (model.n_system() != cfg.n_system) {
    throw NumericError("model has " + std::to_string(model.n_system()) +
                       " qubits but the ansatz has " +
                       std::to_string(cfg.n_system) + " system qubits");
  }
}

double LossEvaluator::operator()(std::span<const double> params) {
  if (static_cast<int>(params.size()) != param_count(cfg_)) {
    throw NumericError("expected " + std::to_string(param_count(cfg_)) +
                       " parameters, got " + std::to_string(params.size()));
  }
  kernels::ansatz_into(params, cfg_, amps_);
  reduce_to_system(amps_, cfg_.n_system, cfg_.m_ancilla, rho_);
  model_.apply(rho_, lrho_);
  return frobenius_norm_sq(lrho_);
}

double loss(std::span<const double> params, const LindbladModel& model,
            const AnsatzConfig& cfg) {
  LossEvaluator eval(model, cfg);
  return eval(params);
}

double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) {
    throw NumericError("fidelity: density matrices differ in dimension");
  }
  // Tr sqrt(sqrt(s) r sqrt(s)) is the trace norm of sqrt(s) sqrt(r), taken
  // here as the singular values of the product of support factors.
  const ComplexMatrix fs = support_factor(sigma);
  const ComplexMatrix fr = support_factor(rho);
  const ComplexMatrix overlap = fs.adjoint() * fr;
  const double trace_norm = Eigen::JacobiSVD<ComplexMatrix>(overlap).singularValues().sum();
  return trace_norm * trace_norm;
}

void SolveConfig::validate() const {
  ansatz.validate();
  if (restarts < 1) throw NumericError("restarts must be >= 1");
  if (max_iter_multiplier < 1) throw NumericError("max_iter_multiplier must be >= 1");
  if (fidelity_log_stride < 1) throw NumericError("fidelity_log_stride must be >= 1");
  if (!(convergence_ftol >= 0.0)) throw NumericError("convergence_ftol must be >= 0");
  if (max_evaluations < 0) throw NumericError("max_evaluations must be >= 0");
}

ParameterVector random_parameters(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_angles(count, rng);
}

RunResult solve(const LindbladModel& model, const SolveConfig& cfg,
                const std::optional<SteadyState>& oracle) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const SteadyState target = oracle ? *oracle : steady_state_exact(model);
  if (target.rho.num_qubits() != cfg.ansatz.n_system) {
    throw NumericError("oracle state does not match the ansatz system size");
  }

  LossEvaluator evaluator(model, cfg.ansatz);
  const int dim = evaluator.dimension();
  std::mt19937_64 rng(cfg.seed);
  const ParameterVector x0 = draw_angles(dim, rng);

  opt::NmOptions nm = opt::NmOptions::with_default_cap(static_cast<std::size_t>(dim));
  nm.max_iterations = static_cast<std::int64_t>(cfg.max_iter_multiplier) * dim;
  nm.fatol = cfg.convergence_ftol;
  nm.max_evaluations = cfg.max_evaluations;

  std::vector<TracePoint> fidelity_trace;
  const auto log_fidelity = [&](std::int64_t iteration, std::span<const double> best,
                                double) {
    if (iteration % cfg.fidelity_log_stride != 0) return;
    fidelity_trace.push_back(
        {iteration, fidelity(target.rho, ansatz_density(best, cfg.ansatz))});
  };
  opt::RestartPoint restart_point;
  if (cfg.restart_mode == RestartMode::Random) {
    restart_point = [&](int, std::span<const double>) { return draw_angles(dim, rng); };
  }

  const opt::Objective objective = [&](std::span<const double> p) { return evaluator(p); };
  opt::NmOutcome outcome =
      opt::restarted_minimize(objective, x0, nm, cfg.restarts, log_fidelity, restart_point);

  DensityMatrix final_rho = ansatz_density(outcome.best_point, cfg.ansatz);
  const double final_fidelity = fidelity(target.rho, final_rho);
  if (fidelity_trace.empty() || fidelity_trace.back().iteration != outcome.iterations_used) {
    fidelity_trace.push_back({outcome.iterations_used, final_fidelity});
  }

  std::vector<TracePoint> loss_trace;
  loss_trace.reserve(outcome.history.size() + 1);
  // A run that converges before its first update still reports its start.
  if (outcome.history.empty()) loss_trace.push_back({0, outcome.best_value});
  for (const auto& h : outcome.history) loss_trace.push_back({h.iteration, h.best_value});

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  return RunResult{
      .best_params = std::move(outcome.best_point),
      .best_loss = outcome.best_value,
      .loss_trace = std::move(loss_trace),
      .fidelity_trace = std::move(fidelity_trace),
      .final_rho = std::move(final_rho),
      .oracle_rho = target.rho,
      .oracle_residual = target.residual,
      .final_fidelity = final_fidelity,
      .total_iterations = outcome.iterations_used,
      .total_evaluations = outcome.evaluations_used,
      .termination = outcome.termination,
      .wall_time_seconds = elapsed.count(),
  };
}

}  // namespace vqss
