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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vqss/circuits.hpp"
#include "vqss/lindblad.hpp"
#include "vqss/optimizer.hpp"

namespace vqss {

/// Reduced system state of the layered circuit: the ancillas of
/// build_ansatz_state are traced out.
DensityMatrix ansatz_density(std::span<const double> params,
                             const AnsatzConfig& cfg);

/// ||L rho(params)||_F^2.
double loss(std::span<const double> params, const LindbladModel& model,
            const AnsatzConfig& cfg);

/// Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.
double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

/// Reusable scratch buffers for repeated loss evaluation on one thread.
class LossEvaluator {
 public:
  LossEvaluator(const LindbladModel& model, const AnsatzConfig& cfg);

  double operator()(std::span<const double> params);
  int dimension() const { return param_count(cfg_); }

 private:
  const LindbladModel& model_;
  AnsatzConfig cfg_;
  ComplexVector amps_;
  ComplexMatrix rho_;
  ComplexMatrix lrho_;
};

enum class RestartMode {
  Incumbent,  // new simplex around the best point so far
  Random,     // new simplex around a fresh uniform draw
};

struct SolveConfig {
  AnsatzConfig ansatz;
  int restarts = 3;
  int max_iter_multiplier = 200;
  std::uint64_t seed = 0;
  int fidelity_log_stride = 50;
  /// Nelder-Mead function-spread tolerance; the simplex-size tolerance
  /// follows the optimizer default.
  double convergence_ftol = 1e-8;
  /// Cap on loss evaluations over all restarts; 0 disables the cap.
  std::int64_t max_evaluations = 0;
  RestartMode restart_mode = RestartMode::Incumbent;

  void validate() const;
};

struct TracePoint {
  std::int64_t iteration;
  double value;
};

struct RunResult {
  ParameterVector best_params;
  double best_loss = 0.0;
  std::vector<TracePoint> loss_trace;      // incumbent best loss per iteration
  std::vector<TracePoint> fidelity_trace;  // every fidelity_log_stride iterations
  DensityMatrix final_rho;
  DensityMatrix oracle_rho;
  double oracle_residual = 0.0;
  double final_fidelity = 0.0;
  std::int64_t total_iterations = 0;
  std::int64_t total_evaluations = 0;
  opt::Termination termination = opt::Termination::MaxIterations;
  double wall_time_seconds = 0.0;
};

/// Uniform angles in [0, 2pi) from a seeded generator.
ParameterVector random_parameters(int count, std::uint64_t seed);

/// Optimizes the loss with restarted Nelder-Mead. The steady-state oracle is
/// computed first; its errors propagate unchanged. `oracle` may be supplied
/// to skip that solve.
RunResult solve(const LindbladModel& model, const SolveConfig& cfg,
                const std::optional<SteadyState>& oracle = std::nullopt);

}  // namespace vqss
