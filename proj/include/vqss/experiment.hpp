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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "vqss/lindblad.hpp"
#include "vqss/solver.hpp"

namespace vqss {

/// Process exit codes of the experiment runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // verify-oracle: residual or invariants out of bounds
  kExitBadConfig = 2,
  kExitSolverAbort = 3,
  kExitIo = 4,
  kExitDegenerate = 5,
};

enum class ModelKind { Tfim, Xyz, Custom };

const char* to_string(ModelKind kind);

/// Flat `key = value` run description. See README for the key list.
struct ExperimentConfig {
  ModelKind model = ModelKind::Tfim;
  int sites = 0;
  double v = 0.0;
  double g = 0.0;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double gamma = 0.0;
  /// Custom model only: JSON matrix file for H, resolved against the config
  /// file's directory. Empty means H = 0.
  std::filesystem::path hamiltonian_file;
  int ancillas = 0;
  int layers = 4;
  std::uint64_t seed = 0;
  int restarts = 3;
  int max_iter_multiplier = 200;
  std::int64_t max_evaluations = 0;
  int fidelity_log_stride = 50;
  double convergence_ftol = 1e-8;
  RestartMode restart_mode = RestartMode::Incumbent;
  std::filesystem::path output_dir = "out";
};

/// Config problem; `line()` is 0 when the problem is not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses and validates. Unknown, duplicated, malformed or model-inapplicable
/// keys are rejected with the offending line number.
ExperimentConfig parse_config(std::istream& in, const std::string& source,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

LindbladModel build_model(const ExperimentConfig& cfg);
SolveConfig make_solve_config(const ExperimentConfig& cfg);

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_dir;
};

/// Loads the config, solves, and writes trace.csv, rho_ansatz.json,
/// rho_oracle.json, summary.json and the four heatmaps into the output
/// directory. Returns an ExitCode.
int run_experiment(const std::filesystem::path& config_path,
                   const RunOverrides& overrides, std::ostream& log);

/// Solves for the exact steady state and reports its residual, trace and
/// smallest eigenvalue. Returns an ExitCode.
int verify_oracle(const std::filesystem::path& config_path, std::ostream& out);

}  // namespace vqss
