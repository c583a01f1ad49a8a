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

#include "vqss/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vqss/artifacts.hpp"

namespace vqss {

namespace fs = std::filesystem;

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Tfim: return "tfim";
    case ModelKind::Xyz: return "xyz";
    case ModelKind::Custom: return "custom";
  }
  return "unknown";
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Keys each model accepts besides the shared ones.
const std::map<ModelKind, std::set<std::string>>& model_keys() {
  static const std::map<ModelKind, std::set<std::string>> keys = {
      {ModelKind::Tfim, {"v", "g"}},
      {ModelKind::Xyz, {"jx", "jy", "jz"}},
      {ModelKind::Custom, {"hamiltonian"}},
  };
  return keys;
}

const std::set<std::string>& shared_keys() {
  static const std::set<std::string> keys = {
      "model", "sites", "gamma", "ancillas", "layers", "seed", "restarts",
      "max_iter_multiplier", "max_evaluations", "fidelity_log_stride",
      "convergence_ftol", "restart_mode", "output_dir"};
  return keys;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Entry> entries)
      : source_(std::move(source)), entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry& at(const std::string& key) const { return entries_.at(key); }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    throw ConfigError(source_, it == entries_.end() ? 0 : it->second.line, what);
  }

  template <typename T>
  void number(const std::string& key, T& out, bool required) const {
    if (!has(key)) {
      if (required) fail(key, "missing required key '" + key + "'");
      return;
    }
    if (!parse_number(at(key).value, out)) {
      fail(key, "'" + key + "' expects a number, got '" + at(key).value + "'");
    }
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source,
                              const fs::path& base_dir) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line_no, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "empty key");
    if (value.empty()) throw ConfigError(source, line_no, "empty value for '" + key + "'");
    bool known = shared_keys().count(key) != 0;
    for (const auto& [kind, keys] : model_keys()) known = known || keys.count(key) != 0;
    if (!known) throw ConfigError(source, line_no, "unknown key '" + key + "'");
    if (entries.count(key)) {
      throw ConfigError(source, line_no, "duplicate key '" + key + "' (first on line " +
                                             std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, line_no};
  }

  const Reader r(source, entries);
  ExperimentConfig cfg;
  if (!r.has("model")) r.fail("model", "missing required key 'model'");
  const std::string& model = r.at("model").value;
  if (model == "tfim") {
    cfg.model = ModelKind::Tfim;
  } else if (model == "xyz") {
    cfg.model = ModelKind::Xyz;
  } else if (model == "custom") {
    cfg.model = ModelKind::Custom;
  } else {
    r.fail("model", "model must be tfim, xyz or custom, got '" + model + "'");
  }
  for (const auto& [kind, keys] : model_keys()) {
    if (kind == cfg.model) continue;
    for (const auto& key : keys) {
      if (r.has(key) && !model_keys().at(cfg.model).count(key)) {
        r.fail(key, "key '" + key + "' does not apply to model '" + model + "'");
      }
    }
  }

  r.number("sites", cfg.sites, true);
  r.number("gamma", cfg.gamma, true);
  switch (cfg.model) {
    case ModelKind::Tfim:
      r.number("v", cfg.v, true);
      r.number("g", cfg.g, true);
      break;
    case ModelKind::Xyz:
      r.number("jx", cfg.jx, true);
      r.number("jy", cfg.jy, true);
      r.number("jz", cfg.jz, true);
      break;
    case ModelKind::Custom:
      if (r.has("hamiltonian")) cfg.hamiltonian_file = base_dir / r.at("hamiltonian").value;
      break;
  }
  cfg.ancillas = cfg.sites;
  r.number("ancillas", cfg.ancillas, false);
  r.number("layers", cfg.layers, false);
  r.number("seed", cfg.seed, false);
  r.number("restarts", cfg.restarts, false);
  r.number("max_iter_multiplier", cfg.max_iter_multiplier, false);
  r.number("max_evaluations", cfg.max_evaluations, false);
  r.number("fidelity_log_stride", cfg.fidelity_log_stride, false);
  r.number("convergence_ftol", cfg.convergence_ftol, false);
  if (r.has("restart_mode")) {
    const std::string& mode = r.at("restart_mode").value;
    if (mode == "incumbent") {
      cfg.restart_mode = RestartMode::Incumbent;
    } else if (mode == "random") {
      cfg.restart_mode = RestartMode::Random;
    } else {
      r.fail("restart_mode", "restart_mode must be incumbent or random");
    }
  }
  cfg.output_dir = r.has("output_dir") ? fs::path(r.at("output_dir").value)
                                       : fs::path("out") / to_string(cfg.model);

  const int min_sites = cfg.model == ModelKind::Custom ? 1 : 2;
  if (cfg.sites < min_sites || cfg.sites > 6) {
    r.fail("sites", "sites must lie in [" + std::to_string(min_sites) + ", 6]");
  }
  if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) r.fail("gamma", "gamma must be >= 0");
  if (cfg.ancillas < 0 || cfg.ancillas > cfg.sites) {
    r.fail("ancillas", "ancillas must lie in [0, sites]");
  }
  if (cfg.layers < 1) r.fail("layers", "layers must be >= 1");
  if (cfg.restarts < 1) r.fail("restarts", "restarts must be >= 1");
  if (cfg.max_iter_multiplier < 1) r.fail("max_iter_multiplier", "max_iter_multiplier must be >= 1");
  if (cfg.max_evaluations < 0) r.fail("max_evaluations", "max_evaluations must be >= 0");
  if (cfg.fidelity_log_stride < 1) r.fail("fidelity_log_stride", "fidelity_log_stride must be >= 1");
  if (!(cfg.convergence_ftol >= 0.0)) r.fail("convergence_ftol", "convergence_ftol must be >= 0");
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse_config(in, path.string(), path.parent_path());
}

LindbladModel build_model(const ExperimentConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::Tfim:
      return tfim_model(cfg.sites, cfg.v, cfg.g, cfg.gamma);
    case ModelKind::Xyz:
      return xyz_model(cfg.sites, cfg.jx, cfg.jy, cfg.jz, cfg.gamma);
    case ModelKind::Custom: {
      const auto d = static_cast<Eigen::Index>(dim_of(cfg.sites));
      ComplexMatrix h = ComplexMatrix::Zero(d, d);
      if (!cfg.hamiltonian_file.empty()) {
        h = io::read_density_json(cfg.hamiltonian_file);
        if (h.rows() != d) {
          throw NumericError("Hamiltonian file has the wrong dimension for " +
                             std::to_string(cfg.sites) + " sites");
        }
      }
      return LindbladModel(cfg.sites, std::move(h),
                           uniform_lowering_dissipation(cfg.sites, cfg.gamma));
    }
  }
  throw NumericError("unknown model");
}

SolveConfig make_solve_config(const ExperimentConfig& cfg) {
  SolveConfig s;
  s.ansatz = {cfg.sites, cfg.ancillas, cfg.layers};
  s.restarts = cfg.restarts;
  s.max_iter_multiplier = cfg.max_iter_multiplier;
  s.seed = cfg.seed;
  s.fidelity_log_stride = cfg.fidelity_log_stride;
  s.convergence_ftol = cfg.convergence_ftol;
  s.max_evaluations = cfg.max_evaluations;
  s.restart_mode = cfg.restart_mode;
  return s;
}

namespace {

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["model"] = to_string(cfg.model);
  j["sites"] = cfg.sites;
  switch (cfg.model) {
    case ModelKind::Tfim:
      j["v"] = cfg.v;
      j["g"] = cfg.g;
      break;
    case ModelKind::Xyz:
      j["jx"] = cfg.jx;
      j["jy"] = cfg.jy;
      j["jz"] = cfg.jz;
      break;
    case ModelKind::Custom:
      j["hamiltonian"] = cfg.hamiltonian_file.string();
      break;
  }
  j["gamma"] = cfg.gamma;
  j["ancillas"] = cfg.ancillas;
  j["layers"] = cfg.layers;
  j["seed"] = cfg.seed;
  j["restarts"] = cfg.restarts;
  j["max_iter_multiplier"] = cfg.max_iter_multiplier;
  j["max_evaluations"] = cfg.max_evaluations;
  j["fidelity_log_stride"] = cfg.fidelity_log_stride;
  j["convergence_ftol"] = cfg.convergence_ftol;
  j["restart_mode"] = cfg.restart_mode == RestartMode::Incumbent ? "incumbent" : "random";
  j["output_dir"] = cfg.output_dir.string();
  return j;
}

}  // namespace

int run_experiment(const fs::path& config_path, const RunOverrides& overrides,
                   std::ostream& log) {
  ExperimentConfig cfg;
  std::optional<LindbladModel> model;
  try {
    cfg = load_config(config_path);
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    model.emplace(build_model(cfg));
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    log << "error: " << config_path.string() << ": " << e.what() << '\n';
    return kExitBadConfig;
  }

  const SolveConfig solve_cfg = make_solve_config(cfg);
  log << "model " << to_string(cfg.model) << ", " << cfg.sites << " sites, "
      << param_count(solve_cfg.ansatz) << " parameters, seed " << cfg.seed << '\n';

  std::optional<RunResult> result;
  try {
    result.emplace(solve(*model, solve_cfg));
  } catch (const DegenerateSteadyState& e) {
    log << "solver aborted: " << e.what() << '\n';
    return kExitSolverAbort;
  } catch (const std::exception& e) {
    log << "solver aborted: " << e.what() << '\n';
    return kExitSolverAbort;
  }

  try {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw io::IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
    const fs::path& dir = cfg.output_dir;
    io::write_atomic(dir / "trace.csv", io::trace_csv(*result));
    io::write_atomic(dir / "rho_ansatz.json", io::density_to_json(result->final_rho.matrix()));
    io::write_atomic(dir / "rho_oracle.json", io::density_to_json(result->oracle_rho.matrix()));
    io::emit_heatmap(result->final_rho, io::Part::Real, dir / "rho_ansatz_re.svg");
    io::emit_heatmap(result->final_rho, io::Part::Imaginary, dir / "rho_ansatz_im.svg");
    io::emit_heatmap(result->oracle_rho, io::Part::Real, dir / "rho_oracle_re.svg");
    io::emit_heatmap(result->oracle_rho, io::Part::Imaginary, dir / "rho_oracle_im.svg");

    nlohmann::json summary;
    summary["final_loss"] = result->best_loss;
    summary["final_fidelity"] = result->final_fidelity;
    summary["iterations"] = result->total_iterations;
    summary["evaluations"] = result->total_evaluations;
    summary["termination"] = opt::to_string(result->termination);
    summary["wall_time_seconds"] = result->wall_time_seconds;
    summary["oracle_residual"] = result->oracle_residual;
    summary["parameters"] = result->best_params.size();
    summary["config"] = config_echo(cfg);
    io::write_atomic(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "I/O failure: " << e.what() << '\n';
    return kExitIo;
  }

  log << std::setprecision(6) << "loss " << result->best_loss << ", fidelity "
      << result->final_fidelity << ", " << result->total_iterations << " iterations, "
      << result->total_evaluations << " evaluations, " << result->wall_time_seconds
      << " s\n"
      << "wrote " << cfg.output_dir.string() << '\n';
  return kExitOk;
}

int verify_oracle(const fs::path& config_path, std::ostream& out) {
  std::optional<LindbladModel> model;
  try {
    model.emplace(build_model(load_config(config_path)));
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  out << std::setprecision(6) << std::scientific;
  try {
    const SteadyState ss = steady_state_exact(*model);
    const double trace = ss.rho.matrix().trace().real();
    const double min_eig = eigh(ss.rho.matrix()).eigenvalues(0);
    out << "residual " << ss.residual << '\n'
        << "trace " << std::setprecision(17) << trace << std::setprecision(6) << '\n'
        << "min_eigenvalue " << min_eig << '\n'
        << "singular_values " << ss.smallest_singular << ' ' << ss.second_singular << '\n';
    const bool ok = ss.residual <= 1e-9 && std::abs(trace - 1.0) <= kTraceTol &&
                    min_eig >= kPsdClamp;
    out << (ok ? "ok" : "FAILED") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const DegenerateSteadyState& e) {
    out << "degenerate steady state: singular values " << e.smallest() << ' ' << e.second()
        << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    out << "oracle failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace vqss
