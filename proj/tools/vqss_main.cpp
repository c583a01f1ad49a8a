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

// vqss run <config> [--seed N] [--output-dir DIR]
// vqss verify-oracle <config>
// vqss heatmap <rho.json> --part re|im --out <path>

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vqss/artifacts.hpp"
#include "vqss/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Variational steady-state solver for Lindblad models"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  auto* run = app.add_subcommand("run", "optimize the circuit ansatz and write results");
  run->add_option("config", run_config, "experiment config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--output-dir", output_dir, "override the config output_dir");

  std::string verify_config;
  auto* verify = app.add_subcommand("verify-oracle", "check the exact steady state");
  verify->add_option("config", verify_config, "experiment config file")->required();

  std::string rho_path, part = "re", out_path;
  auto* heatmap = app.add_subcommand("heatmap", "render a density-matrix JSON as SVG");
  heatmap->add_option("rho", rho_path, "density matrix JSON")->required();
  heatmap->add_option("--part", part, "re or im")->check(CLI::IsMember({"re", "im"}));
  heatmap->add_option("--out", out_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : vqss::kExitBadConfig;
  }

  if (*run) {
    vqss::RunOverrides overrides;
    overrides.seed = seed;
    if (output_dir) overrides.output_dir = *output_dir;
    return vqss::run_experiment(run_config, overrides, std::cout);
  }
  if (*verify) return vqss::verify_oracle(verify_config, std::cout);

  try {
    const vqss::DensityMatrix rho(vqss::io::read_density_json(rho_path));
    vqss::io::emit_heatmap(rho, part == "re" ? vqss::io::Part::Real : vqss::io::Part::Imaginary,
                           out_path);
  } catch (const vqss::io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vqss::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vqss::kExitBadConfig;
  }
  return vqss::kExitOk;
}
