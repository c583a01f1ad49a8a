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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "vqss/linalg.hpp"
#include "vqss/solver.hpp"

namespace vqss::io {

/// Any failure to read or write an output file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// 17 significant digits, enough to round-trip a double bitwise.
std::string format_double(double v);

/// {"n": <qubits>, "re": [[...]], "im": [[...]]}, rows outermost.
std::string density_to_json(const ComplexMatrix& rho);
ComplexMatrix density_from_json(const std::string& text);
ComplexMatrix read_density_json(const std::filesystem::path& path);

/// Header `iter,loss,fidelity`; one row per loss-trace entry, fidelity left
/// empty on rows where it was not logged.
std::string trace_csv(const RunResult& result);

enum class Part { Real, Imaginary };

// Diverging scale: 21 colour levels over [-vmax, +vmax] with
// vmax = max |entry| of the plotted part. Level 10 is white (zero), level 0
// saturated blue (-vmax), level 20 saturated red (+vmax). A part whose
// largest magnitude is below kBlankBelow is drawn entirely white.
inline constexpr int kColorLevels = 21;
inline constexpr double kBlankBelow = 1e-12;

int color_index(double value, double vmax);
std::string color_hex(int level);

/// SVG grid, cell (i, j) = entry at row i, column j.
std::string heatmap_svg(const ComplexMatrix& rho, Part part);
void emit_heatmap(const DensityMatrix& rho, Part part,
                  const std::filesystem::path& path);

/// Fraction of cells whose colour level differs between two heatmaps.
double heatmap_mismatch_fraction(const ComplexMatrix& a, const ComplexMatrix& b,
                                 Part part);

}  // namespace vqss::io
