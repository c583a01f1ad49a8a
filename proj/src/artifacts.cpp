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

#include "vqss/artifacts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace vqss::io {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string density_to_json(const ComplexMatrix& rho) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  std::string out = "{\"n\": " + std::to_string(std::countr_zero(dim));
  for (const bool real : {true, false}) {
    out += real ? ", \"re\": [" : ", \"im\": [";
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      out += i ? ", [" : "[";
      for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        if (j) out += ", ";
        out += format_double(real ? rho(i, j).real() : rho(i, j).imag());
      }
      out += "]";
    }
    out += "]";
  }
  out += "}\n";
  return out;
}

ComplexMatrix density_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("density JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("re") ||
      !doc.contains("im")) {
    throw IoError("density JSON: expected keys n, re, im");
  }
  const int n = doc["n"].get<int>();
  if (n < 0 || n > 12) throw IoError("density JSON: unsupported qubit count");
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  ComplexMatrix rho(dim, dim);
  const auto& re = doc["re"];
  const auto& im = doc["im"];
  if (!re.is_array() || !im.is_array() || std::ssize(re) != dim ||
      std::ssize(im) != dim) {
    throw IoError("density JSON: expected " + std::to_string(dim) + " rows");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& rr = re[static_cast<std::size_t>(i)];
    const auto& ir = im[static_cast<std::size_t>(i)];
    if (!rr.is_array() || !ir.is_array() || std::ssize(rr) != dim ||
        std::ssize(ir) != dim) {
      throw IoError("density JSON: row " + std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      rho(i, j) = Complex(rr[jj].get<double>(), ir[jj].get<double>());
    }
  }
  return rho;
}

ComplexMatrix read_density_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return density_from_json(buf.str());
}

std::string trace_csv(const RunResult& result) {
  std::map<std::int64_t, double> logged;
  for (const auto& f : result.fidelity_trace) logged[f.iteration] = f.value;
  std::string out = "iter,loss,fidelity\n";
  for (const auto& p : result.loss_trace) {
    out += std::to_string(p.iteration);
    out += ',';
    out += format_double(p.value);
    out += ',';
    if (auto it = logged.find(p.iteration); it != logged.end()) {
      out += format_double(it->second);
    }
    out += '\n';
  }
  return out;
}

int color_index(double value, double vmax) {
  constexpr int mid = kColorLevels / 2;
  if (!(vmax > 0.0)) return mid;
  const double t = std::clamp(value / vmax, -1.0, 1.0);
  return mid + static_cast<int>(std::lround(t * mid));
}

std::string color_hex(int level) {
  constexpr int mid = kColorLevels / 2;
  level = std::clamp(level, 0, kColorLevels - 1);
  // White at the midpoint, fading to #2166ac (negative) and #b2182b (positive).
  const double t = static_cast<double>(std::abs(level - mid)) / mid;
  const int end[2][3] = {{0x21, 0x66, 0xac}, {0xb2, 0x18, 0x2b}};
  const int* c = end[level >= mid ? 1 : 0];
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(255 + t * (c[0] - 255))),
                static_cast<int>(std::lround(255 + t * (c[1] - 255))),
                static_cast<int>(std::lround(255 + t * (c[2] - 255))));
  return buf;
}

namespace {

double part_of(const Complex& z, Part part) {
  return part == Part::Real ? z.real() : z.imag();
}

double part_max(const ComplexMatrix& m, Part part) {
  double vmax = 0.0;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    vmax = std::max(vmax, std::abs(part_of(m.data()[k], part)));
  }
  // Rounding-level parts are drawn blank rather than amplified to full scale.
  return vmax < kBlankBelow ? 0.0 : vmax;
}

}  // namespace

std::string heatmap_svg(const ComplexMatrix& rho, Part part) {
  constexpr int cell = 24;
  const auto rows = rho.rows();
  const auto cols = rho.cols();
  const double vmax = part_max(rho, part);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell
     << "\" height=\"" << rows * cell << "\" viewBox=\"0 0 " << cols * cell << ' '
     << rows * cell << "\">\n";
  os << "<desc>" << (part == Part::Real ? "real" : "imaginary")
     << " part; diverging scale over [-" << format_double(vmax) << ", "
     << format_double(vmax) << "]</desc>\n";
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double v = part_of(rho(i, j), part);
      const int level = color_index(v, vmax);
      os << "<rect x=\"" << j * cell << "\" y=\"" << i * cell << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"" << color_hex(level)
         << "\" data-level=\"" << level << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void emit_heatmap(const DensityMatrix& rho, Part part, const fs::path& path) {
  write_atomic(path, heatmap_svg(rho.matrix(), part));
}

double heatmap_mismatch_fraction(const ComplexMatrix& a, const ComplexMatrix& b,
                                 Part part) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw NumericError("heatmap comparison needs equal shapes");
  }
  const double amax = part_max(a, part);
  const double bmax = part_max(b, part);
  Eigen::Index differ = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (color_index(part_of(a.data()[k], part), amax) !=
        color_index(part_of(b.data()[k], part), bmax)) {
      ++differ;
    }
  }
  return static_cast<double>(differ) / static_cast<double>(a.size());
}

}  // namespace vqss::io
