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

#include <vector>

#include "vqss/linalg.hpp"

namespace vqss {

/// Jump operators and their rates, one channel per entry.
struct Dissipation {
  std::vector<ComplexMatrix> jump_ops;
  std::vector<double> rates;
};

/// Markovian generator
///   L rho = -i[H, rho] + sum_k gamma_k (c_k rho c_k^+ - 1/2 {c_k^+ c_k, rho})
/// on `n_system()` qubits. Immutable after construction.
class LindbladModel {
 public:
  /// Validates dimensions, Hermiticity of H and non-negative rates.
  LindbladModel(int n_system, ComplexMatrix hamiltonian,
                Dissipation dissipation);

  int n_system() const { return n_system_; }
  std::size_t dim() const { return dim_of(n_system_); }
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& jump_ops() const { return jump_ops_; }
  const std::vector<double>& rates() const { return rates_; }

  /// L rho written into `out`; `out` must not alias `rho`.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };

  int n_system_;
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> jump_ops_;
  std::vector<double> rates_;

  // H - (i/2) sum_k gamma_k c_k^+ c_k, so that the coherent part plus the
  // anticommutator is -i(Heff rho - rho Heff^+).
  ComplexMatrix effective_;
  // Nonzeros of sqrt(gamma_k) c_k for channels with gamma_k > 0.
  std::vector<std::vector<Entry>> sparse_jumps_;
};

/// `op` on `site` of a `sites`-qubit register, identity elsewhere.
ComplexMatrix embed_site(const ComplexMatrix& op, int site, int sites);

/// (V/4) sum_i Z_i Z_{i+1} + (g/2) sum_i X_i with periodic boundary.
ComplexMatrix build_tfim(int sites, double v, double g);

/// sum_i (jx X_i X_{i+1} + jy Y_i Y_{i+1} + jz Z_i Z_{i+1}) with periodic
/// boundary.
ComplexMatrix build_xyz(int sites, double jx, double jy, double jz);

/// sigma^- = (X - iY)/2 = [[0,0],[1,0]] on every site, all with rate `gamma`.
Dissipation uniform_lowering_dissipation(int sites, double gamma);

ComplexMatrix apply_liouvillian(const LindbladModel& model,
                                const ComplexMatrix& rho);

/// Column-stacking matrix of L: vec(A X B) = (B^T kron A) vec(X).
ComplexMatrix superoperator_matrix(const LindbladModel& model);

/// Column-stacked vec(X).
ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim);

/// The stationary state has a degenerate (or no) null space.
class DegenerateSteadyState : public std::runtime_error {
 public:
  DegenerateSteadyState(double smallest, double second);
  double smallest() const { return smallest_; }
  double second() const { return second_; }

 private:
  double smallest_;
  double second_;
};

class SteadyStateNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegeneracyThreshold = 1e-10;
inline constexpr double kSteadyResidualLimit = 1e-8;

struct SteadyState {
  DensityMatrix rho;
  double residual;           // ||L rho||_F
  double smallest_singular;  // of the superoperator
  double second_singular;
};

/// Stationary state from the null space of the superoperator. Throws
/// DegenerateSteadyState when the two smallest singular values both fall
/// below 1e-10 and SteadyStateNotConverged when the residual exceeds 1e-8.
SteadyState steady_state_exact(const LindbladModel& model);

/// Trace drift within a single step exceeded the allowed bound.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step RK4 integration of d rho / dt = L rho. Each step is Hermitized
/// and renormalized to unit trace.
DensityMatrix evolve_fixed_step(const LindbladModel& model,
                                const DensityMatrix& rho0, double dt,
                                int steps);

/// Spin chains with uniform lowering-operator decay at rate `gamma`.
LindbladModel tfim_model(int sites, double v, double g, double gamma);
LindbladModel xyz_model(int sites, double jx, double jy, double jz,
                        double gamma);

}  // namespace vqss
