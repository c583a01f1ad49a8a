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

#include <random>

#include "vqss/linalg.hpp"

namespace vqss::testing {

inline std::mt19937_64& shared_rng() {
  static std::mt19937_64 rng(20260101);
  return rng;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(shared_rng());
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n01;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m.data()[k] = Complex(n01(shared_rng()), n01(shared_rng()));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index dim) {
  const ComplexMatrix a = random_matrix(dim, dim);
  return 0.5 * (a + a.adjoint());
}

inline ComplexVector random_unit_vector(Eigen::Index dim) {
  return random_matrix(dim, 1).col(0).normalized();
}

inline StateVector random_state(int num_qubits) {
  return {num_qubits, random_unit_vector(static_cast<Eigen::Index>(dim_of(num_qubits)))};
}

/// G G^dagger / Tr, full rank with probability one.
inline DensityMatrix random_density(int num_qubits, Eigen::Index rank = -1) {
  const auto dim = static_cast<Eigen::Index>(dim_of(num_qubits));
  const ComplexMatrix g = random_matrix(dim, rank < 0 ? dim : rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho);
}

inline ComplexMatrix random_unitary(Eigen::Index dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(dim, dim));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace vqss::testing
