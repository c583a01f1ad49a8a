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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqss {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when a numeric precondition (shape, Hermiticity, unitarity, ...) is
/// not met.
class NumericError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tolerance ladder shared by the dense routines below.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdClamp = -1e-9;

constexpr std::size_t dim_of(int num_qubits) {
  return std::size_t{1} << num_qubits;
}

/// Pure state on `num_qubits` qubits. Qubit 0 is the most significant bit of
/// the basis index.
struct StateVector {
  int num_qubits = 0;
  ComplexVector amplitudes;

  /// |0...0>.
  static StateVector zero_state(int num_qubits);
  double norm() const { return amplitudes.norm(); }
};

/// Hermitian, unit-trace, positive semidefinite matrix on `num_qubits()`
/// qubits. The invariants are checked on construction.
class DensityMatrix {
 public:
  /// Validates `matrix` against the density-matrix invariants and throws
  /// NumericError on violation.
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix maximally_mixed(int num_qubits);
  static DensityMatrix pure(const ComplexVector& psi);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  int num_qubits_ = 0;
  ComplexMatrix matrix_;
};

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns
};

struct NullVector {
  ComplexVector vector;   // unit 2-norm
  double smallest = 0.0;  // smallest singular value
  double second = 0.0;    // next singular value (0 for 1x1 input)
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state of the first `n_system` qubits of `psi` after tracing out
/// the trailing `m_ancilla` qubits.
DensityMatrix partial_trace_ancilla(const StateVector& psi, int n_system,
                                    int m_ancilla);

/// Unchecked kernel behind partial_trace_ancilla; writes A A^dagger into
/// `out` where A is `amplitudes` reshaped row-major to 2^n x 2^m.
void reduce_to_system(const ComplexVector& amplitudes, int n_system,
                      int m_ancilla, ComplexMatrix& out);

/// Hermitian eigendecomposition with eigenvalues in ascending order.
EigenDecomposition eigh(const ComplexMatrix& h);

/// V diag(sqrt(max(lambda, 0))) V^dagger.
ComplexMatrix psd_sqrt(const DensityMatrix& rho);

double frobenius_norm_sq(const ComplexMatrix& a);

/// Right-singular vector belonging to the smallest singular value.
NullVector null_vector(const ComplexMatrix& mat);

double hermiticity_defect(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& u, double tol);

}  // namespace vqss
