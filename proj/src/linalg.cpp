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

#include "vqss/linalg.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vqss {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  if (dim <= 0 || !std::has_single_bit(static_cast<std::size_t>(dim))) {
    throw NumericError("dimension " + std::to_string(dim) +
                       " is not a power of two");
  }
  return std::countr_zero(static_cast<std::size_t>(dim));
}

}  // namespace

StateVector StateVector::zero_state(int num_qubits) {
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  s.amplitudes(0) = 1.0;
  return s;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw NumericError("density matrix must be square");
  }
  num_qubits_ = qubits_for_dim(matrix_.rows());
  if (!matrix_.allFinite()) {
    throw NumericError("density matrix has non-finite entries");
  }
  if (hermiticity_defect(matrix_) > kHermitianTol) {
    throw NumericError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol) {
    throw NumericError("density matrix trace deviates from 1");
  }
  const auto ev = eigh(matrix_);
  if (ev.eigenvalues(0) < kPsdClamp) {
    throw NumericError("density matrix has eigenvalue " +
                       std::to_string(ev.eigenvalues(0)));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const ComplexVector unit = psi.normalized();
  return DensityMatrix(unit * unit.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void reduce_to_system(const ComplexVector& amplitudes, int n_system,
                      int m_ancilla, ComplexMatrix& out) {
  const auto ds = static_cast<Eigen::Index>(dim_of(n_system));
  const auto de = static_cast<Eigen::Index>(dim_of(m_ancilla));
  // Row-major 2^n x 2^m view is the column-major 2^m x 2^n map, transposed.
  Eigen::Map<const ComplexMatrix> at(amplitudes.data(), de, ds);
  out.noalias() = at.transpose() * at.conjugate();
}

DensityMatrix partial_trace_ancilla(const StateVector& psi, int n_system,
                                    int m_ancilla) {
  if (n_system < 0 || m_ancilla < 0 || psi.num_qubits != n_system + m_ancilla ||
      psi.amplitudes.size() !=
          static_cast<Eigen::Index>(dim_of(n_system + m_ancilla))) {
    throw NumericError("partial trace: state has " +
                       std::to_string(psi.amplitudes.size()) +
                       " amplitudes, expected 2^(" + std::to_string(n_system) +
                       "+" + std::to_string(m_ancilla) + ")");
  }
  ComplexMatrix rho;
  reduce_to_system(psi.amplitudes, n_system, m_ancilla, rho);
  return DensityMatrix(std::move(rho));
}

EigenDecomposition eigh(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw NumericError("eigh: matrix is not square");
  }
  if (hermiticity_defect(h) > kHermitianTol) {
    throw NumericError("eigh: matrix is not Hermitian");
  }
  // Only the lower triangle is read; symmetrize so both halves agree exactly.
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const DensityMatrix& rho) {
  const auto ev = eigh(rho.matrix());
  const RealVector roots = ev.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return ev.eigenvectors * roots.cast<Complex>().asDiagonal() *
         ev.eigenvectors.adjoint();
}

double frobenius_norm_sq(const ComplexMatrix& a) {
  double sum = 0.0;
  if (a.rows() != a.cols()) {
    for (Eigen::Index k = 0; k < a.size(); ++k) sum += std::norm(a.data()[k]);
    return sum;
  }
  // Mirror entries are added pairwise so that A and A^dagger give the same
  // bits.
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      sum += std::norm(a(i, j)) + std::norm(a(j, i));
    }
    sum += std::norm(a(j, j));
  }
  return sum;
}

NullVector null_vector(const ComplexMatrix& mat) {
  if (mat.rows() != mat.cols() || mat.rows() == 0) {
    throw NumericError("null_vector: matrix must be square and non-empty");
  }
  Eigen::BDCSVD<ComplexMatrix> svd(mat, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  const Eigen::Index last = sv.size() - 1;
  NullVector out;
  out.vector = svd.matrixV().col(last).normalized();
  out.smallest = sv(last);
  out.second = last > 0 ? sv(last - 1) : 0.0;
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const auto id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).norm() <= tol;
}

}  // namespace vqss
