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

#include "vqss/lindblad.hpp"

#include <cmath>
#include <string>

namespace vqss {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

void require_chain(int sites) {
  if (sites < 2) {
    throw NumericError("spin chain needs at least 2 sites, got " +
                       std::to_string(sites));
  }
}

// Periodic nearest-neighbour sum of op_i op_{i+1}.
ComplexMatrix ring_coupling(const ComplexMatrix& op, int sites) {
  const auto d = static_cast<Eigen::Index>(dim_of(sites));
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < sites; ++i) {
    h += embed_site(op, i, sites) * embed_site(op, (i + 1) % sites, sites);
  }
  return h;
}

}  // namespace

ComplexMatrix embed_site(const ComplexMatrix& op, int site, int sites) {
  if (site < 0 || site >= sites) {
    throw NumericError("site index out of range");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < sites; ++i) {
    out = kron(out, i == site ? op : ComplexMatrix::Identity(2, 2));
  }
  return out;
}

ComplexMatrix build_tfim(int sites, double v, double g) {
  require_chain(sites);
  ComplexMatrix h = (v / 4.0) * ring_coupling(pauli_z(), sites);
  for (int i = 0; i < sites; ++i) {
    h += (g / 2.0) * embed_site(pauli_x(), i, sites);
  }
  return h;
}

ComplexMatrix build_xyz(int sites, double jx, double jy, double jz) {
  require_chain(sites);
  return jx * ring_coupling(pauli_x(), sites) +
         jy * ring_coupling(pauli_y(), sites) +
         jz * ring_coupling(pauli_z(), sites);
}

Dissipation uniform_lowering_dissipation(int sites, double gamma) {
  if (sites < 1) throw NumericError("dissipation needs at least one site");
  if (!(gamma >= 0.0)) throw NumericError("dissipation rate must be >= 0");
  const ComplexMatrix lowering = 0.5 * (pauli_x() - kI * pauli_y());
  Dissipation out;
  for (int i = 0; i < sites; ++i) {
    out.jump_ops.push_back(embed_site(lowering, i, sites));
    out.rates.push_back(gamma);
  }
  return out;
}

LindbladModel::LindbladModel(int n_system, ComplexMatrix hamiltonian,
                             Dissipation dissipation)
    : n_system_(n_system),
      hamiltonian_(std::move(hamiltonian)),
      jump_ops_(std::move(dissipation.jump_ops)),
      rates_(std::move(dissipation.rates)) {
  if (n_system_ < 1) throw NumericError("model needs at least one qubit");
  const auto d = static_cast<Eigen::Index>(dim());
  if (hamiltonian_.rows() != d || hamiltonian_.cols() != d) {
    throw NumericError("Hamiltonian must be 2^n x 2^n");
  }
  if (hermiticity_defect(hamiltonian_) > kHermitianTol) {
    throw NumericError("Hamiltonian is not Hermitian");
  }
  if (jump_ops_.size() != rates_.size()) {
    throw NumericError("jump operator and rate counts differ");
  }
  effective_ = hamiltonian_;
  for (std::size_t k = 0; k < jump_ops_.size(); ++k) {
    const ComplexMatrix& c = jump_ops_[k];
    if (c.rows() != d || c.cols() != d) {
      throw NumericError("jump operator " + std::to_string(k) +
                         " must be 2^n x 2^n");
    }
    if (!(rates_[k] >= 0.0) || !std::isfinite(rates_[k])) {
      throw NumericError("rate " + std::to_string(k) + " must be >= 0");
    }
    if (rates_[k] == 0.0) continue;
    effective_ -= (0.5 * kI * rates_[k]) * (c.adjoint() * c);
    std::vector<Entry> nz;
    const double scale = std::sqrt(rates_[k]);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        if (c(i, j) != Complex(0.0)) nz.push_back({i, j, scale * c(i, j)});
      }
    }
    sparse_jumps_.push_back(std::move(nz));
  }
}

void LindbladModel::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  out.noalias() = -kI * (effective_ * rho);
  out.noalias() += kI * (rho * effective_.adjoint());
  for (const auto& nz : sparse_jumps_) {
    // (c rho c^+)_{ij} = sum c_{ik} rho_{kl} conj(c_{jl})
    for (const Entry& a : nz) {
      for (const Entry& b : nz) {
        out(a.row, b.row) += a.value * rho(a.col, b.col) * std::conj(b.value);
      }
    }
  }
}

ComplexMatrix apply_liouvillian(const LindbladModel& model,
                                const ComplexMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(model.dim());
  if (rho.rows() != d || rho.cols() != d) {
    throw NumericError("rho must be " + std::to_string(d) + "x" +
                       std::to_string(d));
  }
  ComplexMatrix out;
  model.apply(rho, out);
  return out;
}

ComplexMatrix superoperator_matrix(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(model.dim());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& h = model.hamiltonian();
  ComplexMatrix sup = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (std::size_t k = 0; k < model.jump_ops().size(); ++k) {
    const double gamma = model.rates()[k];
    if (gamma == 0.0) continue;
    const ComplexMatrix& c = model.jump_ops()[k];
    const ComplexMatrix cdc = c.adjoint() * c;
    sup += gamma * (kron(c.conjugate(), c) - 0.5 * kron(id, cdc) -
                    0.5 * kron(cdc.transpose(), id));
  }
  return sup;
}

ComplexVector vectorize(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw NumericError("vector length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

DegenerateSteadyState::DegenerateSteadyState(double smallest, double second)
    : std::runtime_error("steady state is not unique: smallest singular values " +
                         std::to_string(smallest) + ", " +
                         std::to_string(second)),
      smallest_(smallest),
      second_(second) {}

SteadyState steady_state_exact(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(model.dim());
  const NullVector nv = null_vector(superoperator_matrix(model));
  if (nv.smallest < kDegeneracyThreshold && nv.second < kDegeneracyThreshold) {
    throw DegenerateSteadyState(nv.smallest, nv.second);
  }
  ComplexMatrix rho = unvectorize(nv.vector, d);
  // Fix the arbitrary phase through the trace before Hermitizing.
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) {
    throw SteadyStateNotConverged("null vector has vanishing trace");
  }
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  const double residual = std::sqrt(frobenius_norm_sq(apply_liouvillian(model, rho)));
  if (residual > kSteadyResidualLimit) {
    throw SteadyStateNotConverged("steady-state residual " +
                                  std::to_string(residual) + " exceeds 1e-8");
  }
  return {DensityMatrix(std::move(rho)), residual, nv.smallest, nv.second};
}

DensityMatrix evolve_fixed_step(const LindbladModel& model,
                                const DensityMatrix& rho0, double dt,
                                int steps) {
  if (!(dt > 0.0)) throw NumericError("time step must be positive");
  if (steps < 1) throw NumericError("need at least one step");
  if (rho0.num_qubits() != model.n_system()) {
    throw NumericError("initial state dimension does not match model");
  }
  ComplexMatrix rho = rho0.matrix();
  ComplexMatrix k1, k2, k3, k4, tmp;
  for (int s = 0; s < steps; ++s) {
    model.apply(rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    model.apply(tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    model.apply(tmp, k3);
    tmp = rho + dt * k3;
    model.apply(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-6 || !std::isfinite(tr)) {
      throw IntegrationError("trace drifted to " + std::to_string(tr) +
                             " at step " + std::to_string(s) +
                             "; reduce dt");
    }
    rho /= tr;
  }
  return DensityMatrix(std::move(rho));
}

LindbladModel tfim_model(int sites, double v, double g, double gamma) {
  return LindbladModel(sites, build_tfim(sites, v, g),
                       uniform_lowering_dissipation(sites, gamma));
}

LindbladModel xyz_model(int sites, double jx, double jy, double jz,
                        double gamma) {
  return LindbladModel(sites, build_xyz(sites, jx, jy, jz),
                       uniform_lowering_dissipation(sites, gamma));
}

}  // namespace vqss
