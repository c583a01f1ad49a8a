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

#include "vqss/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vqss {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit(int q, int num_qubits, const char* what) {
  if (q < 0 || q >= num_qubits) {
    throw NumericError(std::string(what) + " qubit " + std::to_string(q) +
                       " out of range for " + std::to_string(num_qubits) +
                       " qubits");
  }
}

}  // namespace

void AnsatzConfig::validate() const {
  if (n_system < 1) throw NumericError("ansatz needs at least one system qubit");
  if (m_ancilla < 0 || m_ancilla > n_system) {
    throw NumericError("ancilla count must lie in [0, n_system]");
  }
  if (layers < 1) throw NumericError("ansatz needs at least one layer");
}

ComplexMatrix rotation_gate(Axis axis, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  ComplexMatrix g(2, 2);
  switch (axis) {
    case Axis::X:
      g << c, -kI * s, -kI * s, c;
      break;
    case Axis::Y:
      g << c, -s, s, c;
      break;
    case Axis::Z:
      g << std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2));
      break;
  }
  return g;
}

namespace kernels {

void apply_1q(Complex* amps, int num_qubits, const Complex (&g)[2][2],
              int target) {
  const std::size_t dim = dim_of(num_qubits);
  const std::size_t stride = std::size_t{1} << (num_qubits - 1 - target);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex a0 = amps[k];
      const Complex a1 = amps[k + stride];
      amps[k] = g[0][0] * a0 + g[0][1] * a1;
      amps[k + stride] = g[1][0] * a0 + g[1][1] * a1;
    }
  }
}

void apply_cry(Complex* amps, int num_qubits, double theta, int control,
               int target) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const std::size_t dim = dim_of(num_qubits);
  const std::size_t cmask = std::size_t{1} << (num_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (num_qubits - 1 - target);
  const std::size_t lo = std::min(cmask, tmask);
  const std::size_t hi = std::max(cmask, tmask);
  // Visit only indices with the control bit set and the target bit clear.
  for (std::size_t i = 0; i < dim; i += 2 * hi) {
    for (std::size_t j = i; j < i + hi; j += 2 * lo) {
      for (std::size_t k = j | cmask; k < (j | cmask) + lo; ++k) {
        const Complex a0 = amps[k];
        const Complex a1 = amps[k | tmask];
        amps[k] = c * a0 - s * a1;
        amps[k | tmask] = s * a0 + c * a1;
      }
    }
  }
}

void ansatz_into(std::span<const double> params, const AnsatzConfig& cfg,
                 ComplexVector& amps) {
  const int nq = cfg.total_qubits();
  const auto dim = static_cast<Eigen::Index>(dim_of(nq));
  amps.setZero(dim);
  amps(0) = 1.0;
  Complex* data = amps.data();
  for (int layer = 0; layer < cfg.layers; ++layer) {
    const double* block = params.data() + 4 * layer * nq;
    for (int q = 0; q < nq; ++q) {
      // Rz(a), then Rx(b), then Rz(c), fused into Rz(c) Rx(b) Rz(a).
      const double a = block[4 * q];
      const double b = block[4 * q + 1];
      const double c = block[4 * q + 2];
      const double cb = std::cos(b / 2);
      const double sb = std::sin(b / 2);
      const Complex pa = std::exp(-kI * (a / 2));
      const Complex pc = std::exp(-kI * (c / 2));
      const Complex g[2][2] = {
          {pc * pa * cb, -kI * pc * std::conj(pa) * sb},
          {-kI * std::conj(pc) * pa * sb, std::conj(pc) * std::conj(pa) * cb}};
      apply_1q(data, nq, g, q);
    }
    if (nq < 2) continue;
    for (int q = 0; q < nq; ++q) {
      apply_cry(data, nq, block[4 * q + 3], q, (q + 1) % nq);
    }
  }
}

}  // namespace kernels

StateVector apply_single_qubit_gate(const StateVector& psi,
                                    const ComplexMatrix& gate, int target) {
  check_qubit(target, psi.num_qubits, "target");
  if (gate.rows() != 2 || gate.cols() != 2 || !is_unitary(gate, 1e-10)) {
    throw NumericError("single-qubit gate must be a 2x2 unitary");
  }
  const Complex g[2][2] = {{gate(0, 0), gate(0, 1)}, {gate(1, 0), gate(1, 1)}};
  StateVector out = psi;
  kernels::apply_1q(out.amplitudes.data(), out.num_qubits, g, target);
  return out;
}

StateVector apply_cry(const StateVector& psi, double theta, int control,
                      int target) {
  check_qubit(control, psi.num_qubits, "control");
  check_qubit(target, psi.num_qubits, "target");
  if (control == target) {
    throw NumericError("controlled gate needs distinct control and target");
  }
  StateVector out = psi;
  kernels::apply_cry(out.amplitudes.data(), out.num_qubits, theta, control,
                     target);
  return out;
}

int param_count(const AnsatzConfig& cfg) {
  return 4 * cfg.layers * cfg.total_qubits();
}

StateVector build_ansatz_state(std::span<const double> params,
                               const AnsatzConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(params.size()) != param_count(cfg)) {
    throw NumericError("ansatz expects " + std::to_string(param_count(cfg)) +
                       " parameters, got " + std::to_string(params.size()));
  }
  StateVector out;
  out.num_qubits = cfg.total_qubits();
  kernels::ansatz_into(params, cfg, out.amplitudes);
  // Unitary gates keep the norm at 1 up to rounding; absorb the drift.
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

}  // namespace vqss
