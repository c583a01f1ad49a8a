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

#include <span>
#include <vector>

#include "vqss/linalg.hpp"

namespace vqss {

/// Shape of the layered purification circuit: `n_system` system qubits
/// followed by `m_ancilla` ancillas, `layers` repetitions of the block.
struct AnsatzConfig {
  int n_system = 1;
  int m_ancilla = 0;
  int layers = 1;

  int total_qubits() const { return n_system + m_ancilla; }
  /// Throws NumericError unless n_system >= 1, 0 <= m_ancilla <= n_system
  /// and layers >= 1.
  void validate() const;
};

/// Flat angle vector, layer-major then qubit, four angles per qubit:
/// (Rz, Rx, Rz, CRY) -> index 4 * (layer * N + qubit) + slot.
using ParameterVector = std::vector<double>;

enum class Axis { X, Y, Z };

/// exp(-i theta sigma_axis / 2).
ComplexMatrix rotation_gate(Axis axis, double theta);

/// Applies a 2x2 unitary to `target`. Throws on a bad index or a gate that is
/// not unitary within 1e-10.
StateVector apply_single_qubit_gate(const StateVector& psi,
                                    const ComplexMatrix& gate, int target);

/// Controlled-RY(theta) with the given control and target qubits.
StateVector apply_cry(const StateVector& psi, double theta, int control,
                      int target);

int param_count(const AnsatzConfig& cfg);

/// U(theta)|0...0> for the layered circuit described by `cfg`.
StateVector build_ansatz_state(std::span<const double> params,
                               const AnsatzConfig& cfg);

namespace kernels {

// Unchecked in-place gate kernels used on hot paths.
void apply_1q(Complex* amps, int num_qubits, const Complex (&g)[2][2],
              int target);
void apply_cry(Complex* amps, int num_qubits, double theta, int control,
               int target);

/// Same circuit as build_ansatz_state, written into `amps` (resized as
/// needed) without argument checks.
void ansatz_into(std::span<const double> params, const AnsatzConfig& cfg,
                 ComplexVector& amps);

}  // namespace kernels

}  // namespace vqss
