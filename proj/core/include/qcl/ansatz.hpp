// Copyright 2026 The qcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcl/statevector.hpp"

namespace qcl {

enum class GateKind { Rx, Rz, Cnot };

/// One gate of a parameterized circuit. Rotations read params[param];
/// CNOT uses qubit as control and target as target.
struct Gate {
    GateKind kind;
    int qubit;
    int target = 0;
    std::size_t param = 0;
};

/// Gate list in time order (first element acts first).
struct Circuit {
    int n_qubits = 0;
    std::size_t n_params = 0;
    std::vector<Gate> gates;
};

/**
 * Layered hardware-efficient ansatz.
 *
 * Each layer j applies, in time order: Rx(α_{j,i,1}) on every qubit,
 * Rz(α_{j,i,2}) on every qubit, the CNOT brick twice, then Rz(α_{j,i,3}) on
 * every qubit. One brick is the even-control group CNOT(2i → 2i+1) followed
 * by the odd-control group CNOT(2i-1 → 2i). With `final_rx`, a closing
 * Rx(β_i) is applied on every qubit.
 *
 * Parameter index of α_{j,i,k} (all 1-based) is ((j-1)·n + (i-1))·3 + (k-1);
 * β_i follows at n_layers·n·3 + (i-1).
 */
[[nodiscard]] Circuit hardware_efficient_ansatz(int n_qubits, int n_layers, bool final_rx);

/// Applies `circuit` to `state` in place.
void run_circuit(const Circuit& circuit, std::span<const double> params, Statevector& state);

/**
 * Adjoint-method gradient of a real function f of the circuit output.
 *
 * `output` is the state after the circuit. `cotangent` is λ = ∂f/∂ψ̄ at the
 * output, in the convention df = 2·Re⟨λ|dψ⟩. Both are consumed (unwound
 * through the circuit). Returns ∂f/∂params, length circuit.n_params.
 */
[[nodiscard]] std::vector<double> adjoint_gradient(const Circuit& circuit,
                                                   std::span<const double> params,
                                                   Statevector output,
                                                   Statevector cotangent);

} // namespace qcl
