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
#include "qcl/ansatz.hpp"

#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

void apply_gate(const Gate& g, std::span<const double> params, Statevector& s, double sign) {
    switch (g.kind) {
    case GateKind::Rx:
        apply_rx(s, g.qubit, sign * params[g.param]);
        break;
    case GateKind::Rz:
        apply_rz(s, g.qubit, sign * params[g.param]);
        break;
    case GateKind::Cnot:
        apply_cnot(s, g.qubit, g.target);
        break;
    }
}

// Im⟨a|P_q|b⟩ for P = X or Z, without materializing P|b⟩.
double imag_pauli_overlap(const Statevector& a, const Statevector& b, GateKind kind, int q) {
    const std::size_t mask = b.bit_of(q);
    const auto xa = a.amplitudes();
    const auto xb = b.amplitudes();
    double total = 0.0;
    if (kind == GateKind::Rx) {
        for (std::size_t i = 0; i < xa.size(); ++i) {
            total += (std::conj(xa[i]) * xb[i ^ mask]).imag();
        }
    } else {
        for (std::size_t i = 0; i < xa.size(); ++i) {
            const double v = (std::conj(xa[i]) * xb[i]).imag();
            total += (i & mask) ? -v : v;
        }
    }
    return total;
}

} // namespace

Circuit hardware_efficient_ansatz(int n_qubits, int n_layers, bool final_rx) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ArgumentError("ansatz qubit count " + std::to_string(n_qubits) + " out of range");
    }
    if (n_layers < 0) throw ArgumentError("ansatz layer count must be non-negative");

    Circuit c;
    c.n_qubits = n_qubits;
    const auto alpha = [n_qubits](int layer, int qubit, int k) {
        return static_cast<std::size_t>(((layer * n_qubits) + (qubit - 1)) * 3 + k);
    };
    for (int j = 0; j < n_layers; ++j) {
        for (int i = 1; i <= n_qubits; ++i) c.gates.push_back({GateKind::Rx, i, 0, alpha(j, i, 0)});
        for (int i = 1; i <= n_qubits; ++i) c.gates.push_back({GateKind::Rz, i, 0, alpha(j, i, 1)});
        for (int rep = 0; rep < 2; ++rep) {
            for (int i = 1; 2 * i + 1 <= n_qubits; ++i) {
                c.gates.push_back({GateKind::Cnot, 2 * i, 2 * i + 1});
            }
            for (int i = 1; 2 * i <= n_qubits; ++i) {
                c.gates.push_back({GateKind::Cnot, 2 * i - 1, 2 * i});
            }
        }
        for (int i = 1; i <= n_qubits; ++i) c.gates.push_back({GateKind::Rz, i, 0, alpha(j, i, 2)});
    }
    c.n_params = static_cast<std::size_t>(n_layers * n_qubits * 3);
    if (final_rx) {
        for (int i = 1; i <= n_qubits; ++i) {
            c.gates.push_back({GateKind::Rx, i, 0, c.n_params + static_cast<std::size_t>(i - 1)});
        }
        c.n_params += static_cast<std::size_t>(n_qubits);
    }
    return c;
}

void run_circuit(const Circuit& circuit, std::span<const double> params, Statevector& state) {
    if (state.n_qubits() != circuit.n_qubits) {
        throw ArgumentError("circuit on " + std::to_string(circuit.n_qubits) +
                            " qubits applied to a " + std::to_string(state.n_qubits()) +
                            "-qubit state");
    }
    if (params.size() < circuit.n_params) {
        throw ArgumentError("circuit needs " + std::to_string(circuit.n_params) +
                            " parameters, got " + std::to_string(params.size()));
    }
    for (const auto& g : circuit.gates) apply_gate(g, params, state, 1.0);
}

std::vector<double> adjoint_gradient(const Circuit& circuit, std::span<const double> params,
                                     Statevector output, Statevector cotangent) {
    if (output.n_qubits() != circuit.n_qubits || cotangent.n_qubits() != circuit.n_qubits) {
        throw ArgumentError("adjoint_gradient: state size does not match circuit");
    }
    if (params.size() < circuit.n_params) {
        throw ArgumentError("adjoint_gradient: too few parameters");
    }
    std::vector<double> grad(circuit.n_params, 0.0);
    // For U = exp(-iθP/2): ∂ψ_out/∂θ = -(i/2)·P·ψ_out, so
    // ∂f/∂θ = 2·Re⟨λ|-(i/2)Pψ_out⟩ = Im⟨λ|P|ψ_out⟩.
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        if (it->kind != GateKind::Cnot) {
            grad[it->param] += imag_pauli_overlap(cotangent, output, it->kind, it->qubit);
        }
        apply_gate(*it, params, output, -1.0);
        apply_gate(*it, params, cotangent, -1.0);
    }
    return grad;
}

} // namespace qcl
