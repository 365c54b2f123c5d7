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

#include <cstdint>

#include "qcl/statevector.hpp"

namespace qcl {

/// Set of qubits as a bitmask: bit (q-1) stands for qubit q.
using QubitSubset = std::uint32_t;

/// Tr(ρ_A²) for the reduced state of `psi` on `subset`.
[[nodiscard]] double reduced_purity(const Statevector& psi, QubitSubset subset);

/// Concentratable entanglement: 1 - 2^{-n} Σ_{A ⊆ [n]} Tr(ρ_A²).
[[nodiscard]] double concentratable_entanglement(const Statevector& psi);

struct EntanglementGradient {
    double ce = 0.0;
    /// ∂CE/∂ψ̄ in the convention dCE = 2·Re⟨cotangent|dψ⟩ (not normalized).
    Statevector cotangent;
};

/// CE together with its state-space gradient, for adjoint differentiation.
[[nodiscard]] EntanglementGradient concentratable_entanglement_gradient(const Statevector& psi);

} // namespace qcl
