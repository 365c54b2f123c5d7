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
#include "qcl/entanglement.hpp"

#include <Eigen/Dense>
#include <bit>
#include <vector>

#include "qcl/error.hpp"

namespace qcl {
namespace {

// Ψ[a][b] = ψ[deposit(a, subset) | deposit(b, complement)], where `a` runs
// over the subset qubits in significance order.
struct Bipartition {
    Eigen::MatrixXcd psi;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

std::vector<std::size_t> deposit_table(std::size_t index_mask) {
    std::vector<std::size_t> positions;
    for (std::size_t bit = std::size_t{1} << 31; bit != 0; bit >>= 1) {
        if (index_mask & bit) positions.push_back(bit);
    }
    std::vector<std::size_t> table(std::size_t{1} << positions.size());
    for (std::size_t v = 0; v < table.size(); ++v) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (v & (std::size_t{1} << (positions.size() - 1 - k))) idx |= positions[k];
        }
        table[v] = idx;
    }
    return table;
}

std::size_t index_mask_of(const Statevector& psi, QubitSubset subset) {
    const int n = psi.n_qubits();
    if (n < 32 && (subset >> n) != 0) throw IndexError("subset names qubits beyond the register");
    std::size_t mask = 0;
    for (int q = 1; q <= n; ++q) {
        if (subset & (QubitSubset{1} << (q - 1))) mask |= psi.bit_of(q);
    }
    return mask;
}

Bipartition split(const Statevector& psi, QubitSubset subset) {
    const std::size_t mask = index_mask_of(psi, subset);
    const std::size_t full = psi.dim() - 1;
    Bipartition bp{{}, deposit_table(mask), deposit_table(full & ~mask)};
    bp.psi.resize(static_cast<Eigen::Index>(bp.rows.size()),
                  static_cast<Eigen::Index>(bp.cols.size()));
    for (std::size_t a = 0; a < bp.rows.size(); ++a) {
        for (std::size_t b = 0; b < bp.cols.size(); ++b) {
            bp.psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                psi[bp.rows[a] | bp.cols[b]];
        }
    }
    return bp;
}

// Tr(ρ²) using whichever of ΨΨ† and Ψ†Ψ is smaller.
double purity_of(const Eigen::MatrixXcd& m) {
    if (m.rows() <= m.cols()) return (m * m.adjoint()).squaredNorm();
    return (m.adjoint() * m).squaredNorm();
}

} // namespace

double reduced_purity(const Statevector& psi, QubitSubset subset) {
    return purity_of(split(psi, subset).psi);
}

double concentratable_entanglement(const Statevector& psi) {
    const int n = psi.n_qubits();
    const QubitSubset count = QubitSubset{1} << n;
    // Tr ρ_A² = Tr ρ_{A^c}²: sum subsets without qubit n and double.
    double total = 0.0;
    for (QubitSubset s = 0; s < count / 2; ++s) total += reduced_purity(psi, s);
    return 1.0 - 2.0 * total / static_cast<double>(count);
}

EntanglementGradient concentratable_entanglement_gradient(const Statevector& psi) {
    const int n = psi.n_qubits();
    const QubitSubset count = QubitSubset{1} << n;
    double total = 0.0;
    Statevector cot = psi;
    for (auto& a : cot.amplitudes()) a = 0.0;

    // dTr(ρ_A²) = 2·Re⟨2ΨΨ†Ψ|dψ⟩, and ΨΨ†Ψ is the same state vector for A and
    // its complement, so each pair contributes twice.
    for (QubitSubset s = 0; s < count / 2; ++s) {
        const Bipartition bp = split(psi, s);
        const Eigen::MatrixXcd& m = bp.psi;
        Eigen::MatrixXcd mmm;
        if (m.rows() <= m.cols()) {
            const Eigen::MatrixXcd rho = m * m.adjoint();
            total += rho.squaredNorm();
            mmm = rho * m;
        } else {
            const Eigen::MatrixXcd k = m.adjoint() * m;
            total += k.squaredNorm();
            mmm = m * k;
        }
        for (std::size_t a = 0; a < bp.rows.size(); ++a) {
            for (std::size_t b = 0; b < bp.cols.size(); ++b) {
                cot[bp.rows[a] | bp.cols[b]] +=
                    mmm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        }
    }
    const double scale = -4.0 / static_cast<double>(count);
    for (auto& a : cot.amplitudes()) a *= scale;
    return {1.0 - 2.0 * total / static_cast<double>(count), std::move(cot)};
}

} // namespace qcl
