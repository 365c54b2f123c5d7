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

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qcl/statevector.hpp"

namespace qcl {

/// Dense Hermitian operator on n qubits, indexed with the Statevector bit
/// convention (qubit 1 = most significant bit).
class DenseHermitian {
  public:
    /// Zero operator.
    explicit DenseHermitian(int n_qubits);

    /// Wraps `matrix`; throws ValidationError unless max|H - H†| < 1e-12.
    DenseHermitian(int n_qubits, Eigen::MatrixXcd matrix);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    /// Adds coeff · P_1 ⊗ ... for a Pauli string given as (qubit, 'X'|'Y'|'Z').
    void add_pauli_term(double coeff, const std::vector<std::pair<int, char>>& paulis);

    /// max |H_ij - conj(H_ji)|.
    [[nodiscard]] double hermiticity_error() const;

  private:
    int n_qubits_;
    Eigen::MatrixXcd matrix_;
};

/// Eigenvalues ascending, eigenvectors as columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

[[nodiscard]] Spectrum diagonalize(const DenseHermitian& h);

/// H(h) = -Σ_i X_{i-1} Z_i X_{i+1} + h Σ_i Y_i Y_{i+1}, indices mod n (ring).
[[nodiscard]] DenseHermitian build_cluster(int n_qubits, double h);

/// H(τ, J) = (1-τ) Σ_i X_i + τ Σ_{i<j} J Z_i Z_j.
[[nodiscard]] DenseHermitian build_ising(int n_qubits, double tau, double coupling);

/**
 * Lowest-energy eigenvector. Ties go to the first column of the sorted
 * eigensolver output; the global phase is fixed so the largest-magnitude
 * amplitude (lowest index among equals) is real and positive.
 */
[[nodiscard]] Statevector ground_state(const DenseHermitian& h);

/// e^{-iH} ψ through the eigendecomposition of H.
[[nodiscard]] Statevector evolve(const DenseHermitian& h, const Statevector& psi);
[[nodiscard]] Statevector evolve(const Spectrum& spectrum, const Statevector& psi);

/// ⟨ψ|H|ψ⟩ (real part).
[[nodiscard]] double expectation(const DenseHermitian& h, const Statevector& psi);

} // namespace qcl
