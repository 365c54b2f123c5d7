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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcl {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-10;

/**
 * Dense pure state of n qubits.
 *
 * Qubits are numbered 1..n. Qubit 1 is the most significant bit of the
 * basis-state index, so for n = 3 the amplitude at index 0b100 belongs to
 * |1 0 0>, i.e. qubit 1 in |1>. The bit of qubit q is therefore
 * `1 << (n - q)`; see bit_of().
 */
class Statevector {
  public:
    /// |0...0> on `n_qubits` qubits.
    explicit Statevector(int n_qubits);

    /// Computational basis state |index>.
    static Statevector basis(int n_qubits, std::uint64_t index);

    /// |+>^{⊗n}.
    static Statevector plus(int n_qubits);

    /// Takes ownership of `amps`; the length must be a power of two and the
    /// norm must be 1 within `tol`, otherwise ValidationError.
    static Statevector from_amplitudes(std::vector<Complex> amps,
                                       double tol = kNormTolerance);

    /// Like from_amplitudes but rescales to unit norm instead of checking.
    static Statevector normalized(std::vector<Complex> amps);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }

    [[nodiscard]] const Complex& operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] Complex& operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    /// Basis-index mask of qubit `q` (1-based). Throws IndexError.
    [[nodiscard]] std::size_t bit_of(int q) const;

  private:
    Statevector(int n_qubits, std::vector<Complex> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    int n_qubits_;
    std::vector<Complex> amps_;
};

// Gates act in place. Rotation convention: R_P(θ) = exp(-iθP/2).

void apply_rx(Statevector& state, int qubit, double angle);
void apply_rz(Statevector& state, int qubit, double angle);
void apply_cnot(Statevector& state, int control, int target);

// Pauli operators (used for generators in gradients and for observables).
void apply_x(Statevector& state, int qubit);
void apply_z(Statevector& state, int qubit);

/// ⟨ψ|σ_z^q|ψ⟩.
[[nodiscard]] double expect_z(const Statevector& state, int qubit);

/// ⟨a|b⟩. Throws ArgumentError on dimension mismatch.
[[nodiscard]] Complex inner(const Statevector& a, const Statevector& b);

} // namespace qcl
