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
#include "qcl/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ArgumentError("qubit count " + std::to_string(n_qubits) +
                            " outside 1.." + std::to_string(kMaxQubits));
    }
}

} // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.dim()) {
        throw IndexError("basis index " + std::to_string(index) + " out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

Statevector Statevector::plus(int n_qubits) {
    Statevector s(n_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    for (auto& amp : s.amps_) amp = a;
    return s;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amps, double tol) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw ValidationError("amplitude count " + std::to_string(amps.size()) +
                              " is not a power of two");
    }
    const int n = std::countr_zero(amps.size());
    check_qubit_count(n);
    Statevector s(n, std::move(amps));
    const double norm = s.norm_squared();
    if (!(std::abs(norm - 1.0) <= tol)) {
        throw ValidationError("state norm^2 = " + detail::format_sci(norm) + " is not 1");
    }
    return s;
}

Statevector Statevector::normalized(std::vector<Complex> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw ValidationError("amplitude count is not a power of two");
    }
    const int n = std::countr_zero(amps.size());
    check_qubit_count(n);
    Statevector s(n, std::move(amps));
    const double norm = std::sqrt(s.norm_squared());
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    for (auto& a : s.amps_) a /= norm;
    return s;
}

double Statevector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

std::size_t Statevector::bit_of(int q) const {
    if (q < 1 || q > n_qubits_) {
        throw IndexError("qubit " + std::to_string(q) + " outside 1.." +
                         std::to_string(n_qubits_));
    }
    return std::size_t{1} << (n_qubits_ - q);
}

void apply_rx(Statevector& state, int qubit, double angle) {
    const std::size_t mask = state.bit_of(qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const Complex mis{0.0, -s};
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | mask];
        amps[i] = c * a0 + mis * a1;
        amps[i | mask] = mis * a0 + c * a1;
    }
}

void apply_rz(Statevector& state, int qubit, double angle) {
    const std::size_t mask = state.bit_of(qubit);
    const Complex phase0 = std::polar(1.0, -0.5 * angle);
    const Complex phase1 = std::conj(phase0);
    for (std::size_t i = 0; auto& a : state.amplitudes()) {
        a *= (i++ & mask) ? phase1 : phase0;
    }
}

void apply_cnot(Statevector& state, int control, int target) {
    if (control == target) {
        throw ArgumentError("CNOT control and target must differ (both " +
                            std::to_string(control) + ")");
    }
    const std::size_t cmask = state.bit_of(control);
    const std::size_t tmask = state.bit_of(target);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
}

void apply_x(Statevector& state, int qubit) {
    const std::size_t mask = state.bit_of(qubit);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!(i & mask)) std::swap(amps[i], amps[i | mask]);
    }
}

void apply_z(Statevector& state, int qubit) {
    const std::size_t mask = state.bit_of(qubit);
    for (std::size_t i = 0; auto& a : state.amplitudes()) {
        if (i++ & mask) a = -a;
    }
}

double expect_z(const Statevector& state, int qubit) {
    const std::size_t mask = state.bit_of(qubit);
    double total = 0.0;
    for (std::size_t i = 0; const auto& a : state.amplitudes()) {
        total += (i++ & mask) ? -std::norm(a) : std::norm(a);
    }
    return total;
}

Complex inner(const Statevector& a, const Statevector& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("inner product of states with " +
                            std::to_string(a.n_qubits()) + " and " +
                            std::to_string(b.n_qubits()) + " qubits");
    }
    Complex total{0.0, 0.0};
    const auto xa = a.amplitudes();
    const auto xb = b.amplitudes();
    for (std::size_t i = 0; i < xa.size(); ++i) total += std::conj(xa[i]) * xb[i];
    return total;
}

} // namespace qcl
