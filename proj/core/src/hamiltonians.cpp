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
#include "qcl/hamiltonians.hpp"

#include <cmath>
#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

constexpr double kHermitianTolerance = 1e-12;

Eigen::VectorXcd to_eigen(const Statevector& psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
    return v;
}

std::vector<Complex> to_std(const Eigen::VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

void require_dims(const DenseHermitian& h, const Statevector& psi) {
    if (static_cast<std::size_t>(h.dim()) != psi.dim()) {
        throw ArgumentError("operator on " + std::to_string(h.n_qubits()) +
                            " qubits applied to a " + std::to_string(psi.n_qubits()) +
                            "-qubit state");
    }
}

} // namespace

DenseHermitian::DenseHermitian(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ArgumentError("operator qubit count " + std::to_string(n_qubits) + " out of range");
    }
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    matrix_ = Eigen::MatrixXcd::Zero(d, d);
}

DenseHermitian::DenseHermitian(int n_qubits, Eigen::MatrixXcd matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw ArgumentError("matrix shape does not match qubit count");
    }
    if (!(hermiticity_error() < kHermitianTolerance)) {
        throw ValidationError("matrix is not Hermitian (max |H - H^dag| = " +
                              std::to_string(hermiticity_error()) + ")");
    }
}

void DenseHermitian::add_pauli_term(double coeff,
                                    const std::vector<std::pair<int, char>>& paulis) {
    std::size_t flip = 0;
    std::vector<std::pair<std::size_t, char>> masks;
    for (const auto& [q, p] : paulis) {
        if (q < 1 || q > n_qubits_) throw IndexError("Pauli term qubit out of range");
        const std::size_t m = std::size_t{1} << (n_qubits_ - q);
        if (p == 'X' || p == 'Y') flip ^= m;
        if (p != 'X' && p != 'Y' && p != 'Z') throw ArgumentError("unknown Pauli label");
        masks.emplace_back(m, p);
    }
    const auto d = static_cast<std::size_t>(dim());
    for (std::size_t col = 0; col < d; ++col) {
        // Z|b> = (-1)^b |b>, X|b> = |1-b>, Y|b> = i(-1)^b |1-b>.
        Complex phase{coeff, 0.0};
        for (const auto& [m, p] : masks) {
            const bool one = (col & m) != 0;
            if (p == 'Z' && one) phase = -phase;
            if (p == 'Y') phase *= one ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        }
        matrix_(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) += phase;
    }
}

double DenseHermitian::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum diagonalize(const DenseHermitian& h) {
    if (!(h.hermiticity_error() < kHermitianTolerance)) {
        throw ValidationError("diagonalize: operator is not Hermitian");
    }
    const Eigen::MatrixXcd& m = h.matrix();
    Spectrum out;
    // Both model Hamiltonians are real symmetric; the real solver is ~4x faster.
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
        if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    return out;
}

DenseHermitian build_cluster(int n_qubits, double h) {
    if (n_qubits < 3) {
        throw ArgumentError("cluster Hamiltonian needs at least 3 qubits, got " +
                            std::to_string(n_qubits));
    }
    DenseHermitian ham(n_qubits);
    const auto wrap = [n_qubits](int i) { return (i - 1 + n_qubits) % n_qubits + 1; };
    for (int i = 1; i <= n_qubits; ++i) {
        ham.add_pauli_term(-1.0, {{wrap(i - 1), 'X'}, {i, 'Z'}, {wrap(i + 1), 'X'}});
        if (h != 0.0) ham.add_pauli_term(h, {{i, 'Y'}, {wrap(i + 1), 'Y'}});
    }
    return ham;
}

DenseHermitian build_ising(int n_qubits, double tau, double coupling) {
    if (n_qubits < 2) {
        throw ArgumentError("Ising Hamiltonian needs at least 2 qubits, got " +
                            std::to_string(n_qubits));
    }
    if (!(tau >= 0.0 && tau <= 1.0)) throw ArgumentError("tau must lie in [0, 1]");
    DenseHermitian ham(n_qubits);
    for (int i = 1; i <= n_qubits; ++i) {
        if (tau != 1.0) ham.add_pauli_term(1.0 - tau, {{i, 'X'}});
    }
    if (tau != 0.0 && coupling != 0.0) {
        for (int i = 1; i <= n_qubits; ++i) {
            for (int j = i + 1; j <= n_qubits; ++j) {
                ham.add_pauli_term(tau * coupling, {{i, 'Z'}, {j, 'Z'}});
            }
        }
    }
    return ham;
}

Statevector ground_state(const DenseHermitian& h) {
    const Spectrum spec = diagonalize(h);
    Eigen::VectorXcd v = spec.eigenvectors.col(0);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        // Strictly larger by a margin so that round-off does not reorder ties.
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) best = i;
    }
    v *= std::abs(v(best)) / v(best);
    v(best) = std::abs(v(best));
    return Statevector::normalized(to_std(v));
}

Statevector evolve(const Spectrum& spectrum, const Statevector& psi) {
    if (spectrum.eigenvectors.rows() != static_cast<Eigen::Index>(psi.dim())) {
        throw ArgumentError("evolve: dimension mismatch");
    }
    const Eigen::MatrixXcd& vecs = spectrum.eigenvectors;
    Eigen::VectorXcd coeffs = vecs.adjoint() * to_eigen(psi);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -spectrum.eigenvalues(k));
    }
    const Eigen::VectorXcd out = vecs * coeffs;
    return Statevector::from_amplitudes(to_std(out), 1e-9);
}

Statevector evolve(const DenseHermitian& h, const Statevector& psi) {
    require_dims(h, psi);
    return evolve(diagonalize(h), psi);
}

double expectation(const DenseHermitian& h, const Statevector& psi) {
    require_dims(h, psi);
    const Eigen::VectorXcd v = to_eigen(psi);
    return v.dot(h.matrix() * v).real();
}

} // namespace qcl
