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
#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qcl/error.hpp"
#include "qcl/hamiltonians.hpp"

namespace {

using oracle::Mat;
using qcl::DenseHermitian;
using qcl::Statevector;

// Term-by-term Pauli-string construction.
Mat cluster_oracle(int n, double h) {
    const auto d = Eigen::Index{1} << n;
    Mat m = Mat::Zero(d, d);
    auto wrap = [n](int q) { return (q - 1 + n) % n + 1; };
    for (int i = 1; i <= n; ++i) {
        std::string xzx(static_cast<std::size_t>(n), 'I');
        xzx[static_cast<std::size_t>(wrap(i - 1) - 1)] = 'X';
        xzx[static_cast<std::size_t>(i - 1)] = 'Z';
        xzx[static_cast<std::size_t>(wrap(i + 1) - 1)] = 'X';
        m -= oracle::pauli_string(xzx);
        std::string yy(static_cast<std::size_t>(n), 'I');
        yy[static_cast<std::size_t>(i - 1)] = 'Y';
        yy[static_cast<std::size_t>(wrap(i + 1) - 1)] = 'Y';
        m += h * oracle::pauli_string(yy);
    }
    return m;
}

Mat ising_oracle(int n, double tau, double j) {
    const auto d = Eigen::Index{1} << n;
    Mat m = Mat::Zero(d, d);
    for (int i = 1; i <= n; ++i) m += (1 - tau) * oracle::embed(oracle::pauli('X'), i, n);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            m += tau * j * oracle::embed(oracle::pauli('Z'), a, n) * oracle::embed(oracle::pauli('Z'), b, n);
        }
    }
    return m;
}

double min_eigenvalue(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return es.eigenvalues()(0);
}

TEST(ClusterHamiltonian, ZeroFieldGroundEnergyIsMinusN) {
    const auto h = qcl::build_cluster(8, 0.0);
    EXPECT_NEAR(qcl::diagonalize(h).eigenvalues(0), -8.0, 1e-9);
    EXPECT_NEAR(min_eigenvalue(cluster_oracle(8, 0.0)), -8.0, 1e-9);
}

TEST(ClusterHamiltonian, TracelessAndHermitian) {
    for (double field : {0.0, 0.3, 1.7}) {
        const auto h = qcl::build_cluster(4, field);
        EXPECT_LT(h.hermiticity_error(), 1e-12);
        EXPECT_NEAR(std::abs(h.matrix().trace()), 0.0, 1e-12);
    }
}

TEST(ClusterHamiltonian, MatchesPauliStringOracle) {
    for (int n : {3, 4, 5}) {
        for (double field : {0.0, 0.6, 1.0}) {
            EXPECT_LT((qcl::build_cluster(n, field).matrix() - cluster_oracle(n, field)).cwiseAbs().maxCoeff(),
                      1e-12);
        }
    }
}

TEST(ClusterHamiltonian, CriticalPointGroundEnergyMatchesOracle) {
    EXPECT_NEAR(qcl::diagonalize(qcl::build_cluster(8, 1.0)).eigenvalues(0),
                min_eigenvalue(cluster_oracle(8, 1.0)), 1e-9);
}

TEST(ClusterHamiltonian, SpectrumInvariantUnderCyclicRelabeling) {
    // Shifting every qubit label by one is the permutation |b1 b2 b3 b4⟩ → |b4 b1 b2 b3⟩.
    const int n = 4;
    const auto h = qcl::build_cluster(n, 0.45);
    Mat p = Mat::Zero(16, 16);
    for (int i = 0; i < 16; ++i) p(((i >> 1) | ((i & 1) << 3)), i) = 1;
    const Mat shifted = p * h.matrix() * p.adjoint();
    EXPECT_LT((shifted - h.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ClusterHamiltonian, RejectsTooFewQubits) {
    EXPECT_THROW((void)qcl::build_cluster(2, 0.1), qcl::ArgumentError);
}

TEST(IsingHamiltonian, Examples) {
    EXPECT_NEAR(qcl::diagonalize(qcl::build_ising(8, 0.0, 0.7)).eigenvalues(0), -8.0, 1e-9);

    const auto zz = qcl::diagonalize(qcl::build_ising(2, 1.0, 1.0)).eigenvalues;
    ASSERT_EQ(zz.size(), 4);
    EXPECT_NEAR(zz(0), -1.0, 1e-12);
    EXPECT_NEAR(zz(1), -1.0, 1e-12);
    EXPECT_NEAR(zz(2), 1.0, 1e-12);
    EXPECT_NEAR(zz(3), 1.0, 1e-12);

    EXPECT_LT((qcl::build_ising(4, 0.5, -0.5).matrix() - ising_oracle(4, 0.5, -0.5)).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_THROW((void)qcl::build_ising(1, 0.5, 1.0), qcl::ArgumentError);
    EXPECT_THROW((void)qcl::build_ising(3, 1.5, 1.0), qcl::ArgumentError);
}

TEST(DenseHermitian, RejectsNonHermitianMatrix) {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(DenseHermitian(1, m), qcl::ValidationError);
    EXPECT_THROW(DenseHermitian(2, Mat::Zero(2, 2)), qcl::ArgumentError);
}

TEST(GroundState, Examples) {
    Mat d = Mat::Zero(2, 2);
    d(1, 1) = -1.0;
    const auto g1 = qcl::ground_state(DenseHermitian(1, d));
    EXPECT_NEAR(std::abs(g1[1] - 1.0), 0.0, 1e-12);

    const auto g2 = qcl::ground_state(DenseHermitian(1, -oracle::pauli('X')));
    EXPECT_NEAR(std::abs(g2[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g2[1] - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
}

TEST(GroundState, EigenResidualAndPhaseConvention) {
    const auto h = qcl::build_cluster(8, 0.2);
    const auto psi = qcl::ground_state(h);
    const double e0 = min_eigenvalue(cluster_oracle(8, 0.2));
    const oracle::Vec v = oracle::to_vec(psi);
    EXPECT_LT((h.matrix() * v - e0 * v).norm(), 1e-9);
    EXPECT_NEAR(qcl::expectation(h, psi), e0, 1e-9);

    std::size_t arg = 0;
    for (std::size_t i = 1; i < psi.dim(); ++i) {
        if (std::abs(psi[i]) > std::abs(psi[arg]) + 1e-12) arg = i;
    }
    EXPECT_GT(psi[arg].real(), 0.0);
    EXPECT_NEAR(psi[arg].imag(), 0.0, 1e-15);
}

TEST(Evolve, Examples) {
    std::mt19937_64 gen(7);
    const auto psi = oracle::random_state(2, gen);
    const auto same = qcl::evolve(DenseHermitian(2), psi);
    for (std::size_t i = 0; i < psi.dim(); ++i) EXPECT_LT(std::abs(same[i] - psi[i]), 1e-14);

    const auto flipped = qcl::evolve(DenseHermitian(1, (std::numbers::pi / 2) * oracle::pauli('X')), Statevector(1));
    EXPECT_LT(std::abs(flipped[0]), 1e-12);
    EXPECT_LT(std::abs(flipped[1] - qcl::Complex(0.0, -1.0)), 1e-12);
}

TEST(Evolve, UnitaryAndInvertible) {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
        Mat a(4, 4);
        for (Eigen::Index i = 0; i < 4; ++i) {
            for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = {g(gen), g(gen)};
        }
        const Mat herm = 0.5 * (a + a.adjoint());
        const DenseHermitian h(2, herm), minus(2, -herm);
        const auto psi = oracle::random_state(2, gen);
        const auto out = qcl::evolve(h, psi);
        EXPECT_LT(std::abs(out.norm_squared() - 1.0), 1e-10);
        const auto back = qcl::evolve(minus, out);
        for (std::size_t i = 0; i < psi.dim(); ++i) EXPECT_LT(std::abs(back[i] - psi[i]), 1e-9);
    }
    EXPECT_THROW((void)qcl::evolve(DenseHermitian(2), Statevector(3)), qcl::ArgumentError);
}

TEST(Evolve, MatchesDenseMatrixExponential) {
    // exp(-iH) by eigendecomposition of the oracle matrix, independently of the library.
    const Mat m = ising_oracle(4, 0.75, 0.3);
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Mat u = es.eigenvectors() *
                  es.eigenvalues().unaryExpr([](double l) { return std::exp(qcl::Complex(0.0, -l)); }).asDiagonal() *
                  es.eigenvectors().adjoint();
    const auto plus = Statevector::plus(4);
    const oracle::Vec expect = u * oracle::to_vec(plus);
    const auto got = qcl::evolve(qcl::build_ising(4, 0.75, 0.3), plus);
    for (std::size_t i = 0; i < got.dim(); ++i) EXPECT_LT(std::abs(got[i] - expect(static_cast<Eigen::Index>(i))), 1e-10);
}

TEST(Evolve, IsLinear) {
    std::mt19937_64 gen(13);
    const auto h = qcl::build_ising(3, 0.4, -0.2);
    const auto a = oracle::random_state(3, gen);
    const auto b = oracle::random_state(3, gen);
    const qcl::Complex ca(0.6, 0.0), cb(0.0, 0.8);
    std::vector<qcl::Complex> mix(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) mix[i] = ca * a[i] + cb * b[i];
    const auto combined = qcl::evolve(qcl::diagonalize(h), Statevector::normalized(mix));
    const double norm = std::sqrt(std::accumulate(mix.begin(), mix.end(), 0.0,
                                                  [](double s, qcl::Complex z) { return s + std::norm(z); }));
    const auto ea = qcl::evolve(h, a), eb = qcl::evolve(h, b);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        EXPECT_LT(std::abs(combined[i] * norm - (ca * ea[i] + cb * eb[i])), 1e-9);
    }
}

} // namespace
