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
#include <span>
#include <vector>

namespace qcl {

struct NnqpOptions {
    /// Stop when no coordinate moves by more than this in a sweep.
    double tolerance = 1e-10;
    /// Also stop once the KKT residual is at most this (optimality certificate).
    double kkt_tolerance = 1e-13;
    int max_sweeps = 10000;
    /// Coordinates with M_kk below this are left at zero.
    double min_diagonal = 1e-12;
};

struct NnqpResult {
    Eigen::VectorXd v;
    int sweeps = 0;
    /// Largest KKT violation of the returned point.
    double kkt_residual = 0.0;
};

/**
 * Minimizes ½vᵀMv + bᵀv subject to v ≥ 0 by cyclic coordinate descent,
 * v_k ← max(0, v_k - ((Mv)_k + b_k)/M_kk).
 *
 * After convergence the support {k : v_k > 0} is re-solved exactly
 * (M_SS v_S = -b_S); the polished point is kept when it is feasible and
 * has a smaller KKT residual. Every 100 sweeps the same polish is tried
 * early and accepted once its residual is below 1e-10. M must be symmetric positive semi-definite.
 * Throws ConvergenceError with the KKT residual if the sweep limit is reached.
 */
[[nodiscard]] NnqpResult solve_nnqp(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                                    const NnqpOptions& options = {});

/// max over k of the KKT violation: -v_k, -(Mv+b)_k at v_k = 0, |(Mv+b)_k| at v_k > 0.
[[nodiscard]] double nnqp_kkt_residual(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                                       const Eigen::VectorXd& v);

struct GemProjection {
    std::vector<double> gradient;
    bool projected = false;
    /// Dual solution (empty when no projection was needed).
    Eigen::VectorXd dual;
};

/**
 * Closest vector to `g` with non-negative inner product against every
 * memory gradient. Feasible input is returned unchanged; otherwise
 * g̃ = g + Σ_k v*_k g_k where v* solves the NNQP with M_kj = ⟨g_k, g_j⟩ and
 * b_k = ⟨g, g_k⟩.
 */
[[nodiscard]] GemProjection gem_project(std::span<const double> g,
                                        std::span<const std::vector<double>> memory_grads,
                                        const NnqpOptions& options = {});

} // namespace qcl
