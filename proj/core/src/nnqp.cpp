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
#include "qcl/nnqp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Re-solves M_SS x = -b_S on the support of `v`. Returns false unless x > 0.
bool solve_on_support(const Eigen::MatrixXd& m, const Eigen::VectorXd& b, const Eigen::VectorXd& v,
                      Eigen::VectorXd& out) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (v(k) > 0.0) support.push_back(k);
    }
    if (support.empty()) return false;
    const auto s = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd ms(s, s);
    Eigen::VectorXd bs(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const Eigen::Index ki = support[static_cast<std::size_t>(i)];
        bs(i) = b(ki);
        for (Eigen::Index j = 0; j < s; ++j) ms(i, j) = m(ki, support[static_cast<std::size_t>(j)]);
    }
    const Eigen::VectorXd xs = ms.ldlt().solve(-bs);
    if (!xs.allFinite() || (xs.array() <= 0.0).any()) return false;
    out = Eigen::VectorXd::Zero(v.size());
    for (Eigen::Index i = 0; i < s; ++i) out(support[static_cast<std::size_t>(i)]) = xs(i);
    return true;
}

// Replaces the iterate by the exact support solution when that is better.
void polish(const Eigen::MatrixXd& m, const Eigen::VectorXd& b, NnqpResult& result) {
    Eigen::VectorXd candidate;
    if (!solve_on_support(m, b, result.v, candidate)) return;
    const double residual = nnqp_kkt_residual(m, b, candidate);
    if (residual < result.kkt_residual) {
        result.v = std::move(candidate);
        result.kkt_residual = residual;
    }
}

constexpr int kPolishInterval = 100;
constexpr double kPolishAccept = 1e-10;

} // namespace

double nnqp_kkt_residual(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& v) {
    const Eigen::VectorXd grad = m * v + b;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        worst = std::max(worst, -v(k));
        if (v(k) > 0.0) {
            worst = std::max(worst, std::abs(grad(k)));
        } else {
            worst = std::max(worst, -grad(k));
        }
    }
    return worst;
}

NnqpResult solve_nnqp(const Eigen::MatrixXd& m, const Eigen::VectorXd& b,
                      const NnqpOptions& options) {
    const Eigen::Index n = b.size();
    if (m.rows() != n || m.cols() != n) throw ArgumentError("solve_nnqp: shape mismatch");
    if (!m.allFinite() || !b.allFinite()) throw NumericError("solve_nnqp: non-finite input");

    NnqpResult result;
    result.v = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd& v = result.v;
    // Mv maintained incrementally.
    Eigen::VectorXd mv = Eigen::VectorXd::Zero(n);
    for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (m(k, k) < options.min_diagonal) continue;
            const double next = std::max(0.0, v(k) - (mv(k) + b(k)) / m(k, k));
            const double delta = next - v(k);
            if (delta != 0.0) {
                mv += delta * m.col(k);
                v(k) = next;
            }
            max_change = std::max(max_change, std::abs(delta));
        }
        result.sweeps = sweep;
        result.kkt_residual = nnqp_kkt_residual(m, b, v);
        if (max_change < options.tolerance || result.kkt_residual <= options.kkt_tolerance) {
            polish(m, b, result);
            return result;
        }
        if (sweep % kPolishInterval == 0) {
            NnqpResult trial = result;
            polish(m, b, trial);
            if (trial.kkt_residual <= kPolishAccept) return trial;
        }
    }
    throw ConvergenceError("solve_nnqp: no convergence after " +
                           std::to_string(options.max_sweeps) + " sweeps (KKT residual " +
                           detail::format_sci(result.kkt_residual) + ")");
}

GemProjection gem_project(std::span<const double> g,
                          std::span<const std::vector<double>> memory_grads,
                          const NnqpOptions& options) {
    GemProjection out;
    out.gradient.assign(g.begin(), g.end());
    const auto t = static_cast<Eigen::Index>(memory_grads.size());
    Eigen::VectorXd b(t);
    bool feasible = true;
    for (Eigen::Index k = 0; k < t; ++k) {
        const auto& gk = memory_grads[static_cast<std::size_t>(k)];
        if (gk.size() != g.size()) throw ArgumentError("gem_project: gradient length mismatch");
        b(k) = dot(g, gk);
        feasible = feasible && b(k) >= 0.0;
    }
    if (feasible) return out;

    Eigen::MatrixXd m(t, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = i; j < t; ++j) {
            m(i, j) = m(j, i) = dot(memory_grads[static_cast<std::size_t>(i)],
                                    memory_grads[static_cast<std::size_t>(j)]);
        }
    }
    out.dual = solve_nnqp(m, b, options).v;
    for (Eigen::Index k = 0; k < t; ++k) {
        const double vk = out.dual(k);
        if (vk == 0.0) continue;
        const auto& gk = memory_grads[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < gk.size(); ++j) out.gradient[j] += vk * gk[j];
    }
    out.projected = true;
    return out;
}

} // namespace qcl
