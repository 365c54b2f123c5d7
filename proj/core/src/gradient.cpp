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
#include "qcl/gradient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

void check_finite(const LossAndGrad& r) {
    if (!std::isfinite(r.loss)) throw NumericError("non-finite loss");
    for (std::size_t j = 0; j < r.grad.size(); ++j) {
        if (!std::isfinite(r.grad[j])) {
            throw NumericError("non-finite gradient at parameter " + std::to_string(j));
        }
    }
}

} // namespace

LossAndGrad sample_loss_and_grad(const ClassifierParams& params, const Sample& sample) {
    const auto& shape = params.shape();
    const int n = shape.n_qubits;
    const auto un = static_cast<std::size_t>(n);
    if (sample.state.n_qubits() != n) throw ArgumentError("sample qubit count mismatch");

    const Circuit& circuit = classifier_circuit(shape);
    Statevector out = sample.state;
    run_circuit(circuit, params.circuit(), out);
    std::vector<double> z(un);
    for (int i = 1; i <= n; ++i) z[static_cast<std::size_t>(i - 1)] = expect_z(out, i);

    // Head forward, keeping activations.
    std::vector<double> hidden(un);
    for (int r = 0; r < n; ++r) {
        double acc = params.b1(r);
        for (int c = 0; c < n; ++c) acc += params.w1(r, c) * z[static_cast<std::size_t>(c)];
        hidden[static_cast<std::size_t>(r)] = std::tanh(acc);
    }
    Logits logits{};
    for (int r = 0; r < 2; ++r) {
        double acc = params.b2(r);
        for (int c = 0; c < n; ++c) acc += params.w2(r, c) * hidden[static_cast<std::size_t>(c)];
        logits[static_cast<std::size_t>(r)] = acc;
    }

    LossAndGrad result;
    result.loss = cross_entropy(logits, sample.label);
    result.grad.assign(params.size(), 0.0);
    auto& g = result.grad;

    // dL/dlogit = softmax - onehot
    const double hi = std::max(logits[0], logits[1]);
    const double e0 = std::exp(logits[0] - hi);
    const double e1 = std::exp(logits[1] - hi);
    const std::array<double, 2> delta{e0 / (e0 + e1) - (sample.label == 0 ? 1.0 : 0.0),
                                      e1 / (e0 + e1) - (sample.label == 1 ? 1.0 : 0.0)};

    std::vector<double> d_pre(un, 0.0);
    for (int r = 0; r < 2; ++r) {
        const double d = delta[static_cast<std::size_t>(r)];
        g[params.b2_offset() + static_cast<std::size_t>(r)] = d;
        for (int c = 0; c < n; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            g[params.w2_offset() + static_cast<std::size_t>(r * n + c)] = d * hidden[uc];
            d_pre[uc] += params.w2(r, c) * d;
        }
    }
    std::vector<double> dz(un, 0.0);
    for (int r = 0; r < n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        d_pre[ur] *= 1.0 - hidden[ur] * hidden[ur];
        g[params.b1_offset() + ur] = d_pre[ur];
        for (int c = 0; c < n; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            g[params.w1_offset() + static_cast<std::size_t>(r * n + c)] = d_pre[ur] * z[uc];
            dz[uc] += params.w1(r, c) * d_pre[ur];
        }
    }

    // z_i = ⟨ψ|Z_i|ψ⟩ gives dL = Σ_i dz_i·2Re⟨Z_iψ|dψ⟩, so λ = Σ_i dz_i Z_i ψ.
    Statevector cotangent = out;
    {
        auto amps = cotangent.amplitudes();
        for (std::size_t idx = 0; idx < amps.size(); ++idx) {
            double w = 0.0;
            for (int i = 1; i <= n; ++i) {
                const double d = dz[static_cast<std::size_t>(i - 1)];
                w += (idx & (std::size_t{1} << (n - i))) ? -d : d;
            }
            amps[idx] *= w;
        }
    }
    const auto circuit_grad =
        adjoint_gradient(circuit, params.circuit(), std::move(out), std::move(cotangent));
    for (std::size_t j = 0; j < circuit_grad.size(); ++j) g[j] = circuit_grad[j];

    check_finite(result);
    return result;
}

LossAndGrad loss_and_grad(const ClassifierParams& params, std::span<const Sample> batch) {
    if (batch.empty()) throw ArgumentError("loss_and_grad of an empty batch");
    LossAndGrad total;
    total.grad.assign(params.size(), 0.0);
    for (const auto& s : batch) {
        const LossAndGrad one = sample_loss_and_grad(params, s);
        total.loss += one.loss;
        for (std::size_t j = 0; j < one.grad.size(); ++j) total.grad[j] += one.grad[j];
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    total.loss *= inv;
    for (auto& v : total.grad) v *= inv;
    return total;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double h) {
    if (!(h > 0.0)) throw ArgumentError("finite-difference step must be positive");
    std::vector<double> point(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        point[j] = x[j] + h;
        const double up = f(point);
        point[j] = x[j] - h;
        const double down = f(point);
        point[j] = x[j];
        grad[j] = (up - down) / (2.0 * h);
    }
    return grad;
}

GradientVector fd_grad(const ClassifierParams& params, std::span<const Sample> batch, double h) {
    const ClassifierShape shape = params.shape();
    return central_difference(
        [&](std::span<const double> flat) {
            return loss(ClassifierParams(shape, {flat.begin(), flat.end()}), batch);
        },
        params.flat(), h);
}

} // namespace qcl
