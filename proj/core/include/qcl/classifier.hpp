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

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "qcl/ansatz.hpp"
#include "qcl/datasets.hpp"
#include "qcl/rng.hpp"
#include "qcl/statevector.hpp"

namespace qcl {

/// Sizes of the variational circuit and its post-processing head.
struct ClassifierShape {
    int n_qubits = kDefaultQubits;
    int n_layers = 1;

    [[nodiscard]] std::size_t circuit_params() const;
    [[nodiscard]] std::size_t head_params() const;
    [[nodiscard]] std::size_t total() const { return circuit_params() + head_params(); }

    friend bool operator==(const ClassifierShape&, const ClassifierShape&) = default;
};

/**
 * All trainable parameters θ = {α, β, w}, stored as one flat vector.
 *
 * Flat order: α[layer][qubit][k] (k = 0: first Rx, 1: first Rz, 2: last Rz),
 * then β[qubit], then the head: W1 (n×n, row-major), b1 (n), W2 (2×n,
 * row-major), b2 (2). Indices of the accessors are 0-based.
 */
class ClassifierParams {
  public:
    explicit ClassifierParams(ClassifierShape shape);
    ClassifierParams(ClassifierShape shape, std::vector<double> flat);

    [[nodiscard]] const ClassifierShape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const double> flat() const noexcept { return values_; }
    [[nodiscard]] std::span<double> flat() noexcept { return values_; }

    /// Circuit angles (α then β); the ansatz indexes into this prefix.
    [[nodiscard]] std::span<const double> circuit() const noexcept;

    double& alpha(int layer, int qubit, int k);
    double& beta(int qubit);
    double& w1(int row, int col);
    double& b1(int row);
    double& w2(int row, int col);
    double& b2(int row);
    [[nodiscard]] double w1(int row, int col) const;
    [[nodiscard]] double b1(int row) const;
    [[nodiscard]] double w2(int row, int col) const;
    [[nodiscard]] double b2(int row) const;

    [[nodiscard]] std::size_t w1_offset() const;
    [[nodiscard]] std::size_t b1_offset() const;
    [[nodiscard]] std::size_t w2_offset() const;
    [[nodiscard]] std::size_t b2_offset() const;

  private:
    ClassifierShape shape_;
    std::vector<double> values_;
};

/// Angles uniform in [-π, π]; head weights and biases uniform in ±1/√n.
[[nodiscard]] ClassifierParams random_params(ClassifierShape shape, Rng& rng);

using MeasurementVector = std::vector<double>;
using Logits = std::array<double, 2>;

/// Shared circuit layout for a shape (built once per shape).
[[nodiscard]] const Circuit& classifier_circuit(const ClassifierShape& shape);

/// z_i = ⟨x'|σ_z^i|x'⟩ after the ansatz.
[[nodiscard]] MeasurementVector circuit_forward(const ClassifierParams& params,
                                                const Statevector& x);

/// logits = W2·tanh(W1·z + b1) + b2.
[[nodiscard]] Logits head_forward(const ClassifierParams& params, std::span<const double> z);

/// Softmax cross-entropy of `logits` against `label`, computed stably.
[[nodiscard]] double cross_entropy(const Logits& logits, int label);

/// argmax of the logits; ties go to label 0.
[[nodiscard]] int predict(const ClassifierParams& params, const Statevector& x);

/// Mean cross-entropy over `batch`; ArgumentError on an empty batch.
[[nodiscard]] double loss(const ClassifierParams& params, std::span<const Sample> batch);

// Checkpoint layout (little-endian): "QCLP" | u16 version = 1 | u16 n_qubits |
// u16 n_layers | u16 reserved = 0 | u32 param_count | param_count × f64.
void save_checkpoint(const ClassifierParams& params, const std::filesystem::path& path);
[[nodiscard]] ClassifierParams load_checkpoint(const std::filesystem::path& path);

} // namespace qcl
