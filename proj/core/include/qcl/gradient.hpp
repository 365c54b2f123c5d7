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

#include <functional>
#include <span>
#include <vector>

#include "qcl/classifier.hpp"

namespace qcl {

/// Gradient in ClassifierParams flat order.
using GradientVector = std::vector<double>;

struct LossAndGrad {
    double loss = 0.0;
    GradientVector grad;
};

/**
 * Cross-entropy of one sample and its exact gradient: reverse mode through
 * softmax and the head, then adjoint differentiation through the circuit.
 * Throws NumericError naming the first non-finite parameter index.
 */
[[nodiscard]] LossAndGrad sample_loss_and_grad(const ClassifierParams& params,
                                               const Sample& sample);

/// Mean loss and mean gradient over `batch` (summed in index order).
[[nodiscard]] LossAndGrad loss_and_grad(const ClassifierParams& params,
                                        std::span<const Sample> batch);

/// Central differences of an arbitrary scalar function.
[[nodiscard]] std::vector<double>
central_difference(const std::function<double(std::span<const double>)>& f,
                   std::span<const double> x, double h);

/// Central-difference gradient of loss(params, batch); test oracle.
[[nodiscard]] GradientVector fd_grad(const ClassifierParams& params,
                                     std::span<const Sample> batch, double h);

} // namespace qcl
