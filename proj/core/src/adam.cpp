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
#include "qcl/adam.hpp"

#include <cmath>

#include "qcl/error.hpp"

namespace qcl {

void adam_update(AdamState& state, std::span<double> params, std::span<const double> grad) {
    if (params.size() != grad.size() || state.m.size() != params.size() ||
        state.v.size() != params.size()) {
        throw ArgumentError("adam_update: parameter, gradient and state sizes differ");
    }
    const auto& o = state.options;
    ++state.step_count;
    const double t = static_cast<double>(state.step_count);
    const double c1 = 1.0 - std::pow(o.beta1, t);
    const double c2 = 1.0 - std::pow(o.beta2, t);
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double g = grad[j];
        state.m[j] = o.beta1 * state.m[j] + (1.0 - o.beta1) * g;
        state.v[j] = o.beta2 * state.v[j] + (1.0 - o.beta2) * g * g;
        const double m_hat = state.m[j] / c1;
        const double v_hat = state.v[j] / c2;
        params[j] -= o.lr * m_hat / (std::sqrt(v_hat) + o.eps);
    }
}

} // namespace qcl
