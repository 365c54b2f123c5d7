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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcl {

struct AdamOptions {
    double lr = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// First/second moment estimates of Adam with a constant learning rate.
struct AdamState {
    AdamState() = default;
    AdamState(std::size_t n_params, AdamOptions opts)
        : options(opts), m(n_params, 0.0), v(n_params, 0.0) {}

    AdamOptions options;
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step_count = 0;
};

/// One Adam step: updates `state` and `params` in place.
void adam_update(AdamState& state, std::span<double> params, std::span<const double> grad);

} // namespace qcl
