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

#include <optional>
#include <span>
#include <vector>

#include "qcl/classifier.hpp"
#include "qcl/datasets.hpp"

namespace qcl {

/**
 * R[i][j]: test accuracy on the j-th task of the sequence after learning
 * the i-th. Indices are 0-based positions in the training sequence.
 * Reading a cell that was never set throws ArgumentError.
 */
class AccuracyMatrix {
  public:
    explicit AccuracyMatrix(int n_tasks);

    [[nodiscard]] int n_tasks() const noexcept { return n_; }
    void set(int learned, int evaluated, double accuracy);
    [[nodiscard]] double at(int learned, int evaluated) const;
    [[nodiscard]] bool has(int learned, int evaluated) const;

  private:
    [[nodiscard]] std::size_t index(int learned, int evaluated) const;
    int n_;
    std::vector<std::optional<double>> cells_;
};

/// Fraction of `testset` classified correctly.
[[nodiscard]] double test_accuracy(const ClassifierParams& params, std::span<const Sample> testset);

/// Mean of the last row.
[[nodiscard]] double acc(const AccuracyMatrix& r);

/// (1/(N-1)) Σ_{i<N-1} (R[N-1][i] - R[i][i]); ArgumentError for N < 2.
[[nodiscard]] double bwt(const AccuracyMatrix& r);

} // namespace qcl
