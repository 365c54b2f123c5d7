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
#include "qcl/metrics.hpp"

#include <string>

#include "qcl/error.hpp"

namespace qcl {

AccuracyMatrix::AccuracyMatrix(int n_tasks) : n_(n_tasks) {
    if (n_tasks < 1) throw ArgumentError("accuracy matrix needs at least one task");
    cells_.resize(static_cast<std::size_t>(n_tasks * n_tasks));
}

std::size_t AccuracyMatrix::index(int learned, int evaluated) const {
    if (learned < 0 || learned >= n_ || evaluated < 0 || evaluated >= n_) {
        throw IndexError("accuracy matrix cell (" + std::to_string(learned) + ", " +
                         std::to_string(evaluated) + ") out of range");
    }
    return static_cast<std::size_t>(learned * n_ + evaluated);
}

void AccuracyMatrix::set(int learned, int evaluated, double accuracy) {
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw ArgumentError("accuracy outside [0, 1]");
    cells_[index(learned, evaluated)] = accuracy;
}

bool AccuracyMatrix::has(int learned, int evaluated) const {
    return cells_[index(learned, evaluated)].has_value();
}

double AccuracyMatrix::at(int learned, int evaluated) const {
    const auto& c = cells_[index(learned, evaluated)];
    if (!c) {
        throw ArgumentError("accuracy matrix cell (" + std::to_string(learned) + ", " +
                            std::to_string(evaluated) + ") was never filled");
    }
    return *c;
}

double test_accuracy(const ClassifierParams& params, std::span<const Sample> testset) {
    if (testset.empty()) throw ArgumentError("test_accuracy of an empty test set");
    std::size_t correct = 0;
    for (const auto& s : testset) correct += predict(params, s.state) == s.label ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(testset.size());
}

double acc(const AccuracyMatrix& r) {
    const int last = r.n_tasks() - 1;
    double total = 0.0;
    for (int j = 0; j <= last; ++j) total += r.at(last, j);
    return total / static_cast<double>(r.n_tasks());
}

double bwt(const AccuracyMatrix& r) {
    const int n = r.n_tasks();
    if (n < 2) throw ArgumentError("BWT needs at least two tasks");
    double total = 0.0;
    for (int i = 0; i < n - 1; ++i) total += r.at(n - 1, i) - r.at(i, i);
    return total / static_cast<double>(n - 1);
}

} // namespace qcl
