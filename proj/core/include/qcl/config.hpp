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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/continual.hpp"

namespace qcl {

/**
 * Experiment description read from a flat `key = value` file.
 *
 * Recognized keys (all optional):
 *
 *     sequence        = 234561            task order, distinct digits 1-6
 *     strategies      = plain,ewc,gem
 *     lambda          = 1.0               EWC weight
 *     memory_size     = 50                GEM samples per task
 *     fisher_samples  = 50                EWC samples per task
 *     n_layers        = 1
 *     lr              = 0.1
 *     batch_size      = 10
 *     epochs_per_task = 1
 *     seeds           = 1,2,3,4,5
 *     data_dir        = data
 *     out_dir         = results
 *
 * `#` starts a comment. Relative directories are resolved against the
 * directory holding the config file.
 */
struct ExperimentConfig {
    std::string sequence = "234561";
    std::vector<StrategyKind> strategies{StrategyKind::Plain, StrategyKind::Ewc, StrategyKind::Gem};
    double lambda = 1.0;
    std::size_t memory_size = 50;
    std::size_t fisher_samples = 50;
    int n_layers = 1;
    double lr = 0.1;
    std::size_t batch_size = 10;
    int epochs_per_task = 1;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::filesystem::path data_dir = "data";
    std::filesystem::path out_dir = "results";

    [[nodiscard]] StrategyConfig strategy(StrategyKind kind) const;
    [[nodiscard]] TrainingSettings training(int n_qubits) const;
};

/// Parses config text. ConfigError names the offending line.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a config file; relative directories become relative to its parent.
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config (round-trips every field).
[[nodiscard]] std::string format_config(const ExperimentConfig& config);

} // namespace qcl
