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
#include <span>
#include <string>
#include <vector>

#include "qcl/statevector.hpp"

namespace qcl {

inline constexpr int kDefaultQubits = 8;
inline constexpr std::size_t kSamplesPerTask = 512;
inline constexpr std::size_t kTrainSamples = 400;
inline constexpr std::size_t kTestSamples = 112;
inline constexpr int kNumTasks = 6;

struct Sample {
    Statevector state;
    int label = 0;
};

/// Generator parameters. `sample_params[k]` is the h, J or CE target that
/// produced sample k of train followed by test (empty after loading a file).
struct TaskMeta {
    std::uint64_t seed = 0;
    double tau = 0.0;
    double ce_low = 0.0;
    double ce_high = 0.0;
    std::vector<double> sample_params;
};

struct TaskDataset {
    int task_id = 0;
    std::vector<Sample> train;
    std::vector<Sample> test;
    TaskMeta meta;
};

/// Per-task seed: derive_seed(master_seed, task_id).
[[nodiscard]] std::uint64_t task_seed(std::uint64_t master_seed, int task_id);

/// CE class targets of tasks 2 and 3 as {lower, higher}.
[[nodiscard]] std::pair<double, double> ce_targets(int task_id);

/// τ of tasks 4, 5, 6.
[[nodiscard]] double ising_tau(int task_id);

/// Cluster-model ground states for h_k = 2k/511; label 1 iff h_k < 1.
[[nodiscard]] TaskDataset gen_task1(std::uint64_t seed, int n_qubits = kDefaultQubits);

/// Ising-evolved states e^{-iH(τ,J_k)}|+⟩ for J_k = -1 + 2k/511; label 1 iff J_k > 0.
[[nodiscard]] TaskDataset gen_task_ising(int task_id, std::uint64_t seed,
                                         int n_qubits = kDefaultQubits);

/// 256 states per CE class; the lower-CE class has label 1.
[[nodiscard]] TaskDataset gen_task_ce(int task_id, std::uint64_t seed,
                                      int n_qubits = kDefaultQubits);

/// Dispatch on task_id 1..6; `seed` is the per-task seed.
[[nodiscard]] TaskDataset gen_task(int task_id, std::uint64_t seed,
                                   int n_qubits = kDefaultQubits);

struct CeSynthesisOptions {
    int n_qubits = kDefaultQubits;
    int depth = 2;
    int max_iterations = 500;
    int max_retries = 10;
    double learning_rate = 0.05;
    /// Initial ansatz angles are drawn uniformly from [-init_scale, init_scale].
    double init_scale = 0.25;
};

/**
 * State with concentratable entanglement within `tol` of `target`, found by
 * Adam descent on (CE - target)² over a layered ansatz applied to |0...0⟩.
 * Each attempt draws fresh initial angles from derive_seed(seed, attempt);
 * throws ConvergenceError after max_retries failed attempts.
 */
[[nodiscard]] Statevector generate_ce_state(double target, double tol, std::uint64_t seed,
                                            const CeSynthesisOptions& options = {});

/**
 * Stratified shuffle-split: each class is shuffled separately and split
 * 200/56, then the train and test lists are shuffled. `params` is permuted
 * alongside `samples` into train-then-test order.
 */
void stratified_split(std::vector<Sample> samples, std::vector<double> params,
                      std::uint64_t seed, TaskDataset& out);

/// Throws DataError unless sizes are 400/112 and each class has 200 train samples.
void validate_task_dataset(const TaskDataset& ds);

// Binary file layout (little-endian):
//   "QCLD" | u16 version = 1 | u16 n_qubits | u32 sample_count |
//   per sample: 2^n × (f64 re, f64 im) | u8 label | u8 split (0 train, 1 test)
// Samples are written train first, then test.

[[nodiscard]] std::vector<std::uint8_t> encode_dataset(const TaskDataset& ds);
[[nodiscard]] TaskDataset decode_dataset(std::span<const std::uint8_t> bytes, int task_id = 0);

void save_dataset(const TaskDataset& ds, const std::filesystem::path& path);
[[nodiscard]] TaskDataset load_dataset(const std::filesystem::path& path, int task_id = 0);

/// Conventional file name inside a data directory: task<k>.qcld.
[[nodiscard]] std::filesystem::path dataset_path(const std::filesystem::path& dir, int task_id);

} // namespace qcl
