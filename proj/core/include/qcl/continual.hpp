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
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcl/adam.hpp"
#include "qcl/classifier.hpp"
#include "qcl/datasets.hpp"
#include "qcl/gradient.hpp"
#include "qcl/metrics.hpp"
#include "qcl/nnqp.hpp"
#include "qcl/rng.hpp"

namespace qcl {

enum class StrategyKind { Plain, Ewc, Gem };

[[nodiscard]] std::string to_string(StrategyKind kind);
/// "plain" | "ewc" | "gem"; ConfigError otherwise.
[[nodiscard]] StrategyKind parse_strategy(const std::string& name);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Plain;
    /// EWC penalty weight; ignored by the other strategies.
    double lambda = 1.0;
    std::size_t memory_size = 50;
    std::size_t fisher_samples = 50;
};

struct EpisodicMemory {
    int task_id = 0;
    std::vector<Sample> samples;
};

struct FisherAnchor {
    int task_id = 0;
    std::vector<double> theta_star;
    std::vector<double> fisher_diag;
};

/// Mean cross-entropy over the memory; ArgumentError when empty.
[[nodiscard]] double memory_loss(const ClassifierParams& params, const EpisodicMemory& memory);

/// Empirical Fisher diagonal: mean over samples of (∂ log p(y|x)/∂θ_j)².
[[nodiscard]] std::vector<double> estimate_fisher_diag(const ClassifierParams& params,
                                                       std::span<const Sample> samples);

/// λ Σ_k Σ_j F^k_j (θ_j - θ^k_j)².
[[nodiscard]] double ewc_penalty(std::span<const double> theta,
                                 std::span<const FisherAnchor> anchors, double lambda);

/// task_grad + 2λ Σ_k F^k ⊙ (θ - θ^k).
[[nodiscard]] GradientVector ewc_regularized_grad(std::span<const double> theta,
                                                  std::span<const double> task_grad,
                                                  std::span<const FisherAnchor> anchors,
                                                  double lambda);

struct TrainingSettings {
    ClassifierShape shape;
    double lr = 0.1;
    std::size_t batch_size = 10;
    int epochs_per_task = 1;
};

/// Test accuracy of one task after one training iteration.
struct CurvePoint {
    int epoch = 0;      // 1-based, counted across the whole sequence
    int iteration = 0;  // 1-based, counted across the whole sequence
    int task_id = 0;
    double test_accuracy = 0.0;
};

struct GemStats {
    std::size_t steps = 0;
    std::size_t projections = 0;
    double max_kkt_residual = 0.0;
    /// min_k ⟨g̃, g_k⟩ over all projected steps (+inf if none).
    double min_constraint = std::numeric_limits<double>::infinity();
};

/**
 * Classifier state together with the continual-learning artifacts
 * (EWC anchors or GEM memories) accumulated over a task sequence.
 *
 * One Adam state is kept for the whole sequence. Datasets passed to
 * train_task must outlive the learner because later tasks keep evaluating
 * earlier test sets.
 */
class ContinualLearner {
  public:
    ContinualLearner(StrategyConfig strategy, TrainingSettings settings, ClassifierParams init);

    /**
     * Trains `epochs_per_task` epochs of minibatch Adam on `task`. Each epoch
     * shuffles the training order with `rng`. After every iteration, the
     * test accuracy of every task started so far is appended to the
     * returned curve. At task end, EWC stores a Fisher anchor and GEM an
     * episodic memory, each from a random training subset drawn from `rng`.
     */
    std::vector<CurvePoint> train_task(const TaskDataset& task, Rng& rng);

    [[nodiscard]] const ClassifierParams& params() const noexcept { return params_; }
    [[nodiscard]] const std::vector<FisherAnchor>& anchors() const noexcept { return anchors_; }
    [[nodiscard]] const std::vector<EpisodicMemory>& memories() const noexcept { return memories_; }
    [[nodiscard]] const GemStats& gem_stats() const noexcept { return gem_stats_; }
    [[nodiscard]] const AdamState& optimizer() const noexcept { return adam_; }

  private:
    GradientVector update_direction(std::span<const Sample> batch);

    StrategyConfig strategy_;
    TrainingSettings settings_;
    ClassifierParams params_;
    AdamState adam_;
    std::vector<FisherAnchor> anchors_;
    std::vector<EpisodicMemory> memories_;
    std::vector<const TaskDataset*> started_;
    GemStats gem_stats_;
    int epoch_ = 0;
    int iteration_ = 0;
};

struct RunResult {
    std::uint64_t seed = 0;
    AccuracyMatrix r{1};
    double acc = 0.0;
    double bwt = 0.0;
    std::vector<CurvePoint> curve;
    ClassifierParams final_params{ClassifierShape{}};
    GemStats gem_stats;
};

struct SequenceResult {
    std::vector<int> order;
    StrategyConfig strategy;
    std::vector<RunResult> runs;
    /// Index into runs of the highest ACC (first on ties).
    std::size_t best = 0;
};

/// Parses "234561" into {2,3,4,5,6,1}; ConfigError unless the digits are
/// distinct task ids 1..6.
[[nodiscard]] std::vector<int> parse_sequence(const std::string& text);

/**
 * Trains one fresh classifier per seed over `order`. The initial
 * parameters come from Rng(derive_seed(seed, 0)) via random_params; task at
 * position p uses Rng(derive_seed(seed, p + 1)). R[i][j] for j ≤ i is the
 * test accuracy after position i. BWT is NaN for single-task sequences.
 */
[[nodiscard]] SequenceResult run_sequence(const std::vector<int>& order,
                                          const StrategyConfig& strategy,
                                          const TrainingSettings& settings,
                                          std::span<const std::uint64_t> seeds,
                                          const std::map<int, TaskDataset>& datasets);

} // namespace qcl
