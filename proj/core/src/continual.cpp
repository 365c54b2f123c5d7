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
#include "qcl/continual.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "qcl/error.hpp"

namespace qcl {
namespace {

std::vector<Sample> pick_samples(const std::vector<Sample>& pool, std::size_t count, Rng& rng) {
    std::vector<Sample> out;
    for (auto idx : rng.choose(pool.size(), count)) out.push_back(pool[idx]);
    return out;
}

} // namespace

std::string to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Plain:
        return "plain";
    case StrategyKind::Ewc:
        return "ewc";
    case StrategyKind::Gem:
        return "gem";
    }
    return "unknown";
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "plain") return StrategyKind::Plain;
    if (name == "ewc") return StrategyKind::Ewc;
    if (name == "gem") return StrategyKind::Gem;
    throw ConfigError("unknown strategy '" + name + "' (expected plain, ewc or gem)");
}

double memory_loss(const ClassifierParams& params, const EpisodicMemory& memory) {
    if (memory.samples.empty()) throw ArgumentError("memory_loss of an empty memory");
    return loss(params, memory.samples);
}

std::vector<double> estimate_fisher_diag(const ClassifierParams& params,
                                         std::span<const Sample> samples) {
    if (samples.empty()) throw ArgumentError("estimate_fisher_diag needs samples");
    std::vector<double> fisher(params.size(), 0.0);
    for (const auto& s : samples) {
        // ∂ log p(y|x) = -∂ loss; the sign vanishes when squared.
        const auto g = sample_loss_and_grad(params, s).grad;
        for (std::size_t j = 0; j < g.size(); ++j) fisher[j] += g[j] * g[j];
    }
    for (auto& f : fisher) f /= static_cast<double>(samples.size());
    return fisher;
}

double ewc_penalty(std::span<const double> theta, std::span<const FisherAnchor> anchors,
                   double lambda) {
    double total = 0.0;
    for (const auto& a : anchors) {
        for (std::size_t j = 0; j < theta.size(); ++j) {
            const double d = theta[j] - a.theta_star[j];
            total += a.fisher_diag[j] * d * d;
        }
    }
    return lambda * total;
}

GradientVector ewc_regularized_grad(std::span<const double> theta,
                                    std::span<const double> task_grad,
                                    std::span<const FisherAnchor> anchors, double lambda) {
    GradientVector g(task_grad.begin(), task_grad.end());
    if (lambda == 0.0) return g;
    for (const auto& a : anchors) {
        if (a.theta_star.size() != theta.size() || a.fisher_diag.size() != theta.size()) {
            throw ArgumentError("EWC anchor size does not match parameters");
        }
        for (std::size_t j = 0; j < theta.size(); ++j) {
            g[j] += 2.0 * lambda * a.fisher_diag[j] * (theta[j] - a.theta_star[j]);
        }
    }
    return g;
}

ContinualLearner::ContinualLearner(StrategyConfig strategy, TrainingSettings settings,
                                   ClassifierParams init)
    : strategy_(strategy), settings_(settings), params_(std::move(init)),
      adam_(params_.size(), AdamOptions{settings.lr, 0.9, 0.999, 1e-8}) {
    if (!(params_.shape() == settings_.shape)) {
        throw ArgumentError("initial parameters do not match the configured shape");
    }
    if (settings_.batch_size == 0) throw ConfigError("batch size must be positive");
    if (settings_.epochs_per_task < 0) throw ConfigError("epochs per task must be >= 0");
}

GradientVector ContinualLearner::update_direction(std::span<const Sample> batch) {
    GradientVector g = loss_and_grad(params_, batch).grad;
    switch (strategy_.kind) {
    case StrategyKind::Plain:
        return g;
    case StrategyKind::Ewc:
        return ewc_regularized_grad(params_.flat(), g, anchors_, strategy_.lambda);
    case StrategyKind::Gem: {
        ++gem_stats_.steps;
        if (memories_.empty()) return g;
        std::vector<std::vector<double>> memory_grads;
        memory_grads.reserve(memories_.size());
        for (const auto& m : memories_) memory_grads.push_back(loss_and_grad(params_, m.samples).grad);
        GemProjection proj = gem_project(g, memory_grads);
        if (proj.projected) {
            ++gem_stats_.projections;
            Eigen::MatrixXd gram(memory_grads.size(), memory_grads.size());
            Eigen::VectorXd b(memory_grads.size());
            for (std::size_t i = 0; i < memory_grads.size(); ++i) {
                b(static_cast<Eigen::Index>(i)) =
                    std::inner_product(g.begin(), g.end(), memory_grads[i].begin(), 0.0);
                for (std::size_t j = 0; j < memory_grads.size(); ++j) {
                    gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        std::inner_product(memory_grads[i].begin(), memory_grads[i].end(),
                                           memory_grads[j].begin(), 0.0);
                }
            }
            gem_stats_.max_kkt_residual =
                std::max(gem_stats_.max_kkt_residual, nnqp_kkt_residual(gram, b, proj.dual));
            for (const auto& gk : memory_grads) {
                const double c = std::inner_product(proj.gradient.begin(), proj.gradient.end(),
                                                    gk.begin(), 0.0);
                gem_stats_.min_constraint = std::min(gem_stats_.min_constraint, c);
            }
            assert(gem_stats_.min_constraint >= -1e-8);
        }
        return std::move(proj.gradient);
    }
    }
    return g;
}

std::vector<CurvePoint> ContinualLearner::train_task(const TaskDataset& task, Rng& rng) {
    if (task.train.empty() || task.test.empty()) {
        throw DataError("task " + std::to_string(task.task_id) + " has an empty split");
    }
    started_.push_back(&task);
    std::vector<CurvePoint> curve;
    std::vector<std::size_t> order(task.train.size());
    std::vector<Sample> batch;
    for (int e = 0; e < settings_.epochs_per_task; ++e) {
        ++epoch_;
        std::iota(order.begin(), order.end(), std::size_t{0});
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += settings_.batch_size) {
            const std::size_t stop = std::min(order.size(), start + settings_.batch_size);
            batch.clear();
            for (std::size_t k = start; k < stop; ++k) batch.push_back(task.train[order[k]]);
            const GradientVector d = update_direction(batch);
            adam_update(adam_, params_.flat(), d);
            ++iteration_;
            for (const TaskDataset* t : started_) {
                curve.push_back({epoch_, iteration_, t->task_id, test_accuracy(params_, t->test)});
            }
        }
    }
    if (strategy_.kind == StrategyKind::Ewc) {
        const auto subset = pick_samples(task.train, strategy_.fisher_samples, rng);
        anchors_.push_back({task.task_id,
                            {params_.flat().begin(), params_.flat().end()},
                            estimate_fisher_diag(params_, subset)});
    } else if (strategy_.kind == StrategyKind::Gem) {
        memories_.push_back({task.task_id, pick_samples(task.train, strategy_.memory_size, rng)});
    }
    return curve;
}

std::vector<int> parse_sequence(const std::string& text) {
    std::vector<int> order;
    bool seen[kNumTasks + 1] = {};
    for (char c : text) {
        if (c < '1' || c > '0' + kNumTasks) {
            throw ConfigError("task sequence '" + text + "' contains '" + std::string(1, c) +
                              "' (expected digits 1-6)");
        }
        const int id = c - '0';
        if (seen[id]) throw ConfigError("task sequence '" + text + "' repeats task " + std::string(1, c));
        seen[id] = true;
        order.push_back(id);
    }
    if (order.empty()) throw ConfigError("empty task sequence");
    return order;
}

SequenceResult run_sequence(const std::vector<int>& order, const StrategyConfig& strategy,
                            const TrainingSettings& settings,
                            std::span<const std::uint64_t> seeds,
                            const std::map<int, TaskDataset>& datasets) {
    if (order.empty()) throw ConfigError("empty task sequence");
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    for (int id : order) {
        if (!datasets.contains(id)) {
            throw ConfigError("dataset for task " + std::to_string(id) + " is missing");
        }
    }
    SequenceResult result;
    result.order = order;
    result.strategy = strategy;
    const int n = static_cast<int>(order.size());
    for (const std::uint64_t seed : seeds) {
        Rng init_rng(derive_seed(seed, 0));
        ContinualLearner learner(strategy, settings, random_params(settings.shape, init_rng));
        RunResult run;
        run.seed = seed;
        run.r = AccuracyMatrix(n);
        for (int pos = 0; pos < n; ++pos) {
            Rng task_rng(derive_seed(seed, static_cast<std::uint64_t>(pos + 1)));
            auto curve = learner.train_task(datasets.at(order[static_cast<std::size_t>(pos)]), task_rng);
            run.curve.insert(run.curve.end(), curve.begin(), curve.end());
            for (int j = 0; j <= pos; ++j) {
                const auto& test = datasets.at(order[static_cast<std::size_t>(j)]).test;
                run.r.set(pos, j, test_accuracy(learner.params(), test));
            }
        }
        run.acc = acc(run.r);
        run.bwt = n >= 2 ? bwt(run.r) : std::numeric_limits<double>::quiet_NaN();
        run.final_params = learner.params();
        run.gem_stats = learner.gem_stats();
        result.runs.push_back(std::move(run));
    }
    for (std::size_t k = 1; k < result.runs.size(); ++k) {
        if (result.runs[k].acc > result.runs[result.best].acc) result.best = k;
    }
    return result;
}

} // namespace qcl
