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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcl/continual.hpp"
#include "qcl/error.hpp"

namespace {

using qcl::StrategyKind;

constexpr int kQubits = 3;

const std::map<int, qcl::TaskDataset>& small_tasks() {
    static const auto tasks = [] {
        std::map<int, qcl::TaskDataset> m;
        for (int id : {4, 5, 6}) m.emplace(id, qcl::gen_task(id, qcl::task_seed(7, id), kQubits));
        return m;
    }();
    return tasks;
}

qcl::TrainingSettings small_settings() {
    qcl::TrainingSettings s;
    s.shape = {kQubits, 1};
    return s;
}

qcl::StrategyConfig strategy(StrategyKind kind, double lambda = 1.0) {
    qcl::StrategyConfig c;
    c.kind = kind;
    c.lambda = lambda;
    return c;
}

qcl::ClassifierParams init_params(std::uint64_t seed) {
    qcl::Rng rng(seed);
    return qcl::random_params(small_settings().shape, rng);
}

TEST(Strategy, ParseAndFormat) {
    EXPECT_EQ(qcl::parse_strategy("plain"), StrategyKind::Plain);
    EXPECT_EQ(qcl::parse_strategy("ewc"), StrategyKind::Ewc);
    EXPECT_EQ(qcl::parse_strategy("gem"), StrategyKind::Gem);
    for (auto k : {StrategyKind::Plain, StrategyKind::Ewc, StrategyKind::Gem}) {
        EXPECT_EQ(qcl::parse_strategy(qcl::to_string(k)), k);
    }
    EXPECT_THROW((void)qcl::parse_strategy("agem"), qcl::ConfigError);
}

TEST(Sequence, ParseValidatesPermutation) {
    EXPECT_EQ(qcl::parse_sequence("234561"), (std::vector<int>{2, 3, 4, 5, 6, 1}));
    EXPECT_EQ(qcl::parse_sequence("45"), (std::vector<int>{4, 5}));
    EXPECT_THROW((void)qcl::parse_sequence(""), qcl::ConfigError);
    EXPECT_THROW((void)qcl::parse_sequence("1231"), qcl::ConfigError);
    EXPECT_THROW((void)qcl::parse_sequence("127"), qcl::ConfigError);
    EXPECT_THROW((void)qcl::parse_sequence("12a"), qcl::ConfigError);
}

TEST(MemoryLoss, EqualsMeanSampleLoss) {
    std::mt19937_64 gen(2);
    const auto p = init_params(3);
    const qcl::Sample s{oracle::random_state(kQubits, gen), 1};
    qcl::EpisodicMemory one{4, {s}};
    EXPECT_EQ(qcl::memory_loss(p, one), qcl::loss(p, std::span(&s, 1)));
    qcl::EpisodicMemory dup{4, std::vector<qcl::Sample>(50, s)};
    EXPECT_NEAR(qcl::memory_loss(p, dup), qcl::memory_loss(p, one), 1e-14);
    EXPECT_THROW((void)qcl::memory_loss(p, qcl::EpisodicMemory{}), qcl::ArgumentError);
}

TEST(Fisher, SingleSampleAndBlockedHead) {
    std::mt19937_64 gen(4);
    auto p = init_params(5);
    const qcl::Sample s{oracle::random_state(kQubits, gen), 0};
    const auto g = qcl::sample_loss_and_grad(p, s).grad;
    const auto f = qcl::estimate_fisher_diag(p, std::span(&s, 1));
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(f[j], g[j] * g[j]);

    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < kQubits; ++c) p.w2(r, c) = 0.0;
    }
    const auto blocked = qcl::estimate_fisher_diag(p, std::span(&s, 1));
    for (std::size_t j = 0; j < p.w2_offset(); ++j) EXPECT_EQ(blocked[j], 0.0);
    EXPECT_THROW((void)qcl::estimate_fisher_diag(p, std::span<const qcl::Sample>{}), qcl::ArgumentError);
}

TEST(Fisher, MatchesFiniteDifferenceOracle) {
    std::mt19937_64 gen(6);
    const auto p = init_params(7);
    std::vector<qcl::Sample> samples;
    for (int k = 0; k < 4; ++k) samples.push_back({oracle::random_state(kQubits, gen), k % 2});
    std::vector<double> oracle_f(p.size(), 0.0);
    for (const auto& s : samples) {
        const auto g = qcl::fd_grad(p, std::span(&s, 1), 1e-5);
        for (std::size_t j = 0; j < g.size(); ++j) oracle_f[j] += g[j] * g[j] / 4.0;
    }
    const auto f = qcl::estimate_fisher_diag(p, samples);
    for (std::size_t j = 0; j < f.size(); ++j) {
        EXPECT_GE(f[j], 0.0);
        EXPECT_NEAR(f[j], oracle_f[j], 1e-6) << j;
    }
}

TEST(Ewc, RegularizedGradientExamples) {
    const std::vector<qcl::FisherAnchor> anchor{{1, {0.0}, {3.0}}};
    const std::vector<double> theta{0.5}, zero{0.0};
    EXPECT_EQ(qcl::ewc_regularized_grad(theta, zero, anchor, 2.0), (std::vector<double>{6.0}));
    const std::vector<double> task{1.25};
    EXPECT_EQ(qcl::ewc_regularized_grad(theta, task, {}, 2.0), task);
    EXPECT_EQ(qcl::ewc_regularized_grad(theta, task, anchor, 0.0), task);
    EXPECT_DOUBLE_EQ(qcl::ewc_penalty(theta, anchor, 2.0), 2.0 * 3.0 * 0.25);
    const std::vector<qcl::FisherAnchor> wrong{{1, {0.0, 0.0}, {1.0, 1.0}}};
    EXPECT_THROW((void)qcl::ewc_regularized_grad(theta, task, wrong, 1.0), qcl::ArgumentError);
}

TEST(Ewc, FullLossGradientMatchesFiniteDifferences) {
    // Toy task loss Σ sin(θ_j)·j with two anchors on five parameters.
    const std::vector<qcl::FisherAnchor> anchors{
        {1, {0.1, -0.2, 0.3, 0.0, 1.0}, {0.5, 1.0, 0.0, 2.0, 0.25}},
        {2, {-0.4, 0.2, 0.7, 0.1, -1.0}, {1.5, 0.1, 0.3, 0.0, 0.75}}};
    const double lambda = 0.7;
    auto total = [&](std::span<const double> t) {
        double task = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) task += std::sin(t[j]) * static_cast<double>(j + 1);
        return task + qcl::ewc_penalty(t, anchors, lambda);
    };
    const std::vector<double> theta{0.3, 0.9, -0.5, 0.2, 0.0};
    std::vector<double> task_grad(5);
    for (std::size_t j = 0; j < 5; ++j) task_grad[j] = std::cos(theta[j]) * static_cast<double>(j + 1);
    const auto g = qcl::ewc_regularized_grad(theta, task_grad, anchors, lambda);
    const auto fd = qcl::central_difference(total, theta, 1e-5);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(g[j], fd[j], 1e-8) << j;
}

TEST(ContinualLearner, StrategiesCoincideOnFirstTask) {
    const auto& task = small_tasks().at(4);
    std::vector<std::vector<double>> finals;
    std::vector<std::vector<qcl::CurvePoint>> curves;
    for (auto kind : {StrategyKind::Plain, StrategyKind::Ewc, StrategyKind::Gem}) {
        qcl::ContinualLearner learner(strategy(kind), small_settings(), init_params(11));
        qcl::Rng rng(12);
        curves.push_back(learner.train_task(task, rng));
        finals.emplace_back(learner.params().flat().begin(), learner.params().flat().end());
    }
    EXPECT_EQ(finals[0], finals[1]);
    EXPECT_EQ(finals[0], finals[2]);
    ASSERT_EQ(curves[0].size(), 40u);
    EXPECT_EQ(curves[0].back().iteration, 40);
    EXPECT_EQ(curves[0].back().epoch, 1);
    for (std::size_t k = 0; k < 40; ++k) EXPECT_EQ(curves[0][k].test_accuracy, curves[2][k].test_accuracy);
}

TEST(ContinualLearner, ArtifactsAndCurveShape) {
    const auto& tasks = small_tasks();
    qcl::ContinualLearner ewc(strategy(StrategyKind::Ewc), small_settings(), init_params(1));
    qcl::ContinualLearner gem(strategy(StrategyKind::Gem), small_settings(), init_params(1));
    qcl::Rng r1(2), r2(2);
    (void)ewc.train_task(tasks.at(4), r1);
    (void)gem.train_task(tasks.at(4), r2);
    const auto curve = gem.train_task(tasks.at(5), r2);
    ASSERT_EQ(ewc.anchors().size(), 1u);
    EXPECT_EQ(ewc.anchors()[0].task_id, 4);
    EXPECT_TRUE(std::equal(ewc.params().flat().begin(), ewc.params().flat().end(),
                           ewc.anchors()[0].theta_star.begin()));
    for (double f : ewc.anchors()[0].fisher_diag) EXPECT_GE(f, 0.0);
    ASSERT_EQ(gem.memories().size(), 2u);
    EXPECT_EQ(gem.memories()[0].samples.size(), 50u);
    EXPECT_EQ(gem.memories()[1].task_id, 5);
    // Two started tasks, one point each per iteration.
    ASSERT_EQ(curve.size(), 80u);
    EXPECT_EQ(curve[0].task_id, 4);
    EXPECT_EQ(curve[1].task_id, 5);
    EXPECT_EQ(curve.back().iteration, 80);
    EXPECT_EQ(curve.back().epoch, 2);
}

TEST(ContinualLearner, GemUpdatesRespectMemoryConstraint) {
    const auto& tasks = small_tasks();
    qcl::ContinualLearner gem(strategy(StrategyKind::Gem), small_settings(), init_params(21));
    qcl::Rng rng(22);
    (void)gem.train_task(tasks.at(4), rng);
    (void)gem.train_task(tasks.at(6), rng);
    const auto& st = gem.gem_stats();
    EXPECT_EQ(st.steps, 80u);
    EXPECT_GT(st.projections, 0u);
    EXPECT_GE(st.min_constraint, -1e-8);
    EXPECT_LE(st.max_kkt_residual, 1e-8);
}

TEST(ContinualLearner, StrongEwcReducesAnchorDrift) {
    const auto& tasks = small_tasks();
    auto drift = [&](double lambda) {
        qcl::ContinualLearner learner(strategy(StrategyKind::Ewc, lambda), small_settings(), init_params(31));
        qcl::Rng rng(32);
        (void)learner.train_task(tasks.at(4), rng);
        (void)learner.train_task(tasks.at(6), rng);
        const auto& star = learner.anchors()[0].theta_star;
        double d = 0.0;
        for (std::size_t j = 0; j < star.size(); ++j) {
            const double x = learner.params().flat()[j] - star[j];
            d += x * x;
        }
        return std::sqrt(d);
    };
    EXPECT_LT(drift(1e3), drift(0.0));
}

TEST(ContinualLearner, RejectsBadSettings) {
    auto s = small_settings();
    s.batch_size = 0;
    EXPECT_THROW(qcl::ContinualLearner(strategy(StrategyKind::Plain), s, init_params(1)), qcl::ConfigError);
    s = small_settings();
    s.shape.n_layers = 2;
    EXPECT_THROW(qcl::ContinualLearner(strategy(StrategyKind::Plain), s, init_params(1)), qcl::ArgumentError);
}

TEST(RunSequence, DeterministicAndLowerTriangular) {
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto a = qcl::run_sequence({4, 5}, strategy(StrategyKind::Gem), small_settings(), seeds, small_tasks());
    const auto b = qcl::run_sequence({4, 5}, strategy(StrategyKind::Gem), small_settings(), seeds, small_tasks());
    ASSERT_EQ(a.runs.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& r = a.runs[k].r;
        EXPECT_TRUE(r.has(0, 0) && r.has(1, 0) && r.has(1, 1));
        EXPECT_FALSE(r.has(0, 1));
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j <= i; ++j) EXPECT_EQ(r.at(i, j), b.runs[k].r.at(i, j));
        }
        EXPECT_EQ(a.runs[k].acc, qcl::acc(r));
        EXPECT_EQ(a.runs[k].bwt, qcl::bwt(r));
        EXPECT_EQ(a.runs[k].curve.size(), 40u + 80u);
    }
    EXPECT_EQ(a.best, a.runs[1].acc > a.runs[0].acc ? 1u : 0u);

    const auto single = qcl::run_sequence({4}, strategy(StrategyKind::Plain), small_settings(), seeds, small_tasks());
    EXPECT_TRUE(std::isnan(single.runs[0].bwt));
}

TEST(RunSequence, InitialParametersFollowSeedStream) {
    auto s = small_settings();
    s.epochs_per_task = 0;
    const std::vector<std::uint64_t> seeds{9};
    const auto res = qcl::run_sequence({4}, strategy(StrategyKind::Plain), s, seeds, small_tasks());
    const auto expect = init_params(qcl::derive_seed(9, 0));
    EXPECT_TRUE(std::equal(expect.flat().begin(), expect.flat().end(), res.runs[0].final_params.flat().begin()));
    EXPECT_TRUE(res.runs[0].curve.empty());
}

TEST(RunSequence, MissingDatasetIsConfigError) {
    const std::vector<std::uint64_t> seeds{1};
    EXPECT_THROW((void)qcl::run_sequence({4, 1}, strategy(StrategyKind::Plain), small_settings(), seeds,
                                         small_tasks()),
                 qcl::ConfigError);
    EXPECT_THROW((void)qcl::run_sequence({4}, strategy(StrategyKind::Plain), small_settings(), {}, small_tasks()),
                 qcl::ConfigError);
}

} // namespace
