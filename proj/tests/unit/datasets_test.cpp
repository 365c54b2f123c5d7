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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstring>
#include <filesystem>
#include <map>
#include <set>

#include "oracles.hpp"
#include "qcl/datasets.hpp"
#include "qcl/entanglement.hpp"
#include "qcl/error.hpp"
#include "qcl/hamiltonians.hpp"

namespace {

using qcl::TaskDataset;

constexpr int kSmallQubits = 5;

const TaskDataset& small_task(int id) {
    static std::map<int, TaskDataset> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, qcl::gen_task(id, qcl::task_seed(7, id), kSmallQubits)).first;
    return it->second;
}

std::vector<double> grid(double lo, double hi) {
    std::vector<double> g(512);
    for (std::size_t k = 0; k < 512; ++k) g[k] = lo + (hi - lo) * static_cast<double>(k) / 511.0;
    return g;
}

void expect_balanced(const TaskDataset& ds) {
    ASSERT_EQ(ds.train.size(), 400u);
    ASSERT_EQ(ds.test.size(), 112u);
    std::size_t train1 = 0, all1 = 0;
    for (const auto& s : ds.train) train1 += static_cast<std::size_t>(s.label);
    for (const auto& s : ds.test) all1 += static_cast<std::size_t>(s.label);
    all1 += train1;
    EXPECT_EQ(train1, 200u);
    EXPECT_EQ(all1, 256u);
    for (const auto* part : {&ds.train, &ds.test}) {
        for (const auto& s : *part) EXPECT_NEAR(s.state.norm_squared(), 1.0, 1e-10);
    }
}

const qcl::Sample& sample_at(const TaskDataset& ds, std::size_t k) {
    return k < ds.train.size() ? ds.train[k] : ds.test[k - ds.train.size()];
}

TEST(Datasets, TaskConstants) {
    EXPECT_DOUBLE_EQ(qcl::ising_tau(4), 0.25);
    EXPECT_DOUBLE_EQ(qcl::ising_tau(5), 0.5);
    EXPECT_DOUBLE_EQ(qcl::ising_tau(6), 0.75);
    EXPECT_EQ(qcl::ce_targets(2), (std::pair{0.10, 0.25}));
    EXPECT_EQ(qcl::ce_targets(3), (std::pair{0.15, 0.45}));
    EXPECT_THROW((void)qcl::ising_tau(3), qcl::ArgumentError);
    EXPECT_THROW((void)qcl::ce_targets(1), qcl::ArgumentError);
    EXPECT_THROW((void)qcl::gen_task(7, 1, kSmallQubits), qcl::ArgumentError);
}

TEST(Task1, LabelsFollowFieldAndStatesAreGroundStates) {
    const auto& ds = small_task(1);
    expect_balanced(ds);
    ASSERT_EQ(ds.meta.sample_params.size(), 512u);
    std::multiset<double> hs(ds.meta.sample_params.begin(), ds.meta.sample_params.end());
    const auto expected = grid(0.0, 2.0);
    EXPECT_EQ(hs, std::multiset<double>(expected.begin(), expected.end()));
    for (std::size_t k = 0; k < 512; k += 37) {
        const double h = ds.meta.sample_params[k];
        const auto& s = sample_at(ds, k);
        EXPECT_EQ(s.label, h < 1.0 ? 1 : 0);
        const auto ham = qcl::build_cluster(kSmallQubits, h);
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(ham.matrix());
        EXPECT_NEAR(qcl::expectation(ham, s.state), es.eigenvalues()(0), 1e-9) << "h=" << h;
    }
}

TEST(Task1, ZeroFieldSampleHasEnergyMinusN) {
    const auto& ds = small_task(1);
    for (std::size_t k = 0; k < 512; ++k) {
        if (ds.meta.sample_params[k] == 0.0) {
            EXPECT_NEAR(qcl::expectation(qcl::build_cluster(kSmallQubits, 0.0), sample_at(ds, k).state),
                        -static_cast<double>(kSmallQubits), 1e-9);
            return;
        }
    }
    FAIL() << "h = 0 sample missing";
}

TEST(IsingTasks, LabelsAndStatesMatchDenseExponential) {
    for (int id : {4, 5, 6}) {
        const auto& ds = small_task(id);
        expect_balanced(ds);
        EXPECT_DOUBLE_EQ(ds.meta.tau, 0.25 * (id - 3));
        const auto plus = oracle::to_vec(qcl::Statevector::plus(kSmallQubits));
        for (std::size_t k = 5; k < 512; k += 101) {
            const double j = ds.meta.sample_params[k];
            const auto& s = sample_at(ds, k);
            EXPECT_EQ(s.label, j > 0.0 ? 1 : 0);
            // Independent exp(-iH) from the oracle's own eigendecomposition.
            const oracle::Mat h = qcl::build_ising(kSmallQubits, ds.meta.tau, j).matrix();
            Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h);
            const oracle::Vec expect =
                es.eigenvectors() *
                (es.eigenvalues().unaryExpr([](double l) { return std::exp(qcl::Complex(0.0, -l)); }).asDiagonal() *
                 (es.eigenvectors().adjoint() * plus));
            EXPECT_LT((oracle::to_vec(s.state) - expect).norm(), 1e-10);
        }
    }
}

TEST(CeTasks, StatesHitTargetsWithinTolerance) {
    const auto& ds = small_task(2);
    expect_balanced(ds);
    for (std::size_t k = 0; k < 512; ++k) {
        const double target = ds.meta.sample_params[k];
        const auto& s = sample_at(ds, k);
        EXPECT_EQ(s.label, target == 0.10 ? 1 : 0);
        EXPECT_NEAR(oracle::concentratable_entanglement(s.state), target, 0.005 + 1e-12) << "sample " << k;
    }
}

TEST(CeTasks, StatesAreDiverse) {
    const auto& ds = small_task(2);
    double max_overlap = 0.0;
    for (std::size_t a = 0; a < 40; ++a) {
        for (std::size_t b = a + 1; b < 40; ++b) {
            max_overlap = std::max(max_overlap, std::norm(qcl::inner(ds.train[a].state, ds.train[b].state)));
        }
    }
    EXPECT_LT(max_overlap, 0.99);
}

TEST(CeSynthesis, Examples) {
    qcl::CeSynthesisOptions opt;
    opt.n_qubits = 4;
    const auto low = qcl::generate_ce_state(0.005, 0.005, 11, opt);
    EXPECT_LT(qcl::concentratable_entanglement(low), 0.01);
    const auto mid = qcl::generate_ce_state(0.3, 0.005, 12, opt);
    EXPECT_NEAR(qcl::concentratable_entanglement(mid), 0.3, 0.005);
    EXPECT_THROW((void)qcl::generate_ce_state(0.0, 0.005, 1, opt), qcl::ArgumentError);
    EXPECT_THROW((void)qcl::generate_ce_state(1.0, 0.005, 1, opt), qcl::ArgumentError);
    opt.max_retries = 0;
    opt.max_iterations = 1;
    EXPECT_THROW((void)qcl::generate_ce_state(0.4, 1e-9, 1, opt), qcl::ConvergenceError);
}

TEST(Datasets, GenerationIsDeterministic) {
    const auto a = qcl::gen_task(4, qcl::task_seed(7, 4), 3);
    const auto b = qcl::gen_task(4, qcl::task_seed(7, 4), 3);
    EXPECT_EQ(qcl::encode_dataset(a), qcl::encode_dataset(b));
    const auto c = qcl::gen_task(4, qcl::task_seed(8, 4), 3);
    EXPECT_NE(qcl::encode_dataset(a), qcl::encode_dataset(c));
    EXPECT_NE(qcl::task_seed(7, 1), qcl::task_seed(7, 2));
}

TEST(StratifiedSplit, RejectsTooFewPerClass) {
    std::vector<qcl::Sample> samples(300, qcl::Sample{qcl::Statevector(1), 0});
    TaskDataset out;
    EXPECT_THROW(qcl::stratified_split(samples, std::vector<double>(300), 1, out), qcl::DataError);
    EXPECT_THROW(qcl::stratified_split(samples, std::vector<double>(2), 1, out), qcl::ArgumentError);
}

TEST(ValidateTaskDataset, Checks) {
    auto ds = small_task(4);
    EXPECT_NO_THROW(qcl::validate_task_dataset(ds));
    ds.test.pop_back();
    EXPECT_THROW(qcl::validate_task_dataset(ds), qcl::DataError);
    ds = small_task(4);
    for (auto& s : ds.train) s.label = 1;
    EXPECT_THROW(qcl::validate_task_dataset(ds), qcl::DataError);
}

class DatasetFormat : public ::testing::Test {
  protected:
    void SetUp() override {
        ds_ = qcl::gen_task(5, 99, 2);
        bytes_ = qcl::encode_dataset(ds_);
    }
    static constexpr std::size_t kHeader = 12;
    static constexpr std::size_t kRecord = 4 * 16 + 2;
    TaskDataset ds_;
    std::vector<std::uint8_t> bytes_;
};

TEST_F(DatasetFormat, LayoutAndRoundTripAreExact) {
    ASSERT_EQ(bytes_.size(), kHeader + 512 * kRecord);
    EXPECT_EQ(std::memcmp(bytes_.data(), "QCLD", 4), 0);
    EXPECT_EQ(bytes_[4] | (bytes_[5] << 8), 1);
    EXPECT_EQ(bytes_[6] | (bytes_[7] << 8), 2);
    EXPECT_EQ(bytes_[8] | (bytes_[9] << 8) | (bytes_[10] << 16) | (bytes_[11] << 24), 512);
    // First amplitude of the first train sample, little-endian f64.
    double re = 0.0;
    std::uint64_t raw = 0;
    for (int i = 0; i < 8; ++i) raw |= std::uint64_t{bytes_[kHeader + i]} << (8 * i);
    std::memcpy(&re, &raw, 8);
    EXPECT_EQ(re, ds_.train[0].state[0].real());
    EXPECT_EQ(bytes_[kHeader + kRecord - 1], 0);
    EXPECT_EQ(bytes_[kHeader + 400 * kRecord + kRecord - 1], 1);

    const auto back = qcl::decode_dataset(bytes_, 5);
    EXPECT_EQ(back.task_id, 5);
    ASSERT_EQ(back.train.size(), 400u);
    ASSERT_EQ(back.test.size(), 112u);
    for (std::size_t k = 0; k < 400; ++k) {
        EXPECT_EQ(back.train[k].label, ds_.train[k].label);
        EXPECT_TRUE(std::ranges::equal(back.train[k].state.amplitudes(), ds_.train[k].state.amplitudes()));
    }
    EXPECT_EQ(qcl::encode_dataset(back), bytes_);
}

TEST_F(DatasetFormat, SaveAndLoadFile) {
    const auto dir = std::filesystem::temp_directory_path() / "qcl_dataset_test";
    std::filesystem::create_directories(dir);
    const auto path = qcl::dataset_path(dir, 5);
    EXPECT_EQ(path.filename(), "task5.qcld");
    qcl::save_dataset(ds_, path);
    EXPECT_EQ(qcl::encode_dataset(qcl::load_dataset(path, 5)), bytes_);
    EXPECT_THROW((void)qcl::load_dataset(dir / "missing.qcld"), qcl::DataError);
    std::filesystem::remove_all(dir);
}

TEST_F(DatasetFormat, RejectsCorruptInput) {
    auto bad = bytes_;
    bad[0] = 'X';
    EXPECT_THROW((void)qcl::decode_dataset(bad), qcl::FormatError);

    bad = bytes_;
    bad[4] = 2;
    EXPECT_THROW((void)qcl::decode_dataset(bad), qcl::FormatError);

    bad = bytes_;
    bad.pop_back();
    EXPECT_THROW((void)qcl::decode_dataset(bad), qcl::FormatError);
    EXPECT_THROW((void)qcl::decode_dataset(std::span(bytes_.data(), 6)), qcl::FormatError);

    bad = bytes_;
    bad[kHeader + 3 * kRecord + kRecord - 2] = 2;
    try {
        (void)qcl::decode_dataset(bad);
        FAIL() << "expected FormatError";
    } catch (const qcl::FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("sample 3"), std::string::npos) << e.what();
    }

    bad = bytes_;
    bad[kHeader + kRecord - 1] = 7;
    EXPECT_THROW((void)qcl::decode_dataset(bad), qcl::FormatError);

    // Zeroing the first amplitude breaks the norm.
    bad = bytes_;
    const double zero = 0.0, one = 1.0;
    std::memcpy(bad.data() + kHeader, &zero, 8);
    std::memcpy(bad.data() + kHeader + 16, &one, 8);
    std::memcpy(bad.data() + kHeader + 24, &one, 8);
    EXPECT_THROW((void)qcl::decode_dataset(bad), qcl::FormatError);
}

} // namespace
