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
#include <benchmark/benchmark.h>

#include <random>

#include "qcl/entanglement.hpp"
#include "qcl/gradient.hpp"
#include "qcl/hamiltonians.hpp"
#include "qcl/nnqp.hpp"

namespace {

qcl::Statevector random_state(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g;
    std::vector<qcl::Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) a = {g(gen), g(gen)};
    return qcl::Statevector::normalized(std::move(amps));
}

void BM_ApplyRx(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = random_state(n, 1);
    int q = 1;
    for (auto _ : state) {
        qcl::apply_rx(s, q, 0.3);
        q = q % n + 1;
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_ApplyRx)->Arg(4)->Arg(8)->Arg(12);

void BM_ApplyCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = random_state(n, 2);
    for (auto _ : state) {
        qcl::apply_cnot(s, 1, n);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_ApplyCnot)->Arg(4)->Arg(8)->Arg(12);

void BM_ClassifierForward(benchmark::State& state) {
    const qcl::ClassifierShape shape{static_cast<int>(state.range(0)), 1};
    qcl::Rng rng(3);
    const auto p = qcl::random_params(shape, rng);
    const auto x = random_state(shape.n_qubits, 4);
    for (auto _ : state) benchmark::DoNotOptimize(qcl::predict(p, x));
}
BENCHMARK(BM_ClassifierForward)->Arg(4)->Arg(8);

void BM_SampleGradient(benchmark::State& state) {
    const qcl::ClassifierShape shape{static_cast<int>(state.range(0)), 1};
    qcl::Rng rng(5);
    const auto p = qcl::random_params(shape, rng);
    const qcl::Sample s{random_state(shape.n_qubits, 6), 1};
    for (auto _ : state) benchmark::DoNotOptimize(qcl::sample_loss_and_grad(p, s));
}
BENCHMARK(BM_SampleGradient)->Arg(4)->Arg(8);

void BM_ConcentratableEntanglement(benchmark::State& state) {
    const auto s = random_state(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(qcl::concentratable_entanglement(s));
}
BENCHMARK(BM_ConcentratableEntanglement)->Arg(4)->Arg(8);

void BM_ConcentratableEntanglementGradient(benchmark::State& state) {
    const auto s = random_state(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(qcl::concentratable_entanglement_gradient(s));
}
BENCHMARK(BM_ConcentratableEntanglementGradient)->Arg(4)->Arg(8);

void BM_DiagonalizeCluster(benchmark::State& state) {
    const auto h = qcl::build_cluster(static_cast<int>(state.range(0)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(qcl::diagonalize(h));
}
BENCHMARK(BM_DiagonalizeCluster)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GemProject(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(9);
    std::normal_distribution<double> n;
    std::vector<double> g(122);
    for (auto& x : g) x = n(gen);
    std::vector<std::vector<double>> mem(m, std::vector<double>(122));
    // Tilted against g so that every constraint is active.
    for (auto& v : mem) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = n(gen) - 0.5 * g[i];
    }
    for (auto _ : state) benchmark::DoNotOptimize(qcl::gem_project(g, mem));
}
BENCHMARK(BM_GemProject)->Arg(1)->Arg(3)->Arg(5);

} // namespace

BENCHMARK_MAIN();
