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
#include "qcl/datasets.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "qcl/adam.hpp"
#include "qcl/ansatz.hpp"
#include "qcl/entanglement.hpp"
#include "qcl/error.hpp"
#include "qcl/hamiltonians.hpp"
#include "qcl/rng.hpp"

namespace qcl {
namespace {

constexpr std::uint16_t kFormatVersion = 1;
constexpr std::size_t kTrainPerClass = kTrainSamples / 2;
constexpr double kCeTolerance = 0.005;
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kSampleStreamBase = 1000;

double linspace(double lo, double hi, std::size_t k, std::size_t count) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
}

void check_task(int task_id, int first, int last) {
    if (task_id < first || task_id > last) {
        throw ArgumentError("task id " + std::to_string(task_id) + " not in " +
                            std::to_string(first) + ".." + std::to_string(last));
    }
}

// Little-endian byte writer/reader.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void raw(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

  private:
    void put(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
  public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    [[nodiscard]] std::size_t offset() const { return pos_; }
    [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    double f64() { return std::bit_cast<double>(get(8)); }

  private:
    std::uint64_t get(int n) {
        if (remaining() < static_cast<std::size_t>(n)) {
            throw FormatError("truncated dataset: need " + std::to_string(n) +
                              " bytes at offset " + std::to_string(pos_) + ", file has " +
                              std::to_string(bytes_.size()));
        }
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

std::uint64_t task_seed(std::uint64_t master_seed, int task_id) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(task_id));
}

std::pair<double, double> ce_targets(int task_id) {
    check_task(task_id, 2, 3);
    return task_id == 2 ? std::pair{0.10, 0.25} : std::pair{0.15, 0.45};
}

double ising_tau(int task_id) {
    check_task(task_id, 4, 6);
    return 0.25 * (task_id - 3);
}

void stratified_split(std::vector<Sample> samples, std::vector<double> params,
                      std::uint64_t seed, TaskDataset& out) {
    if (params.size() != samples.size()) throw ArgumentError("split: params size mismatch");
    std::vector<std::size_t> by_class[2];
    for (std::size_t k = 0; k < samples.size(); ++k) by_class[samples[k].label].push_back(k);
    if (by_class[0].size() < kTrainPerClass || by_class[1].size() < kTrainPerClass) {
        throw DataError("split: each class needs at least " + std::to_string(kTrainPerClass) +
                        " samples");
    }
    Rng rng(derive_seed(seed, kSplitStream));
    std::vector<std::size_t> train_idx, test_idx;
    for (int label : {1, 0}) {
        auto& idx = by_class[label];
        rng.shuffle(idx);
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + kTrainPerClass);
        test_idx.insert(test_idx.end(), idx.begin() + kTrainPerClass, idx.end());
    }
    rng.shuffle(train_idx);
    rng.shuffle(test_idx);

    out.train.clear();
    out.test.clear();
    out.meta.sample_params.clear();
    for (auto k : train_idx) {
        out.train.push_back(std::move(samples[k]));
        out.meta.sample_params.push_back(params[k]);
    }
    for (auto k : test_idx) {
        out.test.push_back(std::move(samples[k]));
        out.meta.sample_params.push_back(params[k]);
    }
}

void validate_task_dataset(const TaskDataset& ds) {
    if (ds.train.size() != kTrainSamples || ds.test.size() != kTestSamples) {
        throw DataError("task " + std::to_string(ds.task_id) + ": expected " +
                        std::to_string(kTrainSamples) + "/" + std::to_string(kTestSamples) +
                        " train/test samples, got " + std::to_string(ds.train.size()) + "/" +
                        std::to_string(ds.test.size()));
    }
    std::size_t positives = 0;
    for (const auto& s : ds.train) positives += s.label == 1 ? 1 : 0;
    if (positives < kTrainPerClass || ds.train.size() - positives < kTrainPerClass) {
        throw DataError("task " + std::to_string(ds.task_id) + ": unbalanced training split");
    }
}

TaskDataset gen_task1(std::uint64_t seed, int n_qubits) {
    std::vector<Sample> samples;
    std::vector<double> params;
    samples.reserve(kSamplesPerTask);
    for (std::size_t k = 0; k < kSamplesPerTask; ++k) {
        const double h = linspace(0.0, 2.0, k, kSamplesPerTask);
        samples.push_back({ground_state(build_cluster(n_qubits, h)), h < 1.0 ? 1 : 0});
        params.push_back(h);
    }
    TaskDataset ds;
    ds.task_id = 1;
    ds.meta.seed = seed;
    stratified_split(std::move(samples), std::move(params), seed, ds);
    return ds;
}

TaskDataset gen_task_ising(int task_id, std::uint64_t seed, int n_qubits) {
    const double tau = ising_tau(task_id);
    const Statevector plus = Statevector::plus(n_qubits);
    std::vector<Sample> samples;
    std::vector<double> params;
    samples.reserve(kSamplesPerTask);
    for (std::size_t k = 0; k < kSamplesPerTask; ++k) {
        const double j = linspace(-1.0, 1.0, k, kSamplesPerTask);
        samples.push_back({evolve(build_ising(n_qubits, tau, j), plus), j > 0.0 ? 1 : 0});
        params.push_back(j);
    }
    TaskDataset ds;
    ds.task_id = task_id;
    ds.meta.seed = seed;
    ds.meta.tau = tau;
    stratified_split(std::move(samples), std::move(params), seed, ds);
    return ds;
}

Statevector generate_ce_state(double target, double tol, std::uint64_t seed,
                              const CeSynthesisOptions& options) {
    if (!(target > 0.0 && target < 1.0)) {
        throw ArgumentError("CE target must lie in (0, 1)");
    }
    const Circuit circuit = hardware_efficient_ansatz(options.n_qubits, options.depth, false);
    double last_ce = 0.0;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<double> angles(circuit.n_params);
        for (auto& a : angles) a = rng.uniform(-options.init_scale, options.init_scale);
        AdamState adam(angles.size(), {options.learning_rate, 0.9, 0.999, 1e-8});
        for (int it = 0; it <= options.max_iterations; ++it) {
            Statevector psi(options.n_qubits);
            run_circuit(circuit, angles, psi);
            EntanglementGradient eg = concentratable_entanglement_gradient(psi);
            last_ce = eg.ce;
            if (std::abs(eg.ce - target) <= tol) return psi;
            if (it == options.max_iterations) break;
            // d(CE - t)² = 2(CE - t) dCE
            for (auto& a : eg.cotangent.amplitudes()) a *= 2.0 * (eg.ce - target);
            const auto grad = adjoint_gradient(circuit, angles, std::move(psi),
                                               std::move(eg.cotangent));
            adam_update(adam, angles, grad);
        }
    }
    throw ConvergenceError("CE synthesis for target " + std::to_string(target) +
                           " did not converge after " + std::to_string(options.max_retries) +
                           " retries (last CE " + std::to_string(last_ce) + ")");
}

TaskDataset gen_task_ce(int task_id, std::uint64_t seed, int n_qubits) {
    const auto [low, high] = ce_targets(task_id);
    CeSynthesisOptions options;
    options.n_qubits = n_qubits;
    std::vector<Sample> samples;
    std::vector<double> params;
    samples.reserve(kSamplesPerTask);
    for (std::size_t k = 0; k < kSamplesPerTask; ++k) {
        const bool lower = k < kSamplesPerTask / 2;
        const double target = lower ? low : high;
        samples.push_back({generate_ce_state(target, kCeTolerance,
                                             derive_seed(seed, kSampleStreamBase + k), options),
                           lower ? 1 : 0});
        params.push_back(target);
    }
    TaskDataset ds;
    ds.task_id = task_id;
    ds.meta.seed = seed;
    ds.meta.ce_low = low;
    ds.meta.ce_high = high;
    stratified_split(std::move(samples), std::move(params), seed, ds);
    return ds;
}

TaskDataset gen_task(int task_id, std::uint64_t seed, int n_qubits) {
    check_task(task_id, 1, kNumTasks);
    if (task_id == 1) return gen_task1(seed, n_qubits);
    if (task_id <= 3) return gen_task_ce(task_id, seed, n_qubits);
    return gen_task_ising(task_id, seed, n_qubits);
}

std::vector<std::uint8_t> encode_dataset(const TaskDataset& ds) {
    const auto all = {&ds.train, &ds.test};
    int nq = 0;
    for (const auto* part : all) {
        for (const auto& s : *part) {
            if (nq == 0) nq = s.state.n_qubits();
            if (s.state.n_qubits() != nq) throw ArgumentError("dataset mixes qubit counts");
            if (s.label != 0 && s.label != 1) throw ArgumentError("label must be 0 or 1");
        }
    }
    ByteWriter w;
    w.raw("QCLD");
    w.u16(kFormatVersion);
    w.u16(static_cast<std::uint16_t>(nq));
    w.u32(static_cast<std::uint32_t>(ds.train.size() + ds.test.size()));
    std::uint8_t split = 0;
    for (const auto* part : all) {
        for (const auto& s : *part) {
            for (const auto& a : s.state.amplitudes()) {
                w.f64(a.real());
                w.f64(a.imag());
            }
            w.u8(static_cast<std::uint8_t>(s.label));
            w.u8(split);
        }
        split = 1;
    }
    return w.take();
}

TaskDataset decode_dataset(std::span<const std::uint8_t> bytes, int task_id) {
    ByteReader r(bytes);
    std::string magic;
    for (int i = 0; i < 4; ++i) magic.push_back(static_cast<char>(r.u8()));
    if (magic != "QCLD") throw FormatError("bad magic at offset 0 (expected \"QCLD\")");
    const std::size_t version_at = r.offset();
    if (const auto v = r.u16(); v != kFormatVersion) {
        throw FormatError("unsupported version " + std::to_string(v) + " at offset " +
                          std::to_string(version_at));
    }
    const std::size_t nq_at = r.offset();
    const int nq = r.u16();
    if (nq < 1 || nq > kMaxQubits) {
        throw FormatError("qubit count " + std::to_string(nq) + " out of range at offset " +
                          std::to_string(nq_at));
    }
    const std::uint32_t count = r.u32();
    const std::size_t dim = std::size_t{1} << nq;
    const std::size_t record = dim * 16 + 2;
    if (r.remaining() != record * count) {
        throw FormatError("truncated or oversized dataset: header declares " +
                          std::to_string(count) + " samples (" + std::to_string(record * count) +
                          " bytes) but " + std::to_string(r.remaining()) +
                          " bytes follow offset " + std::to_string(r.offset()));
    }

    TaskDataset ds;
    ds.task_id = task_id;
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::size_t start = r.offset();
        std::vector<Complex> amps(dim);
        for (auto& a : amps) {
            const double re = r.f64();
            const double im = r.f64();
            a = {re, im};
        }
        Statevector state(1);
        try {
            state = Statevector::from_amplitudes(std::move(amps));
        } catch (const ValidationError& e) {
            throw FormatError("sample " + std::to_string(k) + " at offset " +
                              std::to_string(start) + ": " + e.what());
        }
        const std::size_t label_at = r.offset();
        const std::uint8_t label = r.u8();
        if (label > 1) {
            throw FormatError("sample " + std::to_string(k) + ": invalid label byte " +
                              std::to_string(label) + " at offset " + std::to_string(label_at));
        }
        const std::uint8_t split = r.u8();
        if (split > 1) {
            throw FormatError("sample " + std::to_string(k) + ": invalid split flag " +
                              std::to_string(split) + " at offset " +
                              std::to_string(label_at + 1));
        }
        (split == 0 ? ds.train : ds.test).push_back({std::move(state), label});
    }
    return ds;
}

void save_dataset(const TaskDataset& ds, const std::filesystem::path& path) {
    const auto bytes = encode_dataset(ds);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write to " + path.string() + " failed");
}

TaskDataset load_dataset(const std::filesystem::path& path, int task_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset " + path.string());
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                          std::istreambuf_iterator<char>()};
    try {
        return decode_dataset(bytes, task_id);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::filesystem::path dataset_path(const std::filesystem::path& dir, int task_id) {
    return dir / ("task" + std::to_string(task_id) + ".qcld");
}

} // namespace qcl
