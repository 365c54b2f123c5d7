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
#include "qcl/classifier.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "qcl/error.hpp"

namespace qcl {
namespace {

constexpr std::uint16_t kCheckpointVersion = 1;

void put_le(std::vector<std::uint8_t>& buf, std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::vector<std::uint8_t>& buf, std::size_t& pos, int n) {
    if (buf.size() - pos < static_cast<std::size_t>(n)) {
        throw FormatError("truncated checkpoint at offset " + std::to_string(pos));
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{buf[pos + i]} << (8 * i);
    pos += static_cast<std::size_t>(n);
    return v;
}

} // namespace

std::size_t ClassifierShape::circuit_params() const {
    const auto n = static_cast<std::size_t>(n_qubits);
    return static_cast<std::size_t>(n_layers) * n * 3 + n;
}

std::size_t ClassifierShape::head_params() const {
    const auto n = static_cast<std::size_t>(n_qubits);
    return n * n + n + 2 * n + 2;
}

ClassifierParams::ClassifierParams(ClassifierShape shape) : shape_(shape) {
    if (shape.n_qubits < 1 || shape.n_qubits > kMaxQubits || shape.n_layers < 0) {
        throw ArgumentError("invalid classifier shape");
    }
    values_.assign(shape.total(), 0.0);
}

ClassifierParams::ClassifierParams(ClassifierShape shape, std::vector<double> flat)
    : ClassifierParams(shape) {
    if (flat.size() != values_.size()) {
        throw ArgumentError("unflatten: expected " + std::to_string(values_.size()) +
                            " values, got " + std::to_string(flat.size()));
    }
    values_ = std::move(flat);
}

std::span<const double> ClassifierParams::circuit() const noexcept {
    return std::span<const double>(values_).first(shape_.circuit_params());
}

std::size_t ClassifierParams::w1_offset() const { return shape_.circuit_params(); }
std::size_t ClassifierParams::b1_offset() const {
    return w1_offset() + static_cast<std::size_t>(shape_.n_qubits * shape_.n_qubits);
}
std::size_t ClassifierParams::w2_offset() const {
    return b1_offset() + static_cast<std::size_t>(shape_.n_qubits);
}
std::size_t ClassifierParams::b2_offset() const {
    return w2_offset() + static_cast<std::size_t>(2 * shape_.n_qubits);
}

double& ClassifierParams::alpha(int layer, int qubit, int k) {
    return values_.at(static_cast<std::size_t>((layer * shape_.n_qubits + qubit) * 3 + k));
}
double& ClassifierParams::beta(int qubit) {
    return values_.at(static_cast<std::size_t>(shape_.n_layers * shape_.n_qubits * 3 + qubit));
}
double& ClassifierParams::w1(int row, int col) {
    return values_.at(w1_offset() + static_cast<std::size_t>(row * shape_.n_qubits + col));
}
double& ClassifierParams::b1(int row) {
    return values_.at(b1_offset() + static_cast<std::size_t>(row));
}
double& ClassifierParams::w2(int row, int col) {
    return values_.at(w2_offset() + static_cast<std::size_t>(row * shape_.n_qubits + col));
}
double& ClassifierParams::b2(int row) {
    return values_.at(b2_offset() + static_cast<std::size_t>(row));
}
double ClassifierParams::w1(int row, int col) const {
    return values_[w1_offset() + static_cast<std::size_t>(row * shape_.n_qubits + col)];
}
double ClassifierParams::b1(int row) const {
    return values_[b1_offset() + static_cast<std::size_t>(row)];
}
double ClassifierParams::w2(int row, int col) const {
    return values_[w2_offset() + static_cast<std::size_t>(row * shape_.n_qubits + col)];
}
double ClassifierParams::b2(int row) const {
    return values_[b2_offset() + static_cast<std::size_t>(row)];
}

ClassifierParams random_params(ClassifierShape shape, Rng& rng) {
    ClassifierParams p(shape);
    auto flat = p.flat();
    const std::size_t n_angles = shape.circuit_params();
    const double bound = 1.0 / std::sqrt(static_cast<double>(shape.n_qubits));
    for (std::size_t j = 0; j < flat.size(); ++j) {
        flat[j] = j < n_angles ? rng.uniform(-std::numbers::pi, std::numbers::pi)
                               : rng.uniform(-bound, bound);
    }
    return p;
}

const Circuit& classifier_circuit(const ClassifierShape& shape) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Circuit>> cache;
    const std::lock_guard lock(mu);
    auto& slot = cache[{shape.n_qubits, shape.n_layers}];
    if (!slot) {
        slot = std::make_unique<Circuit>(
            hardware_efficient_ansatz(shape.n_qubits, shape.n_layers, true));
    }
    return *slot;
}

MeasurementVector circuit_forward(const ClassifierParams& params, const Statevector& x) {
    const auto& shape = params.shape();
    if (x.n_qubits() != shape.n_qubits) {
        throw ArgumentError("classifier for " + std::to_string(shape.n_qubits) +
                            " qubits given a " + std::to_string(x.n_qubits()) + "-qubit state");
    }
    Statevector out = x;
    run_circuit(classifier_circuit(shape), params.circuit(), out);
    MeasurementVector z(static_cast<std::size_t>(shape.n_qubits));
    for (int i = 1; i <= shape.n_qubits; ++i) z[static_cast<std::size_t>(i - 1)] = expect_z(out, i);
    return z;
}

Logits head_forward(const ClassifierParams& params, std::span<const double> z) {
    const int n = params.shape().n_qubits;
    if (z.size() != static_cast<std::size_t>(n)) throw ArgumentError("head input size mismatch");
    std::vector<double> hidden(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        double acc = params.b1(r);
        for (int c = 0; c < n; ++c) acc += params.w1(r, c) * z[static_cast<std::size_t>(c)];
        hidden[static_cast<std::size_t>(r)] = std::tanh(acc);
    }
    Logits out{};
    for (int r = 0; r < 2; ++r) {
        double acc = params.b2(r);
        for (int c = 0; c < n; ++c) acc += params.w2(r, c) * hidden[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

double cross_entropy(const Logits& logits, int label) {
    const double hi = std::max(logits[0], logits[1]);
    const double lse = hi + std::log(std::exp(logits[0] - hi) + std::exp(logits[1] - hi));
    return lse - logits[static_cast<std::size_t>(label)];
}

int predict(const ClassifierParams& params, const Statevector& x) {
    const Logits l = head_forward(params, circuit_forward(params, x));
    return l[1] > l[0] ? 1 : 0;
}

double loss(const ClassifierParams& params, std::span<const Sample> batch) {
    if (batch.empty()) throw ArgumentError("loss of an empty batch");
    double total = 0.0;
    for (const auto& s : batch) {
        total += cross_entropy(head_forward(params, circuit_forward(params, s.state)), s.label);
    }
    return total / static_cast<double>(batch.size());
}

void save_checkpoint(const ClassifierParams& params, const std::filesystem::path& path) {
    std::vector<std::uint8_t> buf{'Q', 'C', 'L', 'P'};
    put_le(buf, kCheckpointVersion, 2);
    put_le(buf, static_cast<std::uint64_t>(params.shape().n_qubits), 2);
    put_le(buf, static_cast<std::uint64_t>(params.shape().n_layers), 2);
    put_le(buf, 0, 2);
    put_le(buf, params.size(), 4);
    for (double v : params.flat()) put_le(buf, std::bit_cast<std::uint64_t>(v), 8);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw DataError("write to " + path.string() + " failed");
}

ClassifierParams load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint " + path.string());
    const std::vector<std::uint8_t> buf{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
    std::size_t pos = 0;
    if (buf.size() < 4 || std::string(buf.begin(), buf.begin() + 4) != "QCLP") {
        throw FormatError(path.string() + ": bad checkpoint magic at offset 0");
    }
    pos = 4;
    if (get_le(buf, pos, 2) != kCheckpointVersion) {
        throw FormatError(path.string() + ": unsupported checkpoint version at offset 4");
    }
    ClassifierShape shape;
    shape.n_qubits = static_cast<int>(get_le(buf, pos, 2));
    shape.n_layers = static_cast<int>(get_le(buf, pos, 2));
    get_le(buf, pos, 2);
    const auto count = get_le(buf, pos, 4);
    if (shape.n_qubits < 1 || shape.n_qubits > kMaxQubits || count != shape.total()) {
        throw FormatError(path.string() + ": header shape inconsistent with parameter count");
    }
    std::vector<double> flat(count);
    for (auto& v : flat) v = std::bit_cast<double>(get_le(buf, pos, 8));
    if (pos != buf.size()) throw FormatError(path.string() + ": trailing bytes after parameters");
    return {shape, std::move(flat)};
}

} // namespace qcl
