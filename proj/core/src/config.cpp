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
#include "qcl/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

class LineError {
  public:
    explicit LineError(int line) : line_(line) {}
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("config line " + std::to_string(line_) + ": " + msg);
    }

  private:
    int line_;
};

template <typename T>
T parse_number(std::string_view text, const std::string& key, const LineError& err) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        err.fail("'" + std::string(text) + "' is not a valid value for " + key);
    }
    return value;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

StrategyConfig ExperimentConfig::strategy(StrategyKind kind) const {
    StrategyConfig s;
    s.kind = kind;
    s.lambda = lambda;
    s.memory_size = memory_size;
    s.fisher_samples = fisher_samples;
    return s;
}

TrainingSettings ExperimentConfig::training(int n_qubits) const {
    TrainingSettings t;
    t.shape = ClassifierShape{n_qubits, n_layers};
    t.lr = lr;
    t.batch_size = batch_size;
    t.epochs_per_task = epochs_per_task;
    return t;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const LineError err(line_no);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) err.fail("expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) err.fail("missing key");
        if (!seen.insert(key).second) err.fail("duplicate key '" + key + "'");

        try {
            if (key == "sequence") {
                (void)parse_sequence(std::string(value));
                cfg.sequence = std::string(value);
            } else if (key == "strategies") {
                cfg.strategies.clear();
                for (auto item : split_list(value)) {
                    const auto kind = parse_strategy(std::string(item));
                    for (auto k : cfg.strategies) {
                        if (k == kind) err.fail("strategy '" + std::string(item) + "' listed twice");
                    }
                    cfg.strategies.push_back(kind);
                }
            } else if (key == "lambda") {
                cfg.lambda = parse_number<double>(value, key, err);
                if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) err.fail("lambda must be >= 0");
            } else if (key == "memory_size") {
                cfg.memory_size = parse_number<std::size_t>(value, key, err);
                if (cfg.memory_size == 0) err.fail("memory_size must be positive");
            } else if (key == "fisher_samples") {
                cfg.fisher_samples = parse_number<std::size_t>(value, key, err);
                if (cfg.fisher_samples == 0) err.fail("fisher_samples must be positive");
            } else if (key == "n_layers") {
                cfg.n_layers = parse_number<int>(value, key, err);
                if (cfg.n_layers < 1) err.fail("n_layers must be >= 1");
            } else if (key == "lr") {
                cfg.lr = parse_number<double>(value, key, err);
                if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) err.fail("lr must be positive");
            } else if (key == "batch_size") {
                cfg.batch_size = parse_number<std::size_t>(value, key, err);
                if (cfg.batch_size == 0) err.fail("batch_size must be positive");
            } else if (key == "epochs_per_task") {
                cfg.epochs_per_task = parse_number<int>(value, key, err);
                if (cfg.epochs_per_task < 0) err.fail("epochs_per_task must be >= 0");
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (auto item : split_list(value)) cfg.seeds.push_back(parse_number<std::uint64_t>(item, key, err));
            } else if (key == "data_dir") {
                if (value.empty()) err.fail("data_dir is empty");
                cfg.data_dir = std::string(value);
            } else if (key == "out_dir") {
                if (value.empty()) err.fail("out_dir is empty");
                cfg.out_dir = std::string(value);
            } else {
                err.fail("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            const std::string what = e.what();
            if (what.rfind("config line", 0) == 0) throw;
            err.fail(what);
        }
    }
    if (cfg.strategies.empty()) throw ConfigError("config lists no strategies");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    ExperimentConfig cfg = parse_config(text.str());
    const auto base = path.parent_path();
    if (cfg.data_dir.is_relative()) cfg.data_dir = base / cfg.data_dir;
    if (cfg.out_dir.is_relative()) cfg.out_dir = base / cfg.out_dir;
    return cfg;
}

std::string format_config(const ExperimentConfig& config) {
    std::string out;
    auto put = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("sequence", config.sequence);
    std::string strategies;
    for (std::size_t k = 0; k < config.strategies.size(); ++k) {
        if (k > 0) strategies += ',';
        strategies += to_string(config.strategies[k]);
    }
    put("strategies", strategies);
    put("lambda", format_double(config.lambda));
    put("memory_size", std::to_string(config.memory_size));
    put("fisher_samples", std::to_string(config.fisher_samples));
    put("n_layers", std::to_string(config.n_layers));
    put("lr", format_double(config.lr));
    put("batch_size", std::to_string(config.batch_size));
    put("epochs_per_task", std::to_string(config.epochs_per_task));
    std::string seeds;
    for (std::size_t k = 0; k < config.seeds.size(); ++k) {
        if (k > 0) seeds += ',';
        seeds += std::to_string(config.seeds[k]);
    }
    put("seeds", seeds);
    put("data_dir", config.data_dir.string());
    put("out_dir", config.out_dir.string());
    return out;
}

} // namespace qcl
