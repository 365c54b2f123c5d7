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
#include "qcl/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "qcl/error.hpp"
#include "qcl/metrics.hpp"

namespace qcl {
namespace {

namespace fs = std::filesystem;

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

std::string exact(double x) { return fmt("%.17g", x); }

std::string display_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Plain:
        return "Plain";
    case StrategyKind::Ewc:
        return "EWC";
    case StrategyKind::Gem:
        return "GEM";
    }
    return "?";
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("write to " + path.string() + " failed");
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto at = s.find(sep, start);
        if (at == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

// Non-empty lines with any trailing '\r' removed.
std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

template <typename T>
T parse_field(std::string_view text, const char* what, std::size_t line) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw DataError("line " + std::to_string(line) + ": bad " + what + " '" + std::string(text) + "'");
    }
    return value;
}

StrategyKind parse_kind(std::string_view text, std::size_t line) {
    try {
        return parse_strategy(std::string(text));
    } catch (const ConfigError& e) {
        throw DataError("line " + std::to_string(line) + ": " + e.what());
    }
}

std::vector<int> parse_order(const std::string& sequence, std::size_t line) {
    try {
        return parse_sequence(sequence);
    } catch (const ConfigError& e) {
        throw DataError("line " + std::to_string(line) + ": " + e.what());
    }
}

std::string file_stem(const char* prefix, const std::string& sequence, StrategyKind kind) {
    return std::string(prefix) + "_" + sequence + "_" + to_string(kind);
}

} // namespace

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
    if (dynamic_cast<const DataError*>(&e) || dynamic_cast<const FormatError*>(&e) ||
        dynamic_cast<const ValidationError*>(&e)) {
        return kExitData;
    }
    if (dynamic_cast<const NumericError*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) {
        return kExitNumeric;
    }
    return kExitFailure;
}

void cmd_gen_task(int task_id, std::uint64_t master_seed, int n_qubits, const fs::path& out) {
    if (task_id < 1 || task_id > kNumTasks) {
        throw ConfigError("task id " + std::to_string(task_id) + " outside 1-6");
    }
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    save_dataset(gen_task(task_id, task_seed(master_seed, task_id), n_qubits), out);
}

std::vector<fs::path> cmd_gen_all(std::uint64_t master_seed, int n_qubits, const fs::path& data_dir,
                                  std::ostream* log) {
    fs::create_directories(data_dir);
    std::vector<fs::path> written;
    for (int id = 1; id <= kNumTasks; ++id) {
        const auto path = dataset_path(data_dir, id);
        cmd_gen_task(id, master_seed, n_qubits, path);
        if (log) *log << "task " << id << " -> " << path.string() << '\n';
        written.push_back(path);
    }
    return written;
}

std::map<int, TaskDataset> load_task_datasets(const fs::path& data_dir, const std::vector<int>& task_ids) {
    std::map<int, TaskDataset> out;
    int n_qubits = -1;
    for (int id : task_ids) {
        const auto path = dataset_path(data_dir, id);
        if (!fs::exists(path)) throw DataError("dataset file " + path.string() + " does not exist");
        TaskDataset ds = load_dataset(path, id);
        const int nq = ds.train.front().state.n_qubits();
        if (n_qubits >= 0 && nq != n_qubits) {
            throw DataError("task " + std::to_string(id) + " has " + std::to_string(nq) +
                            " qubits, earlier tasks have " + std::to_string(n_qubits));
        }
        n_qubits = nq;
        out.emplace(id, std::move(ds));
    }
    return out;
}

fs::path curve_path(const fs::path& dir, const std::string& sequence, StrategyKind kind) {
    return dir / (file_stem("curve", sequence, kind) + ".csv");
}

fs::path summary_path(const fs::path& dir, const std::string& sequence, StrategyKind kind) {
    return dir / (file_stem("summary", sequence, kind) + ".csv");
}

fs::path checkpoint_path(const fs::path& dir, const std::string& sequence, StrategyKind kind) {
    return dir / (file_stem("best", sequence, kind) + ".qclp");
}

std::string format_curve_csv(const std::string& sequence, const SequenceResult& result) {
    std::string out(kCurveHeader);
    out += '\n';
    const std::string prefix = sequence + "," + to_string(result.strategy.kind) + ",";
    for (const auto& run : result.runs) {
        const std::string run_prefix = prefix + std::to_string(run.seed) + ",";
        for (const auto& p : run.curve) {
            out += run_prefix;
            out += std::to_string(p.epoch) + "," + std::to_string(p.iteration) + "," +
                   std::to_string(p.task_id) + "," + exact(p.test_accuracy) + "\n";
        }
    }
    return out;
}

std::string format_summary_csv(const std::string& sequence, const SequenceResult& result) {
    std::string out(kSummaryHeader);
    out += '\n';
    const std::string prefix = sequence + "," + to_string(result.strategy.kind) + ",";
    for (const auto& run : result.runs) {
        const int n = run.r.n_tasks();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                out += prefix + std::to_string(run.seed) + "," +
                       std::to_string(result.order[static_cast<std::size_t>(i)]) + "," +
                       std::to_string(result.order[static_cast<std::size_t>(j)]) + "," +
                       exact(run.r.at(i, j)) + "\n";
            }
        }
    }
    return out;
}

RunOutputs run_experiment(const ExperimentConfig& config, const std::map<int, TaskDataset>& datasets,
                          std::ostream* log) {
    const auto order = parse_sequence(config.sequence);
    if (config.seeds.empty()) throw ConfigError("config lists no seeds");
    for (int id : order) {
        if (!datasets.contains(id)) throw DataError("dataset for task " + std::to_string(id) + " is missing");
    }
    const int n_qubits = datasets.at(order.front()).train.front().state.n_qubits();
    const TrainingSettings settings = config.training(n_qubits);
    fs::create_directories(config.out_dir);

    RunOutputs outputs;
    for (const StrategyKind kind : config.strategies) {
        SequenceResult result =
            run_sequence(order, config.strategy(kind), settings, config.seeds, datasets);
        const auto curve = curve_path(config.out_dir, config.sequence, kind);
        const auto summary = summary_path(config.out_dir, config.sequence, kind);
        const auto checkpoint = checkpoint_path(config.out_dir, config.sequence, kind);
        write_text(curve, format_curve_csv(config.sequence, result));
        write_text(summary, format_summary_csv(config.sequence, result));
        save_checkpoint(result.runs[result.best].final_params, checkpoint);
        if (log) {
            for (std::size_t k = 0; k < result.runs.size(); ++k) {
                const auto& run = result.runs[k];
                *log << display_name(kind) << " seed " << run.seed << ": ACC " << fmt("%.4f", run.acc)
                     << " BWT " << fmt("%.4f", run.bwt) << (k == result.best ? "  (best)" : "") << '\n';
            }
        }
        outputs.files.insert(outputs.files.end(), {curve, summary, checkpoint});
        outputs.results.push_back(std::move(result));
    }
    return outputs;
}

RunOutputs cmd_run(const ExperimentConfig& config, std::ostream* log) {
    const auto order = parse_sequence(config.sequence);
    return run_experiment(config, load_task_datasets(config.data_dir, order), log);
}

StrategyRecord parse_summary_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != kSummaryHeader) {
        throw DataError("summary CSV does not start with the header '" + std::string(kSummaryHeader) + "'");
    }
    if (lines.size() == 1) throw DataError("summary CSV has no rows");
    StrategyRecord rec;
    std::vector<int> order;
    std::map<int, int> position;
    std::map<std::uint64_t, std::size_t> run_of_seed;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        const auto f = split(lines[ln], ',');
        if (f.size() != 6) {
            throw DataError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(f.size()));
        }
        const std::string sequence(f[0]);
        const StrategyKind kind = parse_kind(f[1], line_no);
        if (ln == 1) {
            rec.sequence = sequence;
            rec.kind = kind;
            order = parse_order(sequence, line_no);
            for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);
        } else if (sequence != rec.sequence || kind != rec.kind) {
            throw DataError("line " + std::to_string(line_no) + ": mixes sequences or strategies");
        }
        const auto seed = parse_field<std::uint64_t>(f[2], "seed", line_no);
        const auto learned = parse_field<int>(f[3], "task_learned", line_no);
        const auto evaluated = parse_field<int>(f[4], "task_evaluated", line_no);
        const auto accuracy = parse_field<double>(f[5], "accuracy", line_no);
        if (!position.contains(learned) || !position.contains(evaluated)) {
            throw DataError("line " + std::to_string(line_no) + ": task not in sequence " + rec.sequence);
        }
        const int i = position[learned];
        const int j = position[evaluated];
        if (j > i) throw DataError("line " + std::to_string(line_no) + ": cell above the diagonal");
        if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
            throw DataError("line " + std::to_string(line_no) + ": accuracy outside [0, 1]");
        }
        auto [it, fresh] = run_of_seed.try_emplace(seed, rec.runs.size());
        if (fresh) {
            RunRecord run;
            run.seed = seed;
            run.r = AccuracyMatrix(static_cast<int>(order.size()));
            rec.runs.push_back(std::move(run));
        }
        auto& r = rec.runs[it->second].r;
        if (r.has(i, j)) throw DataError("line " + std::to_string(line_no) + ": duplicate cell");
        r.set(i, j, accuracy);
    }
    const int n = static_cast<int>(order.size());
    for (auto& run : rec.runs) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                if (!run.r.has(i, j)) {
                    throw DataError("seed " + std::to_string(run.seed) + ": cell (" +
                                    std::to_string(order[static_cast<std::size_t>(i)]) + ", " +
                                    std::to_string(order[static_cast<std::size_t>(j)]) + ") missing");
                }
            }
        }
        run.acc = acc(run.r);
        run.bwt = n >= 2 ? bwt(run.r) : std::numeric_limits<double>::quiet_NaN();
    }
    for (std::size_t k = 1; k < rec.runs.size(); ++k) {
        if (rec.runs[k].acc > rec.runs[rec.best].acc) rec.best = k;
    }
    return rec;
}

std::vector<StrategyRecord> read_summaries(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("results directory " + dir.string() + " does not exist");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("summary_") && name.ends_with(".csv")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<StrategyRecord> records;
    for (const auto& f : files) {
        try {
            records.push_back(parse_summary_csv(read_text(f)));
        } catch (const DataError& e) {
            throw DataError(f.string() + ": " + e.what());
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const StrategyRecord& a, const StrategyRecord& b) {
        if (a.sequence != b.sequence) return a.sequence < b.sequence;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    return records;
}

std::string format_report(const std::vector<StrategyRecord>& records) {
    constexpr StrategyKind kinds[] = {StrategyKind::Plain, StrategyKind::Ewc, StrategyKind::Gem};
    std::vector<std::string> sequences;
    for (const auto& r : records) {
        if (std::find(sequences.begin(), sequences.end(), r.sequence) == sequences.end()) {
            sequences.push_back(r.sequence);
        }
    }
    auto find = [&](const std::string& seq, StrategyKind kind) -> const StrategyRecord* {
        for (const auto& r : records) {
            if (r.sequence == seq && r.kind == kind) return &r;
        }
        return nullptr;
    };
    auto cell = [](double x) {
        char buf[16];
        if (std::isnan(x)) {
            std::snprintf(buf, sizeof buf, "%10s", "-");
        } else {
            std::snprintf(buf, sizeof buf, "%10.4f", x);
        }
        return std::string(buf);
    };

    std::string out = "sequence  ";
    for (auto kind : kinds) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%10s%10s", (display_name(kind) + " ACC").c_str(),
                      (display_name(kind) + " BWT").c_str());
        out += buf;
    }
    out += '\n';
    for (const auto& seq : sequences) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%-10s", seq.c_str());
        out += buf;
        for (auto kind : kinds) {
            const auto* r = find(seq, kind);
            if (r == nullptr) {
                out += cell(std::nan("")) + cell(std::nan(""));
            } else {
                const auto& best = r->runs[r->best];
                out += cell(best.acc) + cell(best.bwt);
            }
        }
        out += '\n';
    }
    out += "\nall runs (* = reported)\n";
    for (const auto& r : records) {
        out += r.sequence + " " + display_name(r.kind) + "\n";
        for (std::size_t k = 0; k < r.runs.size(); ++k) {
            const auto& run = r.runs[k];
            char buf[96];
            std::snprintf(buf, sizeof buf, "  %c seed %-20llu ACC %.4f  BWT %s\n", k == r.best ? '*' : ' ',
                          static_cast<unsigned long long>(run.seed), run.acc,
                          std::isnan(run.bwt) ? "-" : fmt("%+.4f", run.bwt).c_str());
            out += buf;
        }
    }
    return out;
}

std::string cmd_report(const fs::path& in_dir) {
    const auto records = read_summaries(in_dir);
    if (records.empty()) throw DataError("no summary_*.csv files in " + in_dir.string());
    return format_report(records);
}

std::vector<CurveRow> parse_curve_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != kCurveHeader) {
        throw DataError("curve CSV does not start with the header '" + std::string(kCurveHeader) + "'");
    }
    std::vector<CurveRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const std::size_t line_no = ln + 1;
        const auto f = split(lines[ln], ',');
        if (f.size() != 7) {
            throw DataError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                            std::to_string(f.size()));
        }
        CurveRow row;
        row.sequence = std::string(f[0]);
        row.kind = parse_kind(f[1], line_no);
        row.seed = parse_field<std::uint64_t>(f[2], "seed", line_no);
        row.point.epoch = parse_field<int>(f[3], "epoch", line_no);
        row.point.iteration = parse_field<int>(f[4], "iteration", line_no);
        row.point.task_id = parse_field<int>(f[5], "task_id", line_no);
        row.point.test_accuracy = parse_field<double>(f[6], "test_accuracy", line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_curve_svg(const std::vector<CurvePoint>& points, const std::string& title) {
    constexpr double kWidth = 800, kHeight = 500;
    constexpr double kLeft = 60, kRight = 110, kTop = 40, kBottom = 50;
    constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;
    static const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    int max_iter = 1;
    std::map<int, int> epoch_end;
    std::map<int, std::vector<CurvePoint>> by_task;
    for (const auto& p : points) {
        max_iter = std::max(max_iter, p.iteration);
        epoch_end[p.epoch] = std::max(epoch_end[p.epoch], p.iteration);
        by_task[p.task_id].push_back(p);
    }
    auto x_of = [&](double it) { return kLeft + kPlotW * it / max_iter; };
    auto y_of = [&](double a) { return kTop + kPlotH * (1.0 - a); };
    auto num = [](double v) { return fmt("%.2f", v); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double a = 0.25 * k;
        const std::string y = num(y_of(a));
        s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + y + "\" x2=\"" + num(kLeft + kPlotW) + "\" y2=\"" + y +
             "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + y +
             "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt("%.2f", a) + "</text>\n";
    }
    for (auto it = epoch_end.begin(); it != epoch_end.end(); ++it) {
        if (std::next(it) == epoch_end.end()) break;
        const std::string x = num(x_of(it->second));
        s += "<line x1=\"" + x + "\" y1=\"" + num(kTop) + "\" x2=\"" + x + "\" y2=\"" + num(kTop + kPlotH) +
             "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    }
    s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kPlotW) + "\" height=\"" +
         num(kPlotH) + "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">iteration</text>\n";
    s += "<text x=\"16\" y=\"" + num(kTop + kPlotH / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + kPlotH / 2) + ")\" font-family=\"sans-serif\" font-size=\"13\">test accuracy</text>\n";
    s += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kTop + kPlotH + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">0</text>\n";
    s += "<text x=\"" + num(kLeft + kPlotW) + "\" y=\"" + num(kTop + kPlotH + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + std::to_string(max_iter) +
         "</text>\n";

    int legend = 0;
    for (auto& [task_id, pts] : by_task) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const CurvePoint& a, const CurvePoint& b) { return a.iteration < b.iteration; });
        const char* color = kColors[static_cast<std::size_t>(legend) % std::size(kColors)];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (k > 0) s += ' ';
            s += num(x_of(pts[k].iteration)) + "," + num(y_of(pts[k].test_accuracy));
        }
        s += "\"/>\n";
        const double ly = kTop + 12 + 20.0 * legend;
        const double lx = kLeft + kPlotW + 15;
        s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
             "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) +
             "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"12\">task " +
             std::to_string(task_id) + "</text>\n";
        ++legend;
    }
    s += "</svg>\n";
    return s;
}

std::vector<fs::path> cmd_plot(const fs::path& in_dir, const fs::path& out_dir) {
    const auto records = read_summaries(in_dir);
    if (records.empty()) throw DataError("no summary_*.csv files in " + in_dir.string());
    fs::create_directories(out_dir);
    std::vector<fs::path> written;
    for (const auto& rec : records) {
        const auto source = curve_path(in_dir, rec.sequence, rec.kind);
        std::vector<CurveRow> rows;
        try {
            rows = parse_curve_csv(read_text(source));
        } catch (const DataError& e) {
            throw DataError(source.string() + ": " + e.what());
        }
        const std::uint64_t seed = rec.runs[rec.best].seed;
        std::vector<CurvePoint> points;
        for (const auto& row : rows) {
            if (row.seed == seed && row.sequence == rec.sequence && row.kind == rec.kind) {
                points.push_back(row.point);
            }
        }
        const std::string title = display_name(rec.kind) + ", sequence " + rec.sequence + ", seed " +
                                  std::to_string(seed);
        const auto target = out_dir / (file_stem("curve", rec.sequence, rec.kind) + ".svg");
        write_text(target, render_curve_svg(points, title));
        written.push_back(target);
    }
    return written;
}

} // namespace qcl
