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
#include <exception>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/config.hpp"
#include "qcl/continual.hpp"
#include "qcl/datasets.hpp"

namespace qcl {

inline constexpr std::uint64_t kDefaultMasterSeed = 7;

inline constexpr std::string_view kCurveHeader =
    "sequence,strategy,seed,epoch,iteration,task_id,test_accuracy";
inline constexpr std::string_view kSummaryHeader =
    "sequence,strategy,seed,task_learned,task_evaluated,accuracy";

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitData = 3,
    kExitNumeric = 4,
};

/// Maps an exception to its exit code (config 2, data/format 3, numeric/convergence 4, else 1).
[[nodiscard]] int exit_code_for(const std::exception& e) noexcept;

// Generation ---------------------------------------------------------------

/// Generates task `task_id` from task_seed(master_seed, task_id) and writes it to `out`.
void cmd_gen_task(int task_id, std::uint64_t master_seed, int n_qubits,
                  const std::filesystem::path& out);

/// Writes all six task files into `data_dir` (created if missing).
std::vector<std::filesystem::path> cmd_gen_all(std::uint64_t master_seed, int n_qubits,
                                               const std::filesystem::path& data_dir,
                                               std::ostream* log = nullptr);

/// Loads the listed tasks from `data_dir`. DataError if a file is missing or
/// the tasks disagree on the qubit count.
[[nodiscard]] std::map<int, TaskDataset> load_task_datasets(const std::filesystem::path& data_dir,
                                                            const std::vector<int>& task_ids);

// Running ------------------------------------------------------------------

[[nodiscard]] std::filesystem::path curve_path(const std::filesystem::path& dir,
                                               const std::string& sequence, StrategyKind kind);
[[nodiscard]] std::filesystem::path summary_path(const std::filesystem::path& dir,
                                                 const std::string& sequence, StrategyKind kind);
[[nodiscard]] std::filesystem::path checkpoint_path(const std::filesystem::path& dir,
                                                    const std::string& sequence, StrategyKind kind);

/// Per-iteration curve rows of every run, in seed order.
[[nodiscard]] std::string format_curve_csv(const std::string& sequence, const SequenceResult& result);

/// Lower-triangular R of every run, cells in (task_learned, task_evaluated) position order.
[[nodiscard]] std::string format_summary_csv(const std::string& sequence,
                                             const SequenceResult& result);

struct RunOutputs {
    std::vector<SequenceResult> results;  // one per configured strategy
    std::vector<std::filesystem::path> files;
};

/// Runs every configured strategy on already loaded datasets and writes the
/// curve CSV, summary CSV and best-run checkpoint per strategy into out_dir.
RunOutputs run_experiment(const ExperimentConfig& config,
                          const std::map<int, TaskDataset>& datasets,
                          std::ostream* log = nullptr);

/// Loads the datasets named by the config and calls run_experiment.
RunOutputs cmd_run(const ExperimentConfig& config, std::ostream* log = nullptr);

// Reporting ----------------------------------------------------------------

struct RunRecord {
    std::uint64_t seed = 0;
    AccuracyMatrix r{1};
    double acc = 0.0;
    double bwt = 0.0;  // NaN for single-task sequences
};

/// ACC/BWT of one (sequence, strategy) pair rebuilt from its summary CSV.
struct StrategyRecord {
    std::string sequence;
    StrategyKind kind = StrategyKind::Plain;
    std::vector<RunRecord> runs;
    std::size_t best = 0;  // highest ACC, first on ties
};

/// Parses one summary CSV. DataError on any structural problem.
[[nodiscard]] StrategyRecord parse_summary_csv(std::string_view text);

/// Every summary_*.csv in `dir`, ordered by sequence and then strategy.
[[nodiscard]] std::vector<StrategyRecord> read_summaries(const std::filesystem::path& dir);

/// Table with one row per sequence and Plain/EWC/GEM × ACC/BWT columns,
/// followed by the per-seed values of every run.
[[nodiscard]] std::string format_report(const std::vector<StrategyRecord>& records);

/// read_summaries + format_report. DataError if `dir` holds no summaries.
[[nodiscard]] std::string cmd_report(const std::filesystem::path& in_dir);

// Plotting -----------------------------------------------------------------

struct CurveRow {
    std::string sequence;
    StrategyKind kind = StrategyKind::Plain;
    std::uint64_t seed = 0;
    CurvePoint point;
};

[[nodiscard]] std::vector<CurveRow> parse_curve_csv(std::string_view text);

/// 800×500 SVG with one polyline per task id; x = iteration, y = test accuracy.
[[nodiscard]] std::string render_curve_svg(const std::vector<CurvePoint>& points,
                                           const std::string& title);

/// One SVG per (sequence, strategy) found in `in_dir`, plotting the best run.
std::vector<std::filesystem::path> cmd_plot(const std::filesystem::path& in_dir,
                                            const std::filesystem::path& out_dir);

} // namespace qcl
