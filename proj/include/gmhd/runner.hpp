#pragma once

// Trajectory and parameter-sweep drivers: step to t_end or a blow-up trigger,
// stream diagnostics to CSV, write checkpoints on a cadence, and aggregate
// sweep rows in deterministic alpha-major order.

#include <string>
#include <vector>

#include "gmhd/config.hpp"
#include "gmhd/regime.hpp"
#include "gmhd/timestepper.hpp"

namespace gmhd {

struct RunResult {
    MhdState final_state;
    std::vector<DiagnosticsRecord> history;
    BlowupVerdict blowup;
    RegimeVerdict regime;
    long long steps = 0;
    double wall_seconds = 0.0;
};

// Writes <output_dir>/diagnostics.csv row by row (flushed after each sample)
// and checkpoint_<step>.bin on the configured cadence.  Resumes from
// cfg.resume when set; the checkpoint must agree with cfg.params.
RunResult run(const RunConfig& cfg);

struct SweepRow {
    double alpha = 0.0;
    double beta = 0.0;
    std::string verdict;  // regime source name
    double margin = 0.0;
    double max_X = 0.0;
    double max_Y = 0.0;
    std::string blowup;  // "none", a trigger reason, or "error"
    double wall_seconds = 0.0;
    bool failed = false;
    std::string message;  // diagnostic text when failed
};

// Runs every (alpha, beta) pair of the sweep, at most
// effective_parallelism(spec.max_parallel) runs at a time.  Per-run outputs
// land in <output_dir>/pair_<i>_<j>; failures are recorded in the row and the
// sweep continues.
std::vector<SweepRow> sweep(const SweepSpec& spec);

std::string sweep_summary_header();
std::string to_csv_row(const SweepRow& row);
std::string sweep_summary_csv(const std::vector<SweepRow>& rows);

// spec.max_parallel capped by the GMHD2D_THREADS environment variable.
int effective_parallelism(int max_parallel);

}  // namespace gmhd
