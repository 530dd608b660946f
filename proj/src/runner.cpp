#include "gmhd/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "gmhd/checkpoint.hpp"

namespace gmhd {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MhdState starting_state(const RunConfig& cfg, const GridPtr& grid) {
    if (cfg.resume.empty()) return make_initial_condition(cfg.ic, grid);
    CheckpointData ck = load_checkpoint(cfg.resume);
    if (ck.params.n != cfg.params.n || ck.params.nu != cfg.params.nu ||
        ck.params.eta != cfg.params.eta || ck.params.alpha != cfg.params.alpha ||
        ck.params.beta != cfg.params.beta)
        throw BadSpecError("run: checkpoint parameters disagree with the configuration");
    return std::move(ck.state);
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    cfg.validate();
    const auto wall_start = std::chrono::steady_clock::now();

    GridPtr grid = make_grid(cfg.params.n);
    MhdState state = starting_state(cfg, grid);
    const DiagnosticsConfig dcfg = diagnostics_config_for(cfg.params);
    const IfRk4Stepper stepper(grid, cfg.params);

    std::filesystem::create_directories(cfg.output_dir);
    const std::string csv_path = cfg.output_dir + "/diagnostics.csv";
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw IoError("run: cannot open '" + csv_path + "'");
    csv << diagnostics_csv_header() << "\n";

    std::vector<DiagnosticsRecord> history;
    auto take_sample = [&] {
        history.push_back(sample(state, cfg.params, dcfg));
        csv << to_csv_row(history.back()) << "\n";
        csv.flush();
        if (!csv) throw IoError("run: write failure on '" + csv_path + "'");
    };

    const double t_end = cfg.policy.t_end;
    const double end_eps = 1e-12 * std::max(1.0, std::abs(t_end));
    double next_sample = state.time() + cfg.sample_interval;
    double next_checkpoint = state.time() + cfg.checkpoint_interval;

    take_sample();
    BlowupVerdict blowup = detect_blowup(history, state);

    long long steps = 0;
    while (!blowup.triggered && state.time() < t_end - end_eps &&
           steps < cfg.policy.max_steps) {
        double dt = (cfg.policy.dt_mode == DtMode::Fixed) ? cfg.policy.dt_fixed
                                                          : cfl_dt(state, cfg.policy);
        dt = std::min(dt, t_end - state.time());
        state = stepper.step(state, dt);
        ++steps;

        const bool at_end = state.time() >= t_end - end_eps;
        if (state.time() >= next_sample - 1e-9 || at_end) {
            take_sample();
            while (next_sample <= state.time() + 1e-9) next_sample += cfg.sample_interval;
            blowup = detect_blowup(history, state);
        }
        if (cfg.checkpoint_interval > 0.0 && state.time() >= next_checkpoint - 1e-9) {
            save_checkpoint(state, cfg.params,
                            cfg.output_dir + "/checkpoint_" + std::to_string(steps) + ".bin");
            while (next_checkpoint <= state.time() + 1e-9)
                next_checkpoint += cfg.checkpoint_interval;
        }
    }

    if (history.back().time < state.time() - end_eps) {
        take_sample();
        blowup = detect_blowup(history, state);
    }

    return {std::move(state), std::move(history), blowup, classify(cfg.params.alpha, cfg.params.beta),
            steps, seconds_since(wall_start)};
}

int effective_parallelism(int max_parallel) {
    const char* env = std::getenv("GMHD2D_THREADS");
    if (env == nullptr || *env == '\0') return max_parallel;
    const int cap = std::atoi(env);
    if (cap < 1) return 1;
    return std::min(max_parallel, cap);
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
    spec.validate();

    struct Task {
        std::size_t index;
        std::size_t ia, ib;
        double alpha, beta;
    };
    std::vector<Task> tasks;
    tasks.reserve(spec.alpha_values.size() * spec.beta_values.size());
    for (std::size_t ia = 0; ia < spec.alpha_values.size(); ++ia)
        for (std::size_t ib = 0; ib < spec.beta_values.size(); ++ib)
            tasks.push_back(
                {tasks.size(), ia, ib, spec.alpha_values[ia], spec.beta_values[ib]});

    std::vector<SweepRow> rows(tasks.size());
    auto run_one = [&](const Task& task) {
        SweepRow row;
        row.alpha = task.alpha;
        row.beta = task.beta;
        const RegimeVerdict regime = classify(task.alpha, task.beta);
        row.verdict = to_string(regime.source);
        row.margin = regime.margin;

        RunConfig cfg = spec.base;
        cfg.params.alpha = task.alpha;
        cfg.params.beta = task.beta;
        cfg.output_dir = spec.base.output_dir + "/pair_" + std::to_string(task.ia) + "_" +
                         std::to_string(task.ib);
        const auto wall_start = std::chrono::steady_clock::now();
        try {
            RunResult r = run(cfg);
            for (const auto& rec : r.history) {
                row.max_X = std::max(row.max_X, rec.X);
                row.max_Y = std::max(row.max_Y, rec.Y);
            }
            row.blowup = r.blowup.triggered ? to_string(r.blowup.reason) : "none";
            row.wall_seconds = r.wall_seconds;
        } catch (const std::exception& e) {
            row.failed = true;
            row.blowup = "error";
            row.message = e.what();
            row.wall_seconds = seconds_since(wall_start);
        }
        rows[task.index] = std::move(row);
    };

    const int workers = std::min<int>(effective_parallelism(spec.max_parallel),
                                      static_cast<int>(tasks.size()));
    if (workers <= 1) {
        for (const auto& task : tasks) run_one(task);
    } else {
        std::atomic<std::size_t> next{0};
        auto drain = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                run_one(tasks[t]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_summary_header() {
    return "alpha,beta,verdict,margin,max_X,max_Y,blowup,wall_seconds";
}

std::string to_csv_row(const SweepRow& row) {
    return csv_double(row.alpha) + "," + csv_double(row.beta) + "," + row.verdict + "," +
           csv_double(row.margin) + "," + csv_double(row.max_X) + "," + csv_double(row.max_Y) +
           "," + row.blowup + "," + csv_double(row.wall_seconds);
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows) {
    std::string out = sweep_summary_header() + "\n";
    for (const auto& row : rows) out += to_csv_row(row) + "\n";
    return out;
}

}  // namespace gmhd
