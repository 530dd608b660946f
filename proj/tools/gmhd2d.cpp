// gmhd2d: pseudo-spectral simulator and diagnostic toolkit for the 2D
// generalized MHD system with fractional dissipation on the periodic box.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmhd/checkpoint.hpp"
#include "gmhd/runner.hpp"
#include "gmhd/verify.hpp"

namespace {

int cmd_run(const std::string& config_path) {
    const gmhd::RunConfig cfg = gmhd::parse_config_file(config_path);
    const gmhd::RunResult r = gmhd::run(cfg);
    nlohmann::json summary{
        {"final_time", r.final_state.time()},
        {"steps", r.steps},
        {"samples", r.history.size()},
        {"blowup", r.blowup.triggered ? gmhd::to_string(r.blowup.reason) : "none"},
        {"regime", gmhd::to_string(r.regime.source)},
        {"margin", r.regime.margin},
        {"wall_seconds", r.wall_seconds},
        {"output_dir", cfg.output_dir},
    };
    std::cout << summary.dump() << "\n";
    return r.blowup.triggered ? 2 : 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& alphas,
              const std::vector<double>& betas) {
    gmhd::SweepSpec spec;
    spec.base = gmhd::parse_config_file(config_path);
    spec.alpha_values = alphas;
    spec.beta_values = betas;
    spec.max_parallel = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const auto rows = gmhd::sweep(spec);

    const std::string path = spec.base.output_dir + "/sweep_summary.csv";
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw gmhd::IoError("sweep: cannot open '" + path + "'");
    out << gmhd::sweep_summary_csv(rows);
    out.flush();
    if (!out) throw gmhd::IoError("sweep: write failure on '" + path + "'");

    std::cout << gmhd::sweep_summary_csv(rows);
    for (const auto& row : rows)
        if (row.failed)
            std::cerr << "run (" << row.alpha << ", " << row.beta << ") failed: " << row.message
                      << "\n";
    bool any_failed = false;
    for (const auto& row : rows) any_failed = any_failed || row.failed;
    return any_failed ? 2 : 0;
}

int cmd_classify(double alpha, double beta) {
    const gmhd::RegimeVerdict v = gmhd::classify(alpha, beta);
    nlohmann::json j{
        {"alpha", alpha},
        {"beta", beta},
        {"covered", v.covered},
        {"source", gmhd::to_string(v.source)},
        {"margin", v.margin},
        {"notes", v.notes},
    };
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_bounds_table(int resolution) {
    std::cout << gmhd::bounds_csv_header() << "\n";
    for (const auto& row : gmhd::region_boundary_table(resolution))
        std::cout << gmhd::to_csv_row(row) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D generalized MHD pseudo-spectral toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Integrate one configuration");
    run_cmd->add_option("--config", config_path, "configuration file")->required();

    std::string sweep_config;
    std::vector<double> alphas, betas;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an (alpha, beta) parameter sweep");
    sweep_cmd->add_option("--config", sweep_config, "base configuration file")->required();
    sweep_cmd->add_option("--alphas", alphas, "comma-separated alpha values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--betas", betas, "comma-separated beta values")
        ->required()
        ->delimiter(',');

    double alpha = 0.0, beta = 0.0;
    auto* classify_cmd =
        app.add_subcommand("classify", "Report the global-regularity regime of (alpha, beta)");
    classify_cmd->add_option("--alpha", alpha, "velocity dissipation exponent")->required();
    classify_cmd->add_option("--beta", beta, "magnetic diffusion exponent")->required();

    std::uint64_t seed = 1;
    int verify_n = 32;
    auto* verify_cmd =
        app.add_subcommand("verify", "Run the spectral property and inequality suite");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--n", verify_n, "grid size");

    int resolution = 101;
    auto* bounds_cmd = app.add_subcommand(
        "bounds-table", "Tabulate the diffusion thresholds over alpha in [0, 1/3]");
    bounds_cmd->add_option("--resolution", resolution, "number of alpha samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_config, alphas, betas);
        if (classify_cmd->parsed()) return cmd_classify(alpha, beta);
        if (verify_cmd->parsed()) {
            const int failures = gmhd::run_verification(seed, verify_n, std::cout);
            return failures == 0 ? 0 : 1;
        }
        if (bounds_cmd->parsed()) return cmd_bounds_table(resolution);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
