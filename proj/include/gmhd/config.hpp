#pragma once

// Run and sweep configuration, parsed from a flat `key = value` text format
// (UTF-8, `#` starts a comment, blank lines ignored).

#include <string>
#include <vector>

#include "gmhd/initial_conditions.hpp"
#include "gmhd/timestepper.hpp"

namespace gmhd {

struct RunConfig {
    SimParams params;
    StepPolicy policy;
    InitialCondition ic = OrszagTangIC{};
    double sample_interval = 0.05;
    std::string output_dir = "out";
    // Checkpoint cadence in simulation time; 0 disables checkpointing.
    double checkpoint_interval = 0.0;
    // Path of a checkpoint to resume from; empty starts at t = 0.
    std::string resume;

    void validate() const;
};

struct SweepSpec {
    std::vector<double> alpha_values;
    std::vector<double> beta_values;
    RunConfig base;
    int max_parallel = 1;

    void validate() const;
};

// Accepted keys: nu, eta, alpha, beta, n, dt_mode (fixed|cfl), dt, cfl_number,
// t_end, max_steps, sample_interval, output_dir, checkpoint_interval, resume,
// ic (orszag_tang|single_mode|random_smooth) and the ic.* fields of the chosen
// kind (axis, wavenumber, amplitude, target, seed, spectral_slope, cutoff).
// Unknown keys are rejected. The result is validated before being returned.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace gmhd
