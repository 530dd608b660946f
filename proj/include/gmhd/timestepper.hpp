#pragma once

// Time integration: fourth-order Runge-Kutta on integrating-factor
// transformed variables, so the fractional dissipation is advanced by exact
// per-mode exponentials and only the nonlinear terms see the RK stages.
// Also: CFL-based step control and the numerical blow-up monitor.

#include "gmhd/diagnostics.hpp"
#include "gmhd/mhd.hpp"

namespace gmhd {

enum class DtMode { Fixed, CflAdaptive };

struct StepPolicy {
    DtMode dt_mode = DtMode::Fixed;
    double dt_fixed = 1e-3;    // the step in Fixed mode; an upper cap in CflAdaptive mode
    double cfl_number = 0.5;
    double t_end = 5.0;
    long max_steps = 1000000;

    void validate() const;
};

enum class BlowupReason { None, SpectrumTail, NormGrowth, NonFinite };

std::string to_string(BlowupReason r);

struct BlowupVerdict {
    bool triggered = false;
    BlowupReason reason = BlowupReason::None;
    double time = 0.0;
    DiagnosticsRecord details;
};

struct BlowupThresholds {
    double tail_fraction = 0.01;      // spectrum_tail level that flags under-resolution
    double norm_growth_factor = 1e6;  // X(t) growth over the run that flags explosion
};

class IfRk4Stepper {
  public:
    IfRk4Stepper(GridPtr grid, SimParams params);
    MhdState step(const MhdState& s, double dt) const;

  private:
    void refresh_factors(double dt) const;

    GridPtr grid_;
    SimParams params_;
    std::vector<double> sym_w_, sym_j_;  // nu|k|^{2 alpha}, eta|k|^{2 beta}
    // Exponential factors for the most recent dt; a stepper serves one
    // trajectory at a time, so the cache needs no locking.
    mutable double cached_dt_ = -1.0;
    mutable std::vector<double> ew_half_, ew_full_, ej_half_, ej_full_;
};

// One-shot convenience wrapper around IfRk4Stepper.
MhdState step(const MhdState& s, const SimParams& params, double dt);

// Same scheme for the velocity-form cross-check.
class VelocityIfRk4Stepper {
  public:
    VelocityIfRk4Stepper(GridPtr grid, SimParams params);
    VelocityState step(const VelocityState& s, double dt) const;

  private:
    void refresh_factors(double dt) const;

    GridPtr grid_;
    SimParams params_;
    std::vector<double> sym_u_, sym_b_;
    mutable double cached_dt_ = -1.0;
    mutable std::vector<double> eu_half_, eu_full_, eb_half_, eb_full_;
};

// cfl_number * dx / max(|u|_inf + |b|_inf, 1e-8), capped at dt_fixed.
double cfl_dt(const MhdState& s, const StepPolicy& policy);

BlowupVerdict detect_blowup(const std::vector<DiagnosticsRecord>& history,
                            const MhdState& s, const BlowupThresholds& thresholds = {});

}  // namespace gmhd
