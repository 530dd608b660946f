#include "gmhd/timestepper.hpp"

#include <array>
#include <cmath>

namespace gmhd {
namespace {

using cvec = std::vector<std::complex<double>>;

std::vector<double> symbol_table(const SpectralGrid& g, double coef, double order) {
    std::vector<double> sym(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        sym[i] = coef * std::pow(g.k_squared(i), order);
    return sym;
}

void exp_tables(const std::vector<double>& sym, double dt, std::vector<double>& half,
                std::vector<double>& full) {
    half.resize(sym.size());
    full.resize(sym.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
        half[i] = std::exp(-0.5 * dt * sym[i]);
        full[i] = half[i] * half[i];
    }
}

// Classical RK4 on the integrating-factor transform: with E the half-step
// decay factor, the stage states are
//   s2 = E (y + dt/2 N1),  s3 = E y + dt/2 N2,  s4 = E^2 y + dt E N3,
// and the update is
//   y' = E^2 y + dt/6 (E^2 N1 + 2 E (N2 + N3) + N4).
struct Rk4Buffers {
    cvec n1, n2, n3, n4;
};

cvec stage2(const cvec& y, const cvec& n1, const std::vector<double>& eh, double dt) {
    cvec s(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) s[i] = eh[i] * (y[i] + 0.5 * dt * n1[i]);
    return s;
}

cvec stage3(const cvec& y, const cvec& n2, const std::vector<double>& eh, double dt) {
    cvec s(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) s[i] = eh[i] * y[i] + 0.5 * dt * n2[i];
    return s;
}

cvec stage4(const cvec& y, const cvec& n3, const std::vector<double>& eh,
            const std::vector<double>& ef, double dt) {
    cvec s(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) s[i] = ef[i] * y[i] + dt * eh[i] * n3[i];
    return s;
}

cvec combine(const cvec& y, const Rk4Buffers& n, const std::vector<double>& eh,
             const std::vector<double>& ef, double dt) {
    cvec out(y.size());
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = ef[i] * y[i] +
                 w * (ef[i] * n.n1[i] + 2.0 * eh[i] * (n.n2[i] + n.n3[i]) + n.n4[i]);
    return out;
}

void require_finite(const cvec& c, const char* who) {
    for (const auto& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteStateError(std::string(who) + ": non-finite coefficient");
}

bool all_finite(const cvec& c) {
    for (const auto& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace

void StepPolicy::validate() const {
    if (!(dt_fixed > 0.0)) throw BadSpecError("dt must be positive");
    if (!(cfl_number > 0.0 && cfl_number <= 1.0))
        throw BadSpecError("cfl_number must lie in (0, 1]");
    if (!(t_end > 0.0)) throw BadSpecError("t_end must be positive");
    if (max_steps < 1) throw BadSpecError("max_steps must be at least 1");
}

std::string to_string(BlowupReason r) {
    switch (r) {
        case BlowupReason::SpectrumTail: return "SpectrumTail";
        case BlowupReason::NormGrowth: return "NormGrowth";
        case BlowupReason::NonFinite: return "NonFinite";
        default: return "none";
    }
}

IfRk4Stepper::IfRk4Stepper(GridPtr grid, SimParams params)
    : grid_(std::move(grid)), params_(params) {
    params_.validate();
    sym_w_ = symbol_table(*grid_, params_.nu, params_.alpha);
    sym_j_ = symbol_table(*grid_, params_.eta, params_.beta);
}

void IfRk4Stepper::refresh_factors(double dt) const {
    if (dt == cached_dt_) return;
    exp_tables(sym_w_, dt, ew_half_, ew_full_);
    exp_tables(sym_j_, dt, ej_half_, ej_full_);
    cached_dt_ = dt;
}

MhdState IfRk4Stepper::step(const MhdState& s, double dt) const {
    if (!(dt > 0.0)) throw BadSpecError("step: dt must be positive");
    refresh_factors(dt);
    const cvec& w = s.w().spectral();
    const cvec& j = s.j().spectral();
    const double t = s.time();
    const SimParams zero_visc = [this] {
        SimParams p = params_;
        p.nu = p.eta = 0.0;
        return p;
    }();

    auto nonlinear = [&](const MhdState& st, cvec& nw, cvec& nj) {
        Tendency td = rhs_vorticity_form(st, zero_visc);
        nw = td.dw_nonlinear.spectral();
        nj = td.dj_nonlinear.spectral();
    };

    auto make_stage = [this](cvec ws, cvec js, double time) {
        require_finite(ws, "step");
        require_finite(js, "step");
        return MhdState::from_vorticity(ScalarField::from_spectral(grid_, std::move(ws)),
                                        ScalarField::from_spectral(grid_, std::move(js)),
                                        time);
    };

    Rk4Buffers nw, nj;
    nonlinear(s, nw.n1, nj.n1);

    MhdState s2 = make_stage(stage2(w, nw.n1, ew_half_, dt),
                             stage2(j, nj.n1, ej_half_, dt), t + 0.5 * dt);
    nonlinear(s2, nw.n2, nj.n2);

    MhdState s3 = make_stage(stage3(w, nw.n2, ew_half_, dt),
                             stage3(j, nj.n2, ej_half_, dt), t + 0.5 * dt);
    nonlinear(s3, nw.n3, nj.n3);

    MhdState s4 = make_stage(stage4(w, nw.n3, ew_half_, ew_full_, dt),
                             stage4(j, nj.n3, ej_half_, ej_full_, dt), t + dt);
    nonlinear(s4, nw.n4, nj.n4);

    cvec w_new = combine(w, nw, ew_half_, ew_full_, dt);
    cvec j_new = combine(j, nj, ej_half_, ej_full_, dt);
    require_finite(w_new, "step");
    require_finite(j_new, "step");

    return MhdState::from_vorticity(ScalarField::from_spectral(grid_, std::move(w_new)),
                                    ScalarField::from_spectral(grid_, std::move(j_new)),
                                    t + dt);
}

MhdState step(const MhdState& s, const SimParams& params, double dt) {
    return IfRk4Stepper(s.grid(), params).step(s, dt);
}

VelocityIfRk4Stepper::VelocityIfRk4Stepper(GridPtr grid, SimParams params)
    : grid_(std::move(grid)), params_(params) {
    params_.validate();
    sym_u_ = symbol_table(*grid_, params_.nu, params_.alpha);
    sym_b_ = symbol_table(*grid_, params_.eta, params_.beta);
}

void VelocityIfRk4Stepper::refresh_factors(double dt) const {
    if (dt == cached_dt_) return;
    exp_tables(sym_u_, dt, eu_half_, eu_full_);
    exp_tables(sym_b_, dt, eb_half_, eb_full_);
    cached_dt_ = dt;
}

VelocityState VelocityIfRk4Stepper::step(const VelocityState& s, double dt) const {
    if (!(dt > 0.0)) throw BadSpecError("step: dt must be positive");
    refresh_factors(dt);
    const SimParams zero_visc = [this] {
        SimParams p = params_;
        p.nu = p.eta = 0.0;
        return p;
    }();

    std::array<cvec, 4> y = {spectral_values(s.u.x), spectral_values(s.u.y),
                             spectral_values(s.b.x), spectral_values(s.b.y)};
    const std::vector<double>* half[4] = {&eu_half_, &eu_half_, &eb_half_, &eb_half_};
    const std::vector<double>* full[4] = {&eu_full_, &eu_full_, &eb_full_, &eb_full_};

    auto nonlinear = [&](const std::array<cvec, 4>& c, double time,
                         std::array<cvec, 4>& n) {
        VelocityState st{{ScalarField::from_spectral(grid_, c[0]),
                          ScalarField::from_spectral(grid_, c[1])},
                         {ScalarField::from_spectral(grid_, c[2]),
                          ScalarField::from_spectral(grid_, c[3])},
                         time};
        VelocityTendency td = rhs_velocity_form(st, zero_visc);
        n = {td.du_nonlinear.x.spectral(), td.du_nonlinear.y.spectral(),
             td.db_nonlinear.x.spectral(), td.db_nonlinear.y.spectral()};
    };

    std::array<Rk4Buffers, 4> n;
    std::array<cvec, 4> stage;

    std::array<cvec, 4> n1;
    nonlinear(y, s.time, n1);
    for (int c = 0; c < 4; ++c) {
        n[c].n1 = std::move(n1[c]);
        stage[c] = stage2(y[c], n[c].n1, *half[c], dt);
        require_finite(stage[c], "step");
    }
    std::array<cvec, 4> n2;
    nonlinear(stage, s.time + 0.5 * dt, n2);
    for (int c = 0; c < 4; ++c) {
        n[c].n2 = std::move(n2[c]);
        stage[c] = stage3(y[c], n[c].n2, *half[c], dt);
        require_finite(stage[c], "step");
    }
    std::array<cvec, 4> n3;
    nonlinear(stage, s.time + 0.5 * dt, n3);
    for (int c = 0; c < 4; ++c) {
        n[c].n3 = std::move(n3[c]);
        stage[c] = stage4(y[c], n[c].n3, *half[c], *full[c], dt);
        require_finite(stage[c], "step");
    }
    std::array<cvec, 4> n4;
    nonlinear(stage, s.time + dt, n4);

    std::array<cvec, 4> out;
    for (int c = 0; c < 4; ++c) {
        n[c].n4 = std::move(n4[c]);
        out[c] = combine(y[c], n[c], *half[c], *full[c], dt);
        require_finite(out[c], "step");
    }
    return {{ScalarField::from_spectral(grid_, std::move(out[0])),
             ScalarField::from_spectral(grid_, std::move(out[1]))},
            {ScalarField::from_spectral(grid_, std::move(out[2])),
             ScalarField::from_spectral(grid_, std::move(out[3]))},
            s.time + dt};
}

double cfl_dt(const MhdState& s, const StepPolicy& policy) {
    const auto u1 = physical_values(s.u().x);
    const auto u2 = physical_values(s.u().y);
    const auto b1 = physical_values(s.b().x);
    const auto b2 = physical_values(s.b().y);
    double umax = 0.0, bmax = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) {
        umax = std::max(umax, std::sqrt(u1[i] * u1[i] + u2[i] * u2[i]));
        bmax = std::max(bmax, std::sqrt(b1[i] * b1[i] + b2[i] * b2[i]));
    }
    const double speed = std::max(umax + bmax, 1e-8);
    const double dt = policy.cfl_number * s.grid()->dx() / speed;
    return std::min(dt, policy.dt_fixed);
}

BlowupVerdict detect_blowup(const std::vector<DiagnosticsRecord>& history,
                            const MhdState& s, const BlowupThresholds& thresholds) {
    BlowupVerdict v;
    v.time = s.time();
    if (!history.empty()) v.details = history.back();

    if (!all_finite(s.w().spectral()) || !all_finite(s.j().spectral())) {
        v.triggered = true;
        v.reason = BlowupReason::NonFinite;
        return v;
    }
    if (history.empty()) return v;
    const DiagnosticsRecord& last = history.back();
    if (!std::isfinite(last.energy) || !std::isfinite(last.X) || !std::isfinite(last.Y)) {
        v.triggered = true;
        v.reason = BlowupReason::NonFinite;
        return v;
    }
    if (last.spectrum_tail > thresholds.tail_fraction) {
        v.triggered = true;
        v.reason = BlowupReason::SpectrumTail;
        return v;
    }
    const double x0 = history.front().X;
    if (x0 > 0.0 && last.X > thresholds.norm_growth_factor * x0) {
        v.triggered = true;
        v.reason = BlowupReason::NormGrowth;
    }
    return v;
}

}  // namespace gmhd
