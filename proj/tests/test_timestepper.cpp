#include <cmath>

#include "doctest.h"
#include "gmhd/initial_conditions.hpp"
#include "gmhd/random_fields.hpp"
#include "gmhd/timestepper.hpp"
#include "test_support.hpp"

using namespace gmhd;
using namespace testsup;

namespace {

MhdState single_mode_state(const GridPtr& g) {
    return MhdState::from_vorticity(field_of(g, [](double x, double) { return std::cos(x); }),
                                    ScalarField::zero(g), 0.0);
}

double rel_state_diff(const MhdState& a, const MhdState& b) {
    const double scale = std::max(std::sqrt(l2_norm(b.w()) * l2_norm(b.w()) +
                                            l2_norm(b.j()) * l2_norm(b.j())),
                                  1e-300);
    const double dw = l2_norm(a.w() - b.w());
    const double dj = l2_norm(a.j() - b.j());
    return std::sqrt(dw * dw + dj * dj) / scale;
}

}  // namespace

TEST_CASE("step policy validation") {
    StepPolicy p;
    CHECK_NOTHROW(p.validate());
    p.dt_fixed = 0.0;
    CHECK_THROWS_AS(p.validate(), BadSpecError);
    p = StepPolicy{};
    p.cfl_number = 1.5;
    CHECK_THROWS_AS(p.validate(), BadSpecError);
    p = StepPolicy{};
    p.t_end = -1.0;
    CHECK_THROWS_AS(p.validate(), BadSpecError);
    p = StepPolicy{};
    p.max_steps = 0;
    CHECK_THROWS_AS(p.validate(), BadSpecError);
}

TEST_CASE("single-mode decay is exact for any dissipation order") {
    auto g = make_grid(16);
    for (double alpha : {0.0, 0.35, 0.5, 1.0}) {
        SimParams p;
        p.nu = 1.0;
        p.eta = 1.0;
        p.alpha = alpha;
        p.beta = 1.0;
        p.n = 16;
        auto s1 = step(single_mode_state(g), p, 0.1);
        // the nonlinear term vanishes identically, so the integrating factor
        // carries the whole solution: w(t) = e^{-t} cos x
        const double expect = std::exp(-0.1);
        auto target = expect * to_spectral(single_mode_state(g).w());
        CHECK(max_coeff_diff(s1.w(), target) < 1e-10 * expect);
        CHECK(l2_norm(s1.j()) < 1e-14);
        CHECK(s1.time() == doctest::Approx(0.1));

        // exactness holds at large dt too
        auto s2 = step(single_mode_state(g), p, 2.5);
        CHECK(max_coeff_diff(s2.w(), std::exp(-2.5) * to_spectral(single_mode_state(g).w())) <
              1e-12);
    }
}

TEST_CASE("zero state stays zero") {
    auto g = make_grid(16);
    SimParams p;
    p.nu = 0.0;
    p.eta = 0.0;
    p.n = 16;
    auto z = MhdState::from_vorticity(ScalarField::zero(g), ScalarField::zero(g), 0.0);
    auto s = step(z, p, 0.05);
    CHECK(l2_norm(s.w()) == 0.0);
    CHECK(l2_norm(s.j()) == 0.0);
}

TEST_CASE("stepping commutes with the current-sign symmetry") {
    auto g = make_grid(32);
    SimParams p;
    p.nu = 0.4;
    p.eta = 0.7;
    p.alpha = 0.6;
    p.beta = 1.1;
    p.n = 32;
    std::mt19937_64 eng(53);
    auto w = random_band_limited_scalar(g, eng, 10, 1.0);
    auto j = random_band_limited_scalar(g, eng, 10, 1.0);

    auto stepped = step(MhdState::from_vorticity(w, j, 0.0), p, 1e-2);
    auto mirrored = step(MhdState::from_vorticity(w, -1.0 * to_spectral(j), 0.0), p, 1e-2);

    CHECK(rel_l2_diff(mirrored.w(), stepped.w()) < 1e-12);
    CHECK(rel_l2_diff(mirrored.j(), -1.0 * to_spectral(stepped.j())) < 1e-12);
}

TEST_CASE("temporal self-convergence is fourth order") {
    auto g = make_grid(32);
    SimParams p;
    p.nu = 1.0;
    p.eta = 1.0;
    p.alpha = 0.4;
    p.beta = 1.0;
    p.n = 32;
    const IfRk4Stepper stepper(g, p);
    auto advance = [&](double dt, int steps) {
        MhdState s = make_initial_condition(OrszagTangIC{}, g);
        for (int i = 0; i < steps; ++i) s = stepper.step(s, dt);
        return s;
    };
    auto s1 = advance(4e-3, 25);
    auto s2 = advance(2e-3, 50);
    auto s3 = advance(1e-3, 100);
    const double d12 = rel_state_diff(s1, s2);
    const double d23 = rel_state_diff(s2, s3);
    const double order = std::log2(d12 / d23);
    CHECK(order > 3.8);
    CHECK(order < 4.2);
}

TEST_CASE("stepper exponential cache follows dt changes") {
    auto g = make_grid(16);
    SimParams p;
    p.n = 16;
    const IfRk4Stepper reused(g, p);
    auto a = reused.step(single_mode_state(g), 0.1);
    auto b = reused.step(single_mode_state(g), 0.05);
    auto c = reused.step(single_mode_state(g), 0.1);

    const IfRk4Stepper fresh(g, p);
    CHECK(max_coeff_diff(b.w(), fresh.step(single_mode_state(g), 0.05).w()) == 0.0);
    CHECK(max_coeff_diff(a.w(), c.w()) == 0.0);
}

TEST_CASE("velocity-form stepper decays a shear mode exactly") {
    auto g = make_grid(16);
    SimParams p;
    p.nu = 1.0;
    p.alpha = 0.5;
    p.n = 16;
    auto sinx = field_of(g, [](double x, double) { return std::sin(x); });
    VectorField zero{ScalarField::zero(g), ScalarField::zero(g)};
    const VelocityIfRk4Stepper stepper(g, p);
    auto s = stepper.step({{ScalarField::zero(g), sinx}, zero, 0.0}, 0.1);
    CHECK(max_coeff_diff(s.u.y, std::exp(-0.1) * to_spectral(sinx)) < 1e-12);
    CHECK(l2_norm(s.u.x) < 1e-14);
}

TEST_CASE("velocity and vorticity formulations track each other") {
    auto g = make_grid(32);
    SimParams p;
    p.nu = 1.0;
    p.eta = 1.0;
    p.alpha = 0.4;
    p.beta = 1.0;
    p.n = 32;
    VelocityState vs = make_initial_velocity_state(OrszagTangIC{}, g);
    MhdState ws = make_initial_condition(OrszagTangIC{}, g);
    const VelocityIfRk4Stepper vstepper(g, p);
    const IfRk4Stepper wstepper(g, p);
    for (int i = 0; i < 10; ++i) {
        vs = vstepper.step(vs, 1e-3);
        ws = wstepper.step(ws, 1e-3);
    }
    CHECK(rel_l2_diff(curl2d(vs.u), ws.w()) < 1e-8);
    CHECK(rel_l2_diff(curl2d(vs.b), ws.j()) < 1e-8);
}

TEST_CASE("non-finite coefficients abort the step") {
    auto g = make_grid(16);
    SimParams p;
    p.n = 16;
    std::vector<std::complex<double>> c(g->size(), {0.0, 0.0});
    c[g->index_of(1, 0)] = {1e308, 0.0};
    c[g->index_of(-1, 0)] = {1e308, 0.0};
    auto s = MhdState::from_vorticity(ScalarField::from_spectral(g, std::move(c)),
                                      ScalarField::zero(g), 0.0);
    CHECK_THROWS_AS(step(s, p, 0.1), NonFiniteStateError);
}

TEST_CASE("cfl step size follows the fields and the grid") {
    auto g = make_grid(64);
    StepPolicy policy;
    policy.cfl_number = 0.5;
    policy.dt_fixed = 1e12;

    auto zero = MhdState::from_vorticity(ScalarField::zero(g), ScalarField::zero(g), 0.0);
    CHECK(cfl_dt(zero, policy) == doctest::Approx(0.5 * (two_pi / 64) / 1e-8));

    // u = (0, sin x): sup speed 1, dt = 0.5 * dx
    auto s = MhdState::from_vorticity(
        field_of(g, [](double x, double) { return std::cos(x); }), ScalarField::zero(g), 0.0);
    CHECK(cfl_dt(s, policy) == doctest::Approx(0.04908738521234052).epsilon(1e-10));

    auto g2 = make_grid(128);
    auto s2 = MhdState::from_vorticity(
        field_of(g2, [](double x, double) { return std::cos(x); }), ScalarField::zero(g2), 0.0);
    CHECK(cfl_dt(s2, policy) == doctest::Approx(0.5 * cfl_dt(s, policy)).epsilon(1e-10));

    policy.dt_fixed = 1e-3;
    CHECK(cfl_dt(s, policy) == 1e-3);
}

TEST_CASE("blow-up detector separates healthy and sick runs") {
    auto g = make_grid(16);
    SimParams p;
    p.n = 16;
    auto healthy = single_mode_state(g);
    DiagnosticsConfig dc;
    std::vector<DiagnosticsRecord> history{sample(healthy, p, dc)};
    const IfRk4Stepper stepper(g, p);
    auto s = healthy;
    for (int i = 0; i < 10; ++i) {
        s = stepper.step(s, 1e-2);
        history.push_back(sample(s, p, dc));
    }
    auto verdict = detect_blowup(history, s);
    CHECK_FALSE(verdict.triggered);
    CHECK(verdict.reason == BlowupReason::None);

    // injected overflow
    std::vector<std::complex<double>> c(g->size(), {0.0, 0.0});
    c[g->index_of(1, 1)] = {std::numeric_limits<double>::infinity(), 0.0};
    auto sick = MhdState::from_vorticity(ScalarField::from_spectral(g, std::move(c)),
                                         ScalarField::zero(g), 0.0);
    auto nan_verdict = detect_blowup(history, sick);
    CHECK(nan_verdict.triggered);
    CHECK(nan_verdict.reason == BlowupReason::NonFinite);

    // fabricated runaway growth
    auto grown = history;
    grown.push_back(grown.back());
    grown.back().X = grown.front().X * 1e7;
    auto growth_verdict = detect_blowup(grown, s);
    CHECK(growth_verdict.triggered);
    CHECK(growth_verdict.reason == BlowupReason::NormGrowth);
}

TEST_CASE("an under-resolved turbulent run trips the spectrum-tail monitor") {
    auto g = make_grid(16);
    SimParams p;
    p.nu = 1e-3;
    p.eta = 1e-3;
    p.alpha = 1.0;
    p.beta = 1.0;
    p.n = 16;
    auto s = make_initial_condition(OrszagTangIC{}, g);
    DiagnosticsConfig dc;
    std::vector<DiagnosticsRecord> history{sample(s, p, dc)};
    const IfRk4Stepper stepper(g, p);
    BlowupVerdict verdict;
    for (int i = 0; i < 500 && !verdict.triggered; ++i) {
        s = stepper.step(s, 1e-2);
        history.push_back(sample(s, p, dc));
        verdict = detect_blowup(history, s);
    }
    CHECK(verdict.triggered);
    CHECK(verdict.reason == BlowupReason::SpectrumTail);
    CHECK(verdict.time > 0.0);
}
