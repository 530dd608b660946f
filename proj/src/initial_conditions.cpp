#include "gmhd/initial_conditions.hpp"

#include <cmath>

#include "gmhd/random_fields.hpp"

namespace gmhd {
namespace {

using cvec = std::vector<std::complex<double>>;

// amplitude * sin(wavenumber * x_axis) as exact spectral coefficients.
ScalarField sine_mode(const GridPtr& grid, int axis, int wavenumber, double amplitude) {
    cvec c(grid->size(), {0.0, 0.0});
    const int kx = (axis == 1) ? wavenumber : 0;
    const int ky = (axis == 1) ? 0 : wavenumber;
    c[grid->index_of(kx, ky)] = {0.0, -0.5 * amplitude};
    c[grid->index_of(-kx, -ky)] = {0.0, 0.5 * amplitude};
    return ScalarField::from_spectral(grid, std::move(c));
}

VelocityState orszag_tang(const GridPtr& grid) {
    VelocityState s;
    s.u = {-1.0 * sine_mode(grid, 2, 1, 1.0), sine_mode(grid, 1, 1, 1.0)};
    s.b = {-1.0 * sine_mode(grid, 2, 1, 1.0), sine_mode(grid, 1, 2, 1.0)};
    return s;
}

VelocityState single_mode(const SingleModeIC& ic, const GridPtr& grid) {
    if (ic.axis != 1 && ic.axis != 2)
        throw BadSpecError("single_mode: axis must be 1 or 2");
    if (ic.wavenumber < 1 || ic.wavenumber > grid->max_retained())
        throw BadSpecError("single_mode: wavenumber must lie in [1, n/3]");
    if (!std::isfinite(ic.amplitude)) throw BadSpecError("single_mode: bad amplitude");
    if (ic.target != 'u' && ic.target != 'b')
        throw BadSpecError("single_mode: target must be u or b");

    // The mode varies along the coordinate the component does not point to,
    // which keeps the field divergence-free.
    const int vary_axis = (ic.axis == 1) ? 2 : 1;
    ScalarField mode = sine_mode(grid, vary_axis, ic.wavenumber, ic.amplitude);
    ScalarField zero = ScalarField::zero(grid);
    VectorField f = (ic.axis == 1) ? VectorField{std::move(mode), std::move(zero)}
                                   : VectorField{std::move(zero), std::move(mode)};
    VelocityState s;
    if (ic.target == 'u') {
        s.u = std::move(f);
        s.b = {ScalarField::zero(grid), ScalarField::zero(grid)};
    } else {
        s.u = {ScalarField::zero(grid), ScalarField::zero(grid)};
        s.b = std::move(f);
    }
    return s;
}

VelocityState random_smooth(const RandomSmoothIC& ic, const GridPtr& grid) {
    if (ic.cutoff < 1 || ic.cutoff > grid->max_retained())
        throw BadSpecError("random_smooth: cutoff must lie in [1, n/3]");
    if (!std::isfinite(ic.spectral_slope))
        throw BadSpecError("random_smooth: bad spectral_slope");
    std::mt19937_64 engine(ic.seed);
    VelocityState s;
    s.u = random_divergence_free_field(grid, engine, ic.cutoff, ic.spectral_slope);
    s.b = random_divergence_free_field(grid, engine, ic.cutoff, ic.spectral_slope);
    return s;
}

}  // namespace

VelocityState make_initial_velocity_state(const InitialCondition& ic, const GridPtr& grid) {
    return std::visit(
        [&](const auto& spec) -> VelocityState {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, OrszagTangIC>)
                return orszag_tang(grid);
            else if constexpr (std::is_same_v<T, SingleModeIC>)
                return single_mode(spec, grid);
            else
                return random_smooth(spec, grid);
        },
        ic);
}

MhdState make_initial_condition(const InitialCondition& ic, const GridPtr& grid) {
    VelocityState s = make_initial_velocity_state(ic, grid);
    return MhdState::from_vorticity(curl2d(s.u), curl2d(s.b), 0.0);
}

}  // namespace gmhd
