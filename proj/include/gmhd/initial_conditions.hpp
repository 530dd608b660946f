#pragma once

// Built-in initial data.  Every IC is constructed as a divergence-free
// velocity pair (u, b) and returned in whichever formulation the caller
// integrates; all of them are band-limited, hence smooth.

#include <cstdint>
#include <variant>

#include "gmhd/mhd.hpp"

namespace gmhd {

// u = (-sin y, sin x), b = (-sin y, sin 2x); the standard 2D MHD stress test.
struct OrszagTangIC {};

// One Fourier mode in one component of u or b; axis names the component that
// carries the mode, which varies along the other coordinate.  axis = 2,
// wavenumber = 1, amplitude = 1, target u gives u = (0, sin x).
struct SingleModeIC {
    int axis = 2;
    int wavenumber = 1;
    double amplitude = 1.0;
    char target = 'u';
};

// Seeded random divergence-free u and b with spectrum |k|^{-slope} up to the
// cutoff wavenumber.
struct RandomSmoothIC {
    std::uint64_t seed = 1;
    double spectral_slope = 2.0;
    int cutoff = 8;
};

using InitialCondition = std::variant<OrszagTangIC, SingleModeIC, RandomSmoothIC>;

VelocityState make_initial_velocity_state(const InitialCondition& ic, const GridPtr& grid);
MhdState make_initial_condition(const InitialCondition& ic, const GridPtr& grid);

}  // namespace gmhd
