#pragma once

// Seeded band-limited random fields for the inequality lab and the random
// initial condition.  All draws walk the spectral half-space in flat index
// order, so a given (seed, n, cutoff, slope) always builds the same field.

#include <cstdint>
#include <random>

#include "gmhd/spectral.hpp"

namespace gmhd {

// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& engine);

// Real zero-mean scalar with random phases on modes 0 < |k| <= cutoff
// (Euclidean) and magnitude |k|^{-slope}.
ScalarField random_band_limited_scalar(const GridPtr& grid, std::mt19937_64& engine,
                                       int cutoff, double slope = 1.0);

// Divergence-free zero-mean vector field: two independent scalars, Leray
// projected (projection preserves the band limit).
VectorField random_divergence_free_field(const GridPtr& grid, std::mt19937_64& engine,
                                         int cutoff, double slope = 1.0);

}  // namespace gmhd
