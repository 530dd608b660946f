#include "gmhd/random_fields.hpp"

#include <cmath>

namespace gmhd {

double uniform01(std::mt19937_64& engine) {
    return (engine() >> 11) * 0x1.0p-53;
}

ScalarField random_band_limited_scalar(const GridPtr& grid, std::mt19937_64& engine,
                                       int cutoff, double slope) {
    const auto& g = *grid;
    if (cutoff < 1 || cutoff >= g.n() / 2)
        throw ParameterOutOfRangeError("random scalar: cutoff must lie in [1, n/2)");
    std::vector<std::complex<double>> c(g.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int kx = g.k1(i), ky = g.k2(i);
        const bool half_space = kx > 0 || (kx == 0 && ky > 0);
        if (!half_space) continue;
        const double k2 = g.k_squared(i);
        if (k2 > static_cast<double>(cutoff) * cutoff) continue;
        const double mag = std::pow(k2, -0.5 * slope) * (0.5 + 0.5 * uniform01(engine));
        const double phase = two_pi * uniform01(engine);
        c[i] = {mag * std::cos(phase), mag * std::sin(phase)};
        c[g.index_of(-kx, -ky)] = std::conj(c[i]);
    }
    return ScalarField::from_spectral(grid, std::move(c));
}

VectorField random_divergence_free_field(const GridPtr& grid, std::mt19937_64& engine,
                                         int cutoff, double slope) {
    ScalarField a = random_band_limited_scalar(grid, engine, cutoff, slope);
    ScalarField b = random_band_limited_scalar(grid, engine, cutoff, slope);
    return leray_project({std::move(a), std::move(b)});
}

}  // namespace gmhd
