#include "gmhd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gmhd/diagnostics.hpp"
#include "gmhd/random_fields.hpp"

namespace gmhd {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double max_coeff_diff(const ScalarField& a, const ScalarField& b) {
    const auto ca = spectral_values(a);
    const auto cb = spectral_values(b);
    double m = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return (v.size() % 2 == 1) ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

int run_verification(std::uint64_t seed, int n, std::ostream& out) {
    const GridPtr grid = make_grid(n);
    std::mt19937_64 engine(seed);
    const int cutoff = std::min(std::max(2, n / 4), 8);
    int failures = 0;
    auto report = [&](bool ok, const char* name, const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    };

    {
        const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
        const ScalarField back =
            to_spectral(ScalarField::from_physical(grid, physical_values(f)));
        const double err = max_coeff_diff(f, back);
        report(err < 1e-12, "transform round trip", "max coefficient error " + fmt(err));
    }

    {
        std::vector<double> v(grid->size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                v[static_cast<std::size_t>(a) * n + b] = std::cos(grid->x1(a));
        const ScalarField f = to_spectral(ScalarField::from_physical(grid, std::move(v)));
        double err = 0.0;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double expected =
                (std::abs(grid->k1(i)) == 1 && grid->k2(i) == 0) ? 0.5 : 0.0;
            err = std::max(err, std::abs(f.spectral()[i] - std::complex<double>{expected, 0.0}));
        }
        report(err < 1e-14, "cosine mode coefficients", "max deviation from {1/2, 0} " + fmt(err));
    }

    {
        const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
        const double spectral_side = l2_norm(f);
        const double physical_side =
            l2_norm(ScalarField::from_physical(grid, physical_values(f)));
        const double rel = std::abs(spectral_side - physical_side) / spectral_side;
        report(rel < 1e-12, "Parseval identity", "relative mismatch " + fmt(rel));
    }

    {
        const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
        const double err =
            max_coeff_diff(lambda_pow(lambda_pow(f, 0.7), 0.6), lambda_pow(f, 1.3));
        report(err < 1e-12, "fractional Laplacian composition",
               "max coefficient error " + fmt(err));
    }

    {
        VectorField v{random_band_limited_scalar(grid, engine, cutoff, 1.0),
                      random_band_limited_scalar(grid, engine, cutoff, 1.0)};
        const VectorField pv = leray_project(v);
        const double div_rel = l2_norm(divergence(pv)) / std::max(l2_norm(v), 1e-300);
        const double idem = std::max(max_coeff_diff(leray_project(pv).x, pv.x),
                                     max_coeff_diff(leray_project(pv).y, pv.y));
        const ScalarField curl_v = partial_derivative(v.y, 1) - partial_derivative(v.x, 2);
        const ScalarField curl_pv = partial_derivative(pv.y, 1) - partial_derivative(pv.x, 2);
        const double curl_rel = l2_norm(curl_pv - curl_v) / std::max(l2_norm(curl_v), 1e-300);
        const bool ok = div_rel < 1e-12 && idem < 1e-14 && curl_rel < 1e-12;
        report(ok, "Leray projection",
               "divergence " + fmt(div_rel) + ", idempotency " + fmt(idem) + ", curl drift " +
                   fmt(curl_rel));
    }

    {
        double worst_eq = 0.0;
        double ratio_lo = 1e300, ratio_hi = 0.0;
        bool finite = true;
        for (int trial = 0; trial < 100; ++trial) {
            const VectorField f = random_divergence_free_field(grid, engine, cutoff, 1.0);
            const GradCurlCheck c2 = check_gradient_curl(f, 2.0);
            worst_eq = std::max(worst_eq, std::abs(c2.lhs - c2.rhs) / c2.rhs);
            const GradCurlCheck c4 = check_gradient_curl(f, 4.0);
            finite = finite && std::isfinite(c4.ratio) && c4.ratio > 0.0;
            ratio_lo = std::min(ratio_lo, c4.ratio);
            ratio_hi = std::max(ratio_hi, c4.ratio);
        }
        report(worst_eq < 1e-12 && finite, "gradient-curl equivalence",
               "p=2 worst relative gap " + fmt(worst_eq) + ", p=4 ratio in [" + fmt(ratio_lo) +
                   ", " + fmt(ratio_hi) + "]");
    }

    {
        const int ps[] = {2, 4, 8};
        const double alphas[] = {0.25, 0.5, 0.75, 1.0};
        bool all_hold = true;
        double worst_eq = 0.0, worst_margin = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
            for (int p : ps)
                for (double a : alphas) {
                    const PositivityCheck c = check_fractional_positivity(f, p, a);
                    all_hold = all_hold && c.holds;
                    worst_margin = std::max(worst_margin, (c.lhs - c.rhs) / std::abs(c.rhs));
                    if (p == 2)
                        worst_eq = std::max(worst_eq, std::abs(c.lhs - c.rhs) / std::abs(c.rhs));
                }
        }
        report(all_hold && worst_eq < 1e-9, "fractional positivity",
               "worst signed margin " + fmt(worst_margin) + ", p=2 worst relative gap " +
                   fmt(worst_eq));
    }

    {
        std::vector<double> ratios;
        ratios.reserve(200);
        bool finite = true;
        for (int trial = 0; trial < 200; ++trial) {
            const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
            const ScalarField g = random_band_limited_scalar(grid, engine, cutoff, 1.0);
            const double r = check_product_estimate(f, g, 0.3, 0.4);
            finite = finite && std::isfinite(r) && r > 0.0;
            ratios.push_back(r);
        }
        const double hi = *std::max_element(ratios.begin(), ratios.end());
        report(finite, "negative-order product estimate",
               "ratio max " + fmt(hi) + ", median " + fmt(median(ratios)));
    }

    {
        bool finite = true;
        double hi = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const ScalarField f = random_band_limited_scalar(grid, engine, cutoff, 1.0);
            const ScalarField g = random_band_limited_scalar(grid, engine, cutoff, 1.0);
            const CommutatorCheck c = check_commutator(f, g, 0.75, 2.0, 4.0, 4.0, 4.0, 4.0);
            const double r = c.lhs / (c.grad_part + c.tail_part);
            finite = finite && std::isfinite(r) && r >= 0.0;
            hi = std::max(hi, r);
        }
        report(finite, "commutator estimate", "largest lhs/(bound sum) ratio " + fmt(hi));
    }

    return failures;
}

}  // namespace gmhd
