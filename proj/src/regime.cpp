#include "gmhd/regime.hpp"

#include <algorithm>
#include <limits>

#include "gmhd/diagnostics.hpp"
#include "gmhd/errors.hpp"

namespace gmhd {
namespace {

constexpr double third = 1.0 / 3.0;

double min_slack(std::initializer_list<double> slacks) {
    double m = std::numeric_limits<double>::infinity();
    for (double s : slacks) m = std::min(m, s);
    return m;
}

RegimeVerdict verdict(RegimeSource source, double margin, std::string notes) {
    return {source != RegimeSource::Uncovered, source, margin, std::move(notes)};
}

}  // namespace

std::string to_string(RegimeSource source) {
    switch (source) {
        case RegimeSource::Theorem1_1: return "Theorem1_1";
        case RegimeSource::Theorem1_2: return "Theorem1_2";
        case RegimeSource::Wu22_case1: return "Wu22_case1";
        case RegimeSource::Wu22_case2: return "Wu22_case2";
        case RegimeSource::Wu22_case3: return "Wu22_case3";
        case RegimeSource::Ref31_case1: return "Ref31_case1";
        case RegimeSource::Ref31_case2: return "Ref31_case2";
        case RegimeSource::Remark_alpha0: return "Remark_alpha0";
        default: return "Uncovered";
    }
}

RegimeVerdict classify(double alpha, double beta) {
    // First match wins; the novel regions sit ahead of the previously known
    // ones they extend, and each region's predicate uses the exact strict or
    // closed bounds of its statement.
    if (beta == 1.0 && alpha > third && alpha < 0.5)
        return verdict(RegimeSource::Theorem1_1, min_slack({alpha - third, 0.5 - alpha}),
                       "velocity dissipation above the 1/3 threshold with unit diffusion");

    if (alpha > 0.0 && alpha <= third && beta > 1.0 && beta <= 1.5) {
        const double combined = 2.0 * beta + 2.0 * alpha / (1.0 - alpha);
        if (combined > 3.0)
            return verdict(RegimeSource::Theorem1_2,
                           min_slack({alpha, third - alpha, beta - 1.0, 1.5 - beta,
                                      combined - 3.0}),
                           "fractional pair satisfying 2 beta + 2 alpha/(1 - alpha) > 3");
    }

    if (alpha >= 0.5 && beta >= 1.0)
        return verdict(RegimeSource::Wu22_case1, min_slack({alpha - 0.5, beta - 1.0}),
                       "alpha >= 1/2 with beta >= 1");

    if (beta == 0.0 && alpha >= 2.0)
        return verdict(RegimeSource::Wu22_case2, alpha - 2.0,
                       "alpha >= 2 compensating absent magnetic diffusion");

    if (alpha >= 0.0 && alpha < 0.5 && 2.0 * alpha + beta > 2.0)
        return verdict(RegimeSource::Wu22_case3,
                       min_slack({alpha, 0.5 - alpha, 2.0 * alpha + beta - 2.0}),
                       "2 alpha + beta > 2 with alpha below 1/2");

    if (alpha == 0.0 && beta > 1.5)
        return verdict(RegimeSource::Ref31_case1, beta - 1.5,
                       "inviscid velocity with beta > 3/2");

    if (alpha > 0.0 && alpha < 0.5 && beta > 1.25 && beta <= 1.5 &&
        alpha + 2.0 * beta > 3.0)
        return verdict(RegimeSource::Ref31_case2,
                       min_slack({alpha, 0.5 - alpha, beta - 1.25, 1.5 - beta,
                                  alpha + 2.0 * beta - 3.0}),
                       "alpha + 2 beta > 3 with beta in (5/4, 3/2]");

    if (alpha == 0.0 && beta > 1.0)
        return verdict(RegimeSource::Remark_alpha0, beta - 1.0,
                       "inviscid velocity with beta > 1");

    std::string notes = "outside every implemented global-regularity region";
    if (alpha == 0.0 && beta == 1.0)
        notes += "; the borderline pair (0, 1) is open and has been studied numerically";
    return verdict(RegimeSource::Uncovered, 0.0, std::move(notes));
}

std::vector<BoundsRow> region_boundary_table(int resolution) {
    if (resolution < 2)
        throw ParameterOutOfRangeError("region_boundary_table: resolution must be >= 2");
    std::vector<BoundsRow> rows;
    rows.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double alpha = third * i / (resolution - 1);
        BoundsRow r;
        r.alpha = alpha;
        r.two_minus_two_alpha = 2.0 - 2.0 * alpha;
        r.half_three_minus_alpha = 0.5 * (3.0 - alpha);
        r.improved = 1.5 - alpha / (1.0 - alpha);
        rows.push_back(r);
    }
    return rows;
}

std::string bounds_csv_header() {
    return "alpha,beta_above_two_minus_two_alpha,beta_above_half_three_minus_alpha,"
           "beta_above_improved";
}

std::string to_csv_row(const BoundsRow& row) {
    return csv_double(row.alpha) + "," + csv_double(row.two_minus_two_alpha) + "," +
           csv_double(row.half_three_minus_alpha) + "," + csv_double(row.improved);
}

}  // namespace gmhd
