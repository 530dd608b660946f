#pragma once

// Classification of a dissipation/diffusion exponent pair (alpha, beta)
// against the known global-regularity regions for the 2D generalized MHD
// system, with first-match precedence and a slack margin for each verdict.

#include <string>
#include <vector>

namespace gmhd {

enum class RegimeSource {
    Theorem1_1,    // 1/3 < alpha < 1/2, beta = 1
    Theorem1_2,    // 0 < alpha <= 1/3, 1 < beta <= 3/2, 2 beta + 2 alpha/(1-alpha) > 3
    Wu22_case1,    // alpha >= 1/2, beta >= 1
    Wu22_case2,    // alpha >= 2, beta = 0
    Wu22_case3,    // 0 <= alpha < 1/2, 2 alpha + beta > 2
    Ref31_case1,   // alpha = 0, beta > 3/2
    Ref31_case2,   // 0 < alpha < 1/2, 5/4 < beta <= 3/2, alpha + 2 beta > 3
    Remark_alpha0, // alpha = 0, beta > 1
    Uncovered,
};

std::string to_string(RegimeSource source);

struct RegimeVerdict {
    bool covered = false;
    RegimeSource source = RegimeSource::Uncovered;
    // Smallest slack among the matched region's inequality constraints
    // (equality constraints such as beta = 1 contribute no slack); 0 when
    // uncovered or when a closed bound is met exactly.
    double margin = 0.0;
    std::string notes;
};

// Total function over alpha, beta >= 0; all comparisons are exact on the
// given doubles, with no epsilon slack, so near-boundary inputs surface
// through the margin instead of silently flipping regions.
RegimeVerdict classify(double alpha, double beta);

struct BoundsRow {
    double alpha = 0.0;
    double two_minus_two_alpha = 0.0;   // beta > 2 - 2 alpha
    double half_three_minus_alpha = 0.0;// beta > (3 - alpha)/2
    double improved = 0.0;              // beta > 3/2 - alpha/(1 - alpha)
};

// The three lower bounds on beta sampled uniformly for alpha in [0, 1/3];
// the improved bound lies strictly below the other two away from alpha = 0.
std::vector<BoundsRow> region_boundary_table(int resolution);

std::string bounds_csv_header();
std::string to_csv_row(const BoundsRow& row);

}  // namespace gmhd
