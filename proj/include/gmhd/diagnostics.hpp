#pragma once

// Norm diagnostics sampled along a trajectory, plus the numerical
// inequality lab: empirical checks of the gradient-curl equivalence, the
// commutator estimate, the fractional positivity inequality, and the
// negative-order product estimate that underpin the a priori bounds.

#include <string>
#include <vector>

#include "gmhd/mhd.hpp"

namespace gmhd {

struct DiagnosticsRecord {
    double time = 0.0;
    double energy = 0.0;         // |u|_2^2 + |b|_2^2
    double X = 0.0;              // |w|_2^2 + |j|_2^2
    double Y = 0.0;              // |grad w|_2^2 + |grad j|_2^2
    double diss_u = 0.0;         // nu * |Lambda^alpha u|_2^2
    double diss_b = 0.0;         // eta * |Lambda^beta b|_2^2
    double hgamma_b = 0.0;       // |Lambda^gamma b|_2^2 for the configured gamma
    double lp_w = 0.0;           // |w|_{L^p} for the configured p
    double spectrum_tail = 0.0;  // enstrophy fraction in the top of the retained band
};

std::string diagnostics_csv_header();
std::string to_csv_row(const DiagnosticsRecord& r);

// Round-trip-exact decimal rendering used for all CSV numbers.
std::string csv_double(double v);

// Which admissibility window the gamma exponent is chosen from: UnitBeta is
// the beta = 1 regime (window 1 < gamma < 1+alpha), GeneralBeta the
// beta in (1, 3/2] regime (window beta < gamma < alpha+beta).
enum class GammaRegime { UnitBeta, GeneralBeta };

struct GammaChoice {
    double gamma = 1.0;
    GammaRegime regime = GammaRegime::UnitBeta;
    bool admissible = false;
};

// gamma = 2 - a(1+a)/(1-a) in the UnitBeta regime (requires beta = 1),
// gamma = 3 - b - a(1+a)/(1-a) in the GeneralBeta regime (requires
// 1 < beta <= 3/2); alpha must lie in [0, 1).
GammaChoice gamma_choice(double alpha, double beta, GammaRegime regime);

struct DiagnosticsConfig {
    double gamma = 1.0;                // exponent of the magnetic Sobolev monitor
    double p = 2.0;                    // Lebesgue exponent of the vorticity monitor
    double tail_fraction = 1.0 / 6.0;  // top share of the retained band in the tail monitor
};

// Picks gamma from the admissibility window matching (alpha, beta) and the
// companion exponent p = 2(1+a)/(2-gamma) or 2(1+a)/(3-b-gamma); falls back
// to gamma = 1, p = 2 when no window is admissible.
DiagnosticsConfig diagnostics_config_for(const SimParams& params);

// Homogeneous Sobolev norm: ((2pi)^2 sum_{k!=0} |k|^{2s} |c(k)|^2)^{1/2};
// the mean mode contributes only at s = 0.  s < 0 requires zero mean.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);

// Uniform-grid quadrature (sum |f|^p dx^2)^{1/p}; sup over nodes for
// p = infinity.  Fields with a spectral representation are evaluated on a
// twice-refined grid when p > 2.
double lp_norm(const ScalarField& f, double p);

double spectrum_tail_fraction(const MhdState& s, double tail_fraction);

DiagnosticsRecord sample(const MhdState& s, const SimParams& params,
                         const DiagnosticsConfig& config);

// Max over samples of |E(t) + 2 int_0^t (diss_u + diss_b) - E(0)| / E(0)
// with the trapezoid rule; 0 by convention when E(0) = 0.
double energy_balance_residual(const std::vector<DiagnosticsRecord>& history);

// |grad f|_{L^p} versus |curl f|_{L^p} for divergence-free mean-zero f.
// At p = 2 the two sides agree identically; the ratio is 1 for f = 0.
struct GradCurlCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 1.0;
};
GradCurlCheck check_gradient_curl(const VectorField& f, double p);

// 2 int |Lambda^a (f^{p/2})|^2 <= p int |f|^{p-2} f Lambda^{2a} f for even
// p >= 2, a in [0, 1].  Both integrals are evaluated exactly by refining the
// grid past the degree of the integrands.
struct PositivityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};
PositivityCheck check_fractional_positivity(const ScalarField& f, int p, double alpha);

// |fg|_{H^{s1+s2-1}} / (|f|_{H^{s1}} |g|_{H^{s2}}) for zero-mean f, g with
// s1, s2 < 1 and s1 + s2 > 0.  The product is mean-projected before the
// (possibly negative-order) norm.
double check_product_estimate(const ScalarField& f, const ScalarField& g,
                              double sigma1, double sigma2);

// |Lambda^s(fg) - f Lambda^s g|_{L^p} against the two bound products
// |grad f|_{p1} |Lambda^{s-1} g|_{p2} and |Lambda^s f|_{p3} |g|_{p4}.
struct CommutatorCheck {
    double lhs = 0.0;
    double grad_part = 0.0;
    double tail_part = 0.0;
};
CommutatorCheck check_commutator(const ScalarField& f, const ScalarField& g, double s,
                                 double p, double p1, double p2, double p3, double p4);

}  // namespace gmhd
