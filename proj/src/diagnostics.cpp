#include "gmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gmhd {
namespace {

int next_pow2_at_least(int m) {
    int n = 8;
    while (n < m) n *= 2;
    return n;
}

double quadrature_p(const ScalarField& f, double p) {
    const auto v = physical_values(f);
    const double dx = f.grid()->dx();
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s * dx * dx, 1.0 / p);
}

// Physical values of f on a grid refined enough for the requested use;
// fields that only carry node values are used as they are.
ScalarField refined_physical(const ScalarField& f, int factor) {
    if (!f.has_spectral()) return to_physical(f);
    const int m = f.grid()->n() * factor;
    return to_physical(resample(f, make_grid(m)));
}

}  // namespace

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string diagnostics_csv_header() {
    return "time,energy,X,Y,diss_u,diss_b,hgamma_b,lp_w,spectrum_tail";
}

std::string to_csv_row(const DiagnosticsRecord& r) {
    std::string row = csv_double(r.time);
    for (double v : {r.energy, r.X, r.Y, r.diss_u, r.diss_b, r.hgamma_b, r.lp_w,
                     r.spectrum_tail}) {
        row += ',';
        row += csv_double(v);
    }
    return row;
}

GammaChoice gamma_choice(double alpha, double beta, GammaRegime regime) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw RegimeMismatchError("gamma_choice: alpha must lie in [0, 1)");
    const double a_term = alpha * (1.0 + alpha) / (1.0 - alpha);
    GammaChoice out;
    out.regime = regime;
    if (regime == GammaRegime::UnitBeta) {
        if (beta != 1.0)
            throw RegimeMismatchError("gamma_choice: UnitBeta regime requires beta = 1");
        out.gamma = 2.0 - a_term;
        out.admissible = (1.0 < out.gamma && out.gamma < 1.0 + alpha);
    } else {
        if (!(beta > 1.0 && beta <= 1.5))
            throw RegimeMismatchError("gamma_choice: GeneralBeta regime requires beta in (1, 3/2]");
        out.gamma = 3.0 - beta - a_term;
        out.admissible = (beta < out.gamma && out.gamma < alpha + beta);
    }
    return out;
}

DiagnosticsConfig diagnostics_config_for(const SimParams& params) {
    DiagnosticsConfig c;
    if (params.alpha <= 0.0 || params.alpha >= 1.0) return c;
    const double a_term = params.alpha * (1.0 + params.alpha) / (1.0 - params.alpha);
    if (params.beta == 1.0) {
        const GammaChoice gc = gamma_choice(params.alpha, params.beta, GammaRegime::UnitBeta);
        if (gc.admissible) {
            c.gamma = gc.gamma;
            c.p = 2.0 * (1.0 + params.alpha) / (2.0 - gc.gamma);
        }
    } else if (params.beta > 1.0 && params.beta <= 1.5) {
        const GammaChoice gc = gamma_choice(params.alpha, params.beta, GammaRegime::GeneralBeta);
        if (gc.admissible) {
            c.gamma = gc.gamma;
            c.p = 2.0 * (1.0 + params.alpha) / a_term;
        }
    }
    return c;
}

double sobolev_norm(const ScalarField& f, double s) {
    ScalarField sp = to_spectral(f);
    if (s < 0.0) require_zero_mean(sp, "sobolev_norm with negative order");
    const auto& g = *sp.grid();
    const auto& c = sp.spectral();
    double sum = (s == 0.0) ? std::norm(c[0]) : 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double k2 = g.k_squared(i);
        if (k2 == 0.0) continue;
        sum += std::pow(k2, s) * std::norm(c[i]);
    }
    return two_pi * std::sqrt(sum);
}

double sobolev_norm(const VectorField& v, double s) {
    const double a = sobolev_norm(v.x, s);
    const double b = sobolev_norm(v.y, s);
    return std::sqrt(a * a + b * b);
}

double lp_norm(const ScalarField& f, double p) {
    if (std::isinf(p)) {
        const auto v = physical_values(refined_physical(f, 2));
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (!(p >= 1.0)) throw ParameterOutOfRangeError("lp_norm: p must be >= 1 or infinity");
    if (p > 2.0) return quadrature_p(refined_physical(f, 2), p);
    return quadrature_p(f, p);
}

double spectrum_tail_fraction(const MhdState& s, double tail_fraction) {
    const auto& g = *s.grid();
    const auto& wc = s.w().spectral();
    const auto& jc = s.j().spectral();
    const double threshold = (1.0 - tail_fraction) * g.max_retained();
    double tail = 0.0, total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double e = std::norm(wc[i]) + std::norm(jc[i]);
        total += e;
        const int km = std::max(std::abs(g.k1(i)), std::abs(g.k2(i)));
        if (g.retained(i) && km > threshold) tail += e;
    }
    return (total > 0.0) ? tail / total : 0.0;
}

DiagnosticsRecord sample(const MhdState& s, const SimParams& params,
                         const DiagnosticsConfig& config) {
    DiagnosticsRecord r;
    r.time = s.time();
    r.energy = total_energy(s);
    const double nw = l2_norm(s.w()), nj = l2_norm(s.j());
    r.X = nw * nw + nj * nj;
    const double gw = sobolev_norm(s.w(), 1.0), gj = sobolev_norm(s.j(), 1.0);
    r.Y = gw * gw + gj * gj;
    const double du = sobolev_norm(s.u(), params.alpha);
    const double db = sobolev_norm(s.b(), params.beta);
    r.diss_u = params.nu * du * du;
    r.diss_b = params.eta * db * db;
    const double hb = sobolev_norm(s.b(), config.gamma);
    r.hgamma_b = hb * hb;
    r.lp_w = lp_norm(s.w(), config.p);
    r.spectrum_tail = spectrum_tail_fraction(s, config.tail_fraction);
    return r;
}

double energy_balance_residual(const std::vector<DiagnosticsRecord>& history) {
    if (history.size() < 2)
        throw InsufficientSamplesError("energy_balance_residual: need at least two samples");
    const double e0 = history.front().energy;
    if (e0 == 0.0) return 0.0;
    double integral = 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        const auto& a = history[i - 1];
        const auto& b = history[i];
        integral += 0.5 * (b.time - a.time) *
                    ((a.diss_u + a.diss_b) + (b.diss_u + b.diss_b));
        worst = std::max(worst, std::abs(b.energy + 2.0 * integral - e0) / e0);
    }
    return worst;
}

GradCurlCheck check_gradient_curl(const VectorField& f, double p) {
    if (!(p >= 1.0)) throw ParameterOutOfRangeError("check_gradient_curl: p must be >= 1");
    ScalarField fx = to_spectral(f.x), fy = to_spectral(f.y);
    require_same_grid(fx, fy, "check_gradient_curl");
    require_zero_mean(fx, "check_gradient_curl");
    require_zero_mean(fy, "check_gradient_curl");
    require_divergence_free({fx, fy}, "check_gradient_curl");

    GradCurlCheck out;
    if (l2_norm(fx) == 0.0 && l2_norm(fy) == 0.0) return out;

    const ScalarField d11 = partial_derivative(fx, 1);
    const ScalarField d21 = partial_derivative(fx, 2);
    const ScalarField d12 = partial_derivative(fy, 1);
    const ScalarField d22 = partial_derivative(fy, 2);
    const ScalarField curl = curl2d({fx, fy});

    if (p == 2.0) {
        double s = 0.0;
        for (const ScalarField* d : {&d11, &d21, &d12, &d22}) {
            const double n = l2_norm(*d);
            s += n * n;
        }
        out.lhs = std::sqrt(s);
        out.rhs = l2_norm(curl);
    } else {
        // Frobenius norm of the Jacobian on a refined grid, then quadrature.
        const GridPtr gm = make_grid(2 * fx.grid()->n());
        const auto v11 = physical_values(resample(d11, gm));
        const auto v21 = physical_values(resample(d21, gm));
        const auto v12 = physical_values(resample(d12, gm));
        const auto v22 = physical_values(resample(d22, gm));
        std::vector<double> frob(gm->size());
        for (std::size_t i = 0; i < frob.size(); ++i)
            frob[i] = std::sqrt(v11[i] * v11[i] + v21[i] * v21[i] + v12[i] * v12[i] +
                                v22[i] * v22[i]);
        out.lhs = lp_norm(ScalarField::from_physical(gm, std::move(frob)), p);
        out.rhs = lp_norm(curl, p);
    }
    out.ratio = (out.rhs > 0.0) ? out.lhs / out.rhs : 1.0;
    return out;
}

PositivityCheck check_fractional_positivity(const ScalarField& f, int p, double alpha) {
    if (p < 2 || p % 2 != 0)
        throw OddPError("check_fractional_positivity: p must be an even integer >= 2");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ParameterOutOfRangeError("check_fractional_positivity: alpha must lie in [0, 1]");

    PositivityCheck out;
    ScalarField fs = to_spectral(f);
    const int band = spectral_band(fs);
    if (l2_norm(fs) == 0.0) return out;

    // Refine so both integrands (degree p * band) are resolved exactly.
    const GridPtr gm = make_grid(next_pow2_at_least(p * band + 1));
    const auto fv = physical_values(resample(fs, gm));

    std::vector<double> half_power(gm->size());
    for (std::size_t i = 0; i < half_power.size(); ++i) {
        double acc = fv[i];
        for (int e = 1; e < p / 2; ++e) acc *= fv[i];
        half_power[i] = acc;
    }
    const double ln =
        l2_norm(lambda_pow(ScalarField::from_physical(gm, std::move(half_power)), alpha));
    out.lhs = 2.0 * ln * ln;

    const auto lv = physical_values(resample(lambda_pow(fs, 2.0 * alpha), gm));
    const double dx = gm->dx();
    double integral = 0.0;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        double acc = 1.0;
        for (int e = 0; e < p - 1; ++e) acc *= fv[i];
        integral += acc * lv[i];
    }
    out.rhs = static_cast<double>(p) * integral * dx * dx;
    out.holds = (out.lhs <= out.rhs + 1e-8 * std::abs(out.rhs));
    return out;
}

double check_product_estimate(const ScalarField& f, const ScalarField& g,
                              double sigma1, double sigma2) {
    if (!(sigma1 < 1.0 && sigma2 < 1.0 && sigma1 + sigma2 > 0.0))
        throw ParameterOutOfRangeError(
            "check_product_estimate: need sigma1, sigma2 < 1 and sigma1 + sigma2 > 0");
    ScalarField fs = to_spectral(f), gs = to_spectral(g);
    require_zero_mean(fs, "check_product_estimate");
    require_zero_mean(gs, "check_product_estimate");
    const double nf = sobolev_norm(fs, sigma1);
    const double ng = sobolev_norm(gs, sigma2);
    if (nf == 0.0 || ng == 0.0)
        throw ZeroDenominatorError("check_product_estimate: a factor norm vanishes");
    const ScalarField fg = zero_mean(oversampled_product(fs, gs));
    return sobolev_norm(fg, sigma1 + sigma2 - 1.0) / (nf * ng);
}

CommutatorCheck check_commutator(const ScalarField& f, const ScalarField& g, double s,
                                 double p, double p1, double p2, double p3, double p4) {
    if (!(s > 0.0)) throw ParameterOutOfRangeError("check_commutator: s must be positive");
    for (double q : {p, p1, p2, p3, p4})
        if (!(q >= 1.0))
            throw ParameterOutOfRangeError("check_commutator: exponents must be >= 1");
    const double tol = 1e-12;
    if (std::abs(1.0 / p - 1.0 / p1 - 1.0 / p2) > tol ||
        std::abs(1.0 / p - 1.0 / p3 - 1.0 / p4) > tol)
        throw ExponentMismatchError(
            "check_commutator: need 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4");

    ScalarField fs = to_spectral(f), gs = to_spectral(g);
    require_same_grid(fs, gs, "check_commutator");

    const ScalarField fg = oversampled_product(fs, gs);
    const GridPtr gm = fg.grid();
    const auto lam_fg = physical_values(lambda_pow(fg, s));
    const auto fv = physical_values(resample(fs, gm));
    const auto lam_g = physical_values(resample(lambda_pow(gs, s), gm));
    std::vector<double> comm(gm->size());
    for (std::size_t i = 0; i < comm.size(); ++i) comm[i] = lam_fg[i] - fv[i] * lam_g[i];

    CommutatorCheck out;
    out.lhs = lp_norm(ScalarField::from_physical(gm, std::move(comm)), p);

    const auto dfx = physical_values(resample(partial_derivative(fs, 1), gm));
    const auto dfy = physical_values(resample(partial_derivative(fs, 2), gm));
    std::vector<double> gradf(gm->size());
    for (std::size_t i = 0; i < gradf.size(); ++i)
        gradf[i] = std::sqrt(dfx[i] * dfx[i] + dfy[i] * dfy[i]);
    out.grad_part = lp_norm(ScalarField::from_physical(gm, std::move(gradf)), p1) *
                    lp_norm(lambda_pow(gs, s - 1.0), p2);
    out.tail_part = lp_norm(lambda_pow(fs, s), p3) * lp_norm(gs, p4);
    return out;
}

}  // namespace gmhd
