#include "gmhd/mhd.hpp"

#include <cmath>

namespace gmhd {
namespace {

using cvec = std::vector<std::complex<double>>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> synth(const SpectralGrid& g, const cvec& c) {
    cvec out(g.size());
    g.backward(c.data(), out.data());
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = out[i].real();
    return v;
}

cvec analyze(const SpectralGrid& g, const std::vector<double>& v) {
    cvec in(g.size()), out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) in[i] = {v[i], 0.0};
    g.forward(in.data(), out.data());
    return out;
}

cvec deriv(const SpectralGrid& g, const cvec& c, int axis) {
    cvec d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k = (axis == 1) ? g.k1(i) : g.k2(i);
        d[i] = {-k * c[i].imag(), k * c[i].real()};
    }
    return d;
}

// Zero the unretained modes and the mean; the nonlinear terms have zero mean
// analytically, this just removes roundoff drift.
void mask_clean(const SpectralGrid& g, cvec& c) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!g.retained(i)) c[i] = {0.0, 0.0};
    c[0] = {0.0, 0.0};
}

// -coef * |k|^{2*order}; std::pow(0, 0) == 1 keeps order zero acting as the
// identity on the mean mode, matching lambda_pow.
cvec dissipation(const SpectralGrid& g, const cvec& c, double coef, double order) {
    cvec d(g.size(), {0.0, 0.0});
    if (coef == 0.0) return d;
    for (std::size_t i = 0; i < g.size(); ++i)
        d[i] = -coef * std::pow(g.k_squared(i), order) * c[i];
    return d;
}

}  // namespace

void SimParams::validate() const {
    if (!(nu >= 0.0) || !(eta >= 0.0))
        throw BadSpecError("nu and eta must be nonnegative");
    if (!(alpha >= 0.0 && alpha <= 2.0) || !(beta >= 0.0 && beta <= 2.0))
        throw BadSpecError("alpha and beta must lie in [0, 2]");
    if (!is_pow2(n) || n < 8)
        throw BadSpecError("n must be a power of two, at least 8");
}

VectorField velocity_from_vorticity(const ScalarField& w) {
    ScalarField s = to_spectral(w);
    require_zero_mean(s, "velocity_from_vorticity");
    const auto& g = *s.grid();
    const auto& c = s.spectral();
    cvec u1(g.size()), u2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k2 = g.k_squared(i);
        if (k2 == 0.0) {
            u1[i] = u2[i] = {0.0, 0.0};
            continue;
        }
        const std::complex<double> iw{-c[i].imag() / k2, c[i].real() / k2};
        u1[i] = static_cast<double>(g.k2(i)) * iw;
        u2[i] = static_cast<double>(-g.k1(i)) * iw;
    }
    return {ScalarField::from_spectral(s.grid(), std::move(u1)),
            ScalarField::from_spectral(s.grid(), std::move(u2))};
}

ScalarField curl2d(const VectorField& v) {
    return partial_derivative(v.y, 1) - partial_derivative(v.x, 2);
}

ScalarField stretching_term(const VectorField& u, const VectorField& b) {
    ScalarField u1 = to_spectral(u.x), u2 = to_spectral(u.y);
    ScalarField b1 = to_spectral(b.x), b2 = to_spectral(b.y);
    require_same_grid(u1, b1, "stretching_term");
    const auto& g = *u1.grid();

    const cvec d1b1 = deriv(g, b1.spectral(), 1);
    const cvec d1u1 = deriv(g, u1.spectral(), 1);
    cvec shear_u = deriv(g, u2.spectral(), 1);
    {
        const cvec d2u1 = deriv(g, u1.spectral(), 2);
        for (std::size_t i = 0; i < g.size(); ++i) shear_u[i] += d2u1[i];
    }
    cvec shear_b = deriv(g, b2.spectral(), 1);
    {
        const cvec d2b1 = deriv(g, b1.spectral(), 2);
        for (std::size_t i = 0; i < g.size(); ++i) shear_b[i] += d2b1[i];
    }

    const auto pd1b1 = synth(g, d1b1);
    const auto pd1u1 = synth(g, d1u1);
    const auto pshu = synth(g, shear_u);
    const auto pshb = synth(g, shear_b);

    std::vector<double> t(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        t[i] = 2.0 * (pd1b1[i] * pshu[i] - pd1u1[i] * pshb[i]);

    cvec out = analyze(g, t);
    mask_clean(g, out);
    return ScalarField::from_spectral(u1.grid(), std::move(out));
}

MhdState MhdState::from_vorticity(ScalarField w, ScalarField j, double time) {
    ScalarField ws = to_spectral(w);
    ScalarField js = to_spectral(j);
    require_same_grid(ws, js, "MhdState::from_vorticity");

    cvec wc = ws.spectral();
    cvec jc = js.spectral();
    wc[0] = {0.0, 0.0};
    jc[0] = {0.0, 0.0};

    MhdState s;
    s.w_ = ScalarField::from_spectral(ws.grid(), std::move(wc));
    s.j_ = ScalarField::from_spectral(js.grid(), std::move(jc));
    s.u_ = velocity_from_vorticity(s.w_);
    s.b_ = velocity_from_vorticity(s.j_);
    s.time_ = time;
    return s;
}

Tendency rhs_vorticity_form(const MhdState& s, const SimParams& p) {
    const auto& g = *s.grid();
    const cvec& wc = s.w().spectral();
    const cvec& jc = s.j().spectral();

    const auto u1 = synth(g, s.u().x.spectral());
    const auto u2 = synth(g, s.u().y.spectral());
    const auto b1 = synth(g, s.b().x.spectral());
    const auto b2 = synth(g, s.b().y.spectral());
    const auto wx = synth(g, deriv(g, wc, 1));
    const auto wy = synth(g, deriv(g, wc, 2));
    const auto jx = synth(g, deriv(g, jc, 1));
    const auto jy = synth(g, deriv(g, jc, 2));

    std::vector<double> aw(g.size()), aj(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        aw[i] = -(u1[i] * wx[i] + u2[i] * wy[i]) + (b1[i] * jx[i] + b2[i] * jy[i]);
        aj[i] = -(u1[i] * jx[i] + u2[i] * jy[i]) + (b1[i] * wx[i] + b2[i] * wy[i]);
    }

    cvec dwn = analyze(g, aw);
    cvec djn = analyze(g, aj);
    mask_clean(g, dwn);
    mask_clean(g, djn);

    const ScalarField t = stretching_term(s.u(), s.b());
    const cvec& tc = t.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) djn[i] += tc[i];

    Tendency out;
    out.dw_nonlinear = ScalarField::from_spectral(s.grid(), std::move(dwn));
    out.dj_nonlinear = ScalarField::from_spectral(s.grid(), std::move(djn));
    out.dw_linear = ScalarField::from_spectral(s.grid(), dissipation(g, wc, p.nu, p.alpha));
    out.dj_linear = ScalarField::from_spectral(s.grid(), dissipation(g, jc, p.eta, p.beta));
    return out;
}

VelocityTendency rhs_velocity_form(const VelocityState& s, const SimParams& p) {
    require_divergence_free(s.u, "rhs_velocity_form (u)");
    require_divergence_free(s.b, "rhs_velocity_form (b)");
    ScalarField u1s = to_spectral(s.u.x), u2s = to_spectral(s.u.y);
    ScalarField b1s = to_spectral(s.b.x), b2s = to_spectral(s.b.y);
    require_same_grid(u1s, b1s, "rhs_velocity_form");
    const auto& g = *u1s.grid();

    const auto u1 = synth(g, u1s.spectral());
    const auto u2 = synth(g, u2s.spectral());
    const auto b1 = synth(g, b1s.spectral());
    const auto b2 = synth(g, b2s.spectral());

    const auto d1u1 = synth(g, deriv(g, u1s.spectral(), 1));
    const auto d2u1 = synth(g, deriv(g, u1s.spectral(), 2));
    const auto d1u2 = synth(g, deriv(g, u2s.spectral(), 1));
    const auto d2u2 = synth(g, deriv(g, u2s.spectral(), 2));
    const auto d1b1 = synth(g, deriv(g, b1s.spectral(), 1));
    const auto d2b1 = synth(g, deriv(g, b1s.spectral(), 2));
    const auto d1b2 = synth(g, deriv(g, b2s.spectral(), 1));
    const auto d2b2 = synth(g, deriv(g, b2s.spectral(), 2));

    std::vector<double> nu1(g.size()), nu2(g.size()), nb1(g.size()), nb2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        nu1[i] = -(u1[i] * d1u1[i] + u2[i] * d2u1[i]) + (b1[i] * d1b1[i] + b2[i] * d2b1[i]);
        nu2[i] = -(u1[i] * d1u2[i] + u2[i] * d2u2[i]) + (b1[i] * d1b2[i] + b2[i] * d2b2[i]);
        nb1[i] = -(u1[i] * d1b1[i] + u2[i] * d2b1[i]) + (b1[i] * d1u1[i] + b2[i] * d2u1[i]);
        nb2[i] = -(u1[i] * d1b2[i] + u2[i] * d2b2[i]) + (b1[i] * d1u2[i] + b2[i] * d2u2[i]);
    }

    cvec cu1 = analyze(g, nu1), cu2 = analyze(g, nu2);
    cvec cb1 = analyze(g, nb1), cb2 = analyze(g, nb2);
    mask_clean(g, cu1);
    mask_clean(g, cu2);
    mask_clean(g, cb1);
    mask_clean(g, cb2);

    VelocityTendency out;
    // The pressure gradient enters as the Leray projection of the advection
    // terms; the magnetic tendency is solenoidal already, projecting it again
    // only scrubs roundoff.
    out.du_nonlinear =
        leray_project({ScalarField::from_spectral(u1s.grid(), std::move(cu1)),
                       ScalarField::from_spectral(u1s.grid(), std::move(cu2))});
    out.db_nonlinear =
        leray_project({ScalarField::from_spectral(u1s.grid(), std::move(cb1)),
                       ScalarField::from_spectral(u1s.grid(), std::move(cb2))});
    out.du_linear = {
        ScalarField::from_spectral(u1s.grid(), dissipation(g, u1s.spectral(), p.nu, p.alpha)),
        ScalarField::from_spectral(u1s.grid(), dissipation(g, u2s.spectral(), p.nu, p.alpha))};
    out.db_linear = {
        ScalarField::from_spectral(u1s.grid(), dissipation(g, b1s.spectral(), p.eta, p.beta)),
        ScalarField::from_spectral(u1s.grid(), dissipation(g, b2s.spectral(), p.eta, p.beta))};
    return out;
}

double total_energy(const MhdState& s) {
    const double eu = l2_norm(s.u());
    const double eb = l2_norm(s.b());
    return eu * eu + eb * eb;
}

}  // namespace gmhd
