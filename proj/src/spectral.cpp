#include "gmhd/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

namespace gmhd {
namespace {

// FFTW planning is not thread safe; execution through the new-array
// interface is.  All plans are created under this lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

SpectralGrid::SpectralGrid(int n) : n_(n) {
    if (!is_pow2(n) || n < 8)
        throw BadSpecError("grid size must be a power of two, at least 8");

    wrap_.resize(n);
    for (int i = 0; i < n; ++i) wrap_[i] = (i < n / 2) ? i : i - n;

    ksq_.resize(size());
    mask_.resize(size());
    for (std::size_t i = 0; i < size(); ++i) {
        const int kx = k1(i), ky = k2(i);
        ksq_[i] = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
        const int kmax = std::max(std::abs(kx), std::abs(ky));
        mask_[i] = (3 * kmax <= n) ? 1 : 0;
    }

    std::vector<std::complex<double>> a(size()), b(size());
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_2d(n, n, as_fftw(a.data()), as_fftw(b.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_2d(n, n, as_fftw(a.data()), as_fftw(b.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SpectralGrid::~SpectralGrid() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

std::size_t SpectralGrid::index_of(int kx, int ky) const {
    const int row = ((kx % n_) + n_) % n_;
    const int col = ((ky % n_) + n_) % n_;
    return static_cast<std::size_t>(row) * n_ + col;
}

void SpectralGrid::forward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (std::size_t i = 0; i < size(); ++i) out[i] *= scale;
}

void SpectralGrid::backward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                     as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

GridPtr make_grid(int n) {
    static std::mutex cache_mutex;
    static std::map<int, std::weak_ptr<const SpectralGrid>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto g = cache[n].lock()) return g;
    auto g = std::make_shared<const SpectralGrid>(n);
    cache[n] = g;
    return g;
}

ScalarField ScalarField::zero(GridPtr grid) {
    return from_spectral(std::move(grid), {});
}

ScalarField ScalarField::from_physical(GridPtr grid, std::vector<double> values) {
    if (!grid) throw BadSpecError("from_physical: null grid");
    if (values.size() != grid->size())
        throw BadSpecError("from_physical: value count does not match grid");
    ScalarField f;
    f.grid_ = std::move(grid);
    f.phys_ = std::move(values);
    return f;
}

ScalarField ScalarField::from_spectral(GridPtr grid, std::vector<std::complex<double>> coeffs) {
    if (!grid) throw BadSpecError("from_spectral: null grid");
    if (coeffs.empty()) coeffs.assign(grid->size(), {0.0, 0.0});
    if (coeffs.size() != grid->size())
        throw BadSpecError("from_spectral: coefficient count does not match grid");
    ScalarField f;
    f.grid_ = std::move(grid);
    f.spec_ = std::move(coeffs);
    return f;
}

const std::vector<double>& ScalarField::physical() const {
    if (!has_physical())
        throw MissingRepresentationError("physical representation not present; call to_physical");
    return phys_;
}

const std::vector<std::complex<double>>& ScalarField::spectral() const {
    if (!has_spectral())
        throw MissingRepresentationError("spectral representation not present; call to_spectral");
    return spec_;
}

ScalarField to_spectral(const ScalarField& f) {
    if (f.empty()) throw MissingRepresentationError("to_spectral: empty field");
    if (f.has_spectral()) return f;
    const auto& g = *f.grid();
    std::vector<std::complex<double>> in(g.size()), out(g.size());
    const auto& p = f.physical();
    for (std::size_t i = 0; i < g.size(); ++i) in[i] = {p[i], 0.0};
    g.forward(in.data(), out.data());
    ScalarField r = f;
    r.spec_ = std::move(out);
    return r;
}

ScalarField to_physical(const ScalarField& f) {
    if (f.empty()) throw MissingRepresentationError("to_physical: empty field");
    if (f.has_physical()) return f;
    const auto& g = *f.grid();
    std::vector<std::complex<double>> out(g.size());
    g.backward(f.spectral().data(), out.data());
    std::vector<double> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) vals[i] = out[i].real();
    ScalarField r = f;
    r.phys_ = std::move(vals);
    return r;
}

std::vector<double> physical_values(const ScalarField& f) {
    if (f.has_physical()) return f.physical();
    return to_physical(f).physical();
}

std::vector<std::complex<double>> spectral_values(const ScalarField& f) {
    if (f.has_spectral()) return f.spectral();
    return to_spectral(f).spectral();
}

ScalarField lambda_pow(const ScalarField& f, double r) {
    ScalarField s = to_spectral(f);
    if (r == 0.0) return s;
    if (r < 0.0) require_zero_mean(s, "lambda_pow with negative exponent");
    const auto& g = *s.grid();
    std::vector<std::complex<double>> c = s.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k2 = g.k_squared(i);
        c[i] = (k2 == 0.0) ? std::complex<double>{0.0, 0.0} : c[i] * std::pow(k2, 0.5 * r);
    }
    return ScalarField::from_spectral(s.grid(), std::move(c));
}

ScalarField inverse_laplacian(const ScalarField& f) {
    ScalarField s = to_spectral(f);
    require_zero_mean(s, "inverse_laplacian");
    const auto& g = *s.grid();
    std::vector<std::complex<double>> c = s.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k2 = g.k_squared(i);
        c[i] = (k2 == 0.0) ? std::complex<double>{0.0, 0.0} : -c[i] / k2;
    }
    return ScalarField::from_spectral(s.grid(), std::move(c));
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
    if (axis != 1 && axis != 2)
        throw ParameterOutOfRangeError("partial_derivative: axis must be 1 or 2");
    ScalarField s = to_spectral(f);
    const auto& g = *s.grid();
    std::vector<std::complex<double>> c = s.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k = (axis == 1) ? g.k1(i) : g.k2(i);
        c[i] = std::complex<double>{-k * c[i].imag(), k * c[i].real()};
    }
    return ScalarField::from_spectral(s.grid(), std::move(c));
}

ScalarField dealias(const ScalarField& f) {
    ScalarField s = to_spectral(f);
    const auto& g = *s.grid();
    std::vector<std::complex<double>> c = s.spectral();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!g.retained(i)) c[i] = {0.0, 0.0};
    return ScalarField::from_spectral(s.grid(), std::move(c));
}

ScalarField zero_mean(const ScalarField& f) {
    ScalarField s = to_spectral(f);
    std::vector<std::complex<double>> c = s.spectral();
    c[0] = {0.0, 0.0};
    return ScalarField::from_spectral(s.grid(), std::move(c));
}

VectorField dealias(const VectorField& v) {
    return {dealias(v.x), dealias(v.y)};
}

VectorField leray_project(const VectorField& v) {
    ScalarField sx = to_spectral(v.x);
    ScalarField sy = to_spectral(v.y);
    require_same_grid(sx, sy, "leray_project");
    const auto& g = *sx.grid();
    std::vector<std::complex<double>> cx = sx.spectral();
    std::vector<std::complex<double>> cy = sy.spectral();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double k2 = g.k_squared(i);
        if (k2 == 0.0) continue;  // the mean flows through untouched
        const double kx = g.k1(i), ky = g.k2(i);
        const std::complex<double> d = (kx * cx[i] + ky * cy[i]) / k2;
        cx[i] -= d * kx;
        cy[i] -= d * ky;
    }
    return {ScalarField::from_spectral(sx.grid(), std::move(cx)),
            ScalarField::from_spectral(sy.grid(), std::move(cy))};
}

ScalarField divergence(const VectorField& v) {
    ScalarField dx = partial_derivative(v.x, 1);
    ScalarField dy = partial_derivative(v.y, 2);
    return dx + dy;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    ScalarField sa = to_spectral(a), sb = to_spectral(b);
    require_same_grid(sa, sb, "operator+");
    std::vector<std::complex<double>> c = sa.spectral();
    const auto& cb = sb.spectral();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += cb[i];
    return ScalarField::from_spectral(sa.grid(), std::move(c));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    ScalarField sa = to_spectral(a), sb = to_spectral(b);
    require_same_grid(sa, sb, "operator-");
    std::vector<std::complex<double>> c = sa.spectral();
    const auto& cb = sb.spectral();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= cb[i];
    return ScalarField::from_spectral(sa.grid(), std::move(c));
}

ScalarField operator*(double s, const ScalarField& f) {
    ScalarField sf = to_spectral(f);
    std::vector<std::complex<double>> c = sf.spectral();
    for (auto& v : c) v *= s;
    return ScalarField::from_spectral(sf.grid(), std::move(c));
}

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    ScalarField pa = to_physical(a), pb = to_physical(b);
    require_same_grid(pa, pb, "pointwise_product");
    std::vector<double> v = pa.physical();
    const auto& w = pb.physical();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
    return ScalarField::from_physical(pa.grid(), std::move(v));
}

double l2_norm(const ScalarField& f) {
    if (f.empty()) return 0.0;
    if (f.has_spectral()) {
        double s = 0.0;
        for (const auto& c : f.spectral()) s += std::norm(c);
        return two_pi * std::sqrt(s);
    }
    const auto& p = f.physical();
    double s = 0.0;
    for (double v : p) s += v * v;
    const double dx = f.grid()->dx();
    return std::sqrt(s * dx * dx);
}

double l2_norm(const VectorField& v) {
    const double a = l2_norm(v.x), b = l2_norm(v.y);
    return std::sqrt(a * a + b * b);
}

double mean_value(const ScalarField& f) {
    if (f.has_spectral()) return f.spectral()[0].real();
    const auto& p = f.physical();
    double s = 0.0;
    for (double v : p) s += v;
    return s / static_cast<double>(p.size());
}

bool is_zero_mean(const ScalarField& f, double rel_tol) {
    ScalarField s = to_spectral(f);
    return std::abs(s.spectral()[0]) <= rel_tol * std::max(l2_norm(s), 1e-300);
}

bool is_divergence_free(const VectorField& v, double rel_tol) {
    const double d = l2_norm(divergence(v));
    return d <= rel_tol * std::max(l2_norm(v), 1e-300);
}

void require_zero_mean(const ScalarField& f, const char* who) {
    if (!is_zero_mean(f))
        throw NonzeroMeanError(std::string(who) + ": input must have zero mean");
}

void require_divergence_free(const VectorField& v, const char* who) {
    if (!is_divergence_free(v))
        throw NotDivergenceFreeError(std::string(who) + ": input must be divergence-free");
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* who) {
    if (a.grid().get() != b.grid().get() &&
        (!a.grid() || !b.grid() || a.grid()->n() != b.grid()->n()))
        throw GridMismatchError(std::string(who) + ": fields live on different grids");
}

int spectral_band(const ScalarField& f, double rel_tol) {
    ScalarField s = to_spectral(f);
    const auto& g = *s.grid();
    const auto& c = s.spectral();
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0;
    int band = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > rel_tol * peak) {
            const int km = std::max(std::abs(g.k1(i)), std::abs(g.k2(i)));
            band = std::max(band, km);
        }
    }
    return band;
}

ScalarField resample(const ScalarField& f, const GridPtr& target) {
    ScalarField s = to_spectral(f);
    const auto& gs = *s.grid();
    const auto& gt = *target;
    const auto& c = s.spectral();
    std::vector<std::complex<double>> out(gt.size(), {0.0, 0.0});
    const int lim = std::min(gs.n(), gt.n()) / 2;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int kx = gs.k1(i), ky = gs.k2(i);
        if (kx < -lim || kx >= lim || ky < -lim || ky >= lim) continue;
        out[gt.index_of(kx, ky)] = c[i];
    }
    return ScalarField::from_spectral(target, std::move(out));
}

namespace {

int next_pow2_at_least(int m) {
    int n = 8;
    while (n < m) n *= 2;
    return n;
}

}  // namespace

ScalarField oversampled_product(const ScalarField& a, const ScalarField& b) {
    require_same_grid(to_spectral(a), to_spectral(b), "oversampled_product");
    const int band = spectral_band(a) + spectral_band(b);
    const int m = next_pow2_at_least(2 * band + 2);
    GridPtr gm = make_grid(m);
    ScalarField pa = to_physical(resample(a, gm));
    ScalarField pb = to_physical(resample(b, gm));
    std::vector<double> v = pa.physical();
    const auto& w = pb.physical();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
    ScalarField prod = ScalarField::from_physical(gm, std::move(v));
    return to_spectral(prod);
}

double conjugate_symmetry_defect(const ScalarField& f) {
    ScalarField s = to_spectral(f);
    const auto& g = *s.grid();
    const auto& c = s.spectral();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t j = g.index_of(-g.k1(i), -g.k2(i));
        worst = std::max(worst, std::abs(c[i] - std::conj(c[j])));
    }
    return worst;
}

}  // namespace gmhd
