#pragma once

// Fourier-side plumbing for scalar and vector fields on the 2*pi-periodic
// square torus: wavenumber bookkeeping, FFT transforms, and the linear
// spectral operators (fractional Laplacian powers, derivatives, the 2/3-rule
// dealias mask, Leray projection).
//
// Conventions, used everywhere downstream:
//   f(x) = sum_k c(k) exp(i k.x),  k integer pair in [-n/2, n/2)^2,
//   so c(0,0) is the average of f over the box.  Parseval then reads
//   integral of f^2 = (2*pi)^2 * sum_k |c(k)|^2.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "gmhd/errors.hpp"

namespace gmhd {

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

class SpectralGrid {
  public:
    explicit SpectralGrid(int n);
    ~SpectralGrid();
    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;

    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
    double dx() const { return two_pi / n_; }

    // Largest wavenumber (in the max norm) kept by the 2/3-rule mask.
    int max_retained() const { return n_ / 3; }

    // Signed wavenumbers of the mode stored at flat index i = row * n + col.
    int k1(std::size_t i) const { return wrap_[i / static_cast<std::size_t>(n_)]; }
    int k2(std::size_t i) const { return wrap_[i % static_cast<std::size_t>(n_)]; }
    double k_squared(std::size_t i) const { return ksq_[i]; }
    bool retained(std::size_t i) const { return mask_[i] != 0; }

    // Flat index of a signed mode; wavenumbers are taken modulo n, so the
    // Nyquist row is reachable from either sign.
    std::size_t index_of(int kx, int ky) const;

    // Physical coordinates of grid node (a, b).
    double x1(int a) const { return dx() * a; }
    double x2(int b) const { return dx() * b; }

    // Normalized analysis transform: out(k) become the coefficients c(k),
    // i.e. the raw DFT divided by n^2.  Thread safe; buffers may not alias.
    void forward(const std::complex<double>* in, std::complex<double>* out) const;

    // Unnormalized synthesis transform, the exact inverse of forward().
    void backward(const std::complex<double>* in, std::complex<double>* out) const;

  private:
    int n_ = 0;
    std::vector<int> wrap_;
    std::vector<double> ksq_;
    std::vector<unsigned char> mask_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

// Shared, cached grid handle.  n must be a power of two, at least 8.
GridPtr make_grid(int n);

// A real scalar field carrying a physical representation (node values), a
// spectral one (Fourier coefficients), or both.  Value type: operations
// return new fields and never mutate their inputs.
class ScalarField {
  public:
    ScalarField() = default;

    static ScalarField zero(GridPtr grid);
    static ScalarField from_physical(GridPtr grid, std::vector<double> values);
    static ScalarField from_spectral(GridPtr grid, std::vector<std::complex<double>> coeffs);

    const GridPtr& grid() const { return grid_; }
    bool empty() const { return grid_ == nullptr; }
    bool has_physical() const { return !phys_.empty(); }
    bool has_spectral() const { return !spec_.empty(); }

    const std::vector<double>& physical() const;
    const std::vector<std::complex<double>>& spectral() const;

  private:
    friend ScalarField to_spectral(const ScalarField&);
    friend ScalarField to_physical(const ScalarField&);

    GridPtr grid_;
    std::vector<double> phys_;
    std::vector<std::complex<double>> spec_;
};

struct VectorField {
    ScalarField x;  // component along axis 1
    ScalarField y;  // component along axis 2
};

// Representation changes (no-ops when the target is already present).
ScalarField to_spectral(const ScalarField& f);
ScalarField to_physical(const ScalarField& f);

// By-value accessors, safe to call on temporaries; they transform on demand.
std::vector<double> physical_values(const ScalarField& f);
std::vector<std::complex<double>> spectral_values(const ScalarField& f);

// Linear spectral operators.  All accept either representation and return a
// spectral-only result.
ScalarField lambda_pow(const ScalarField& f, double r);
ScalarField inverse_laplacian(const ScalarField& f);
ScalarField partial_derivative(const ScalarField& f, int axis);
ScalarField dealias(const ScalarField& f);
ScalarField zero_mean(const ScalarField& f);

VectorField dealias(const VectorField& v);
VectorField leray_project(const VectorField& v);
ScalarField divergence(const VectorField& v);

// Spectral linear arithmetic.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& f);

// Pointwise product on the nodes; result is physical-only.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);

// L2 norm over the box, from whichever representation is cheapest.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);

double mean_value(const ScalarField& f);
bool is_zero_mean(const ScalarField& f, double rel_tol = 1e-12);
bool is_divergence_free(const VectorField& v, double rel_tol = 1e-8);

// Throwing guards used at API boundaries.
void require_zero_mean(const ScalarField& f, const char* who);
void require_divergence_free(const VectorField& v, const char* who);
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* who);

// Largest max-norm wavenumber whose coefficient exceeds rel_tol times the
// largest coefficient magnitude; 0 for an (effectively) constant field.
int spectral_band(const ScalarField& f, double rel_tol = 1e-14);

// Spectral injection onto another grid: modes representable on the target
// are copied, everything else is zero (upsampling keeps the field exactly).
ScalarField resample(const ScalarField& f, const GridPtr& target);

// Product evaluated on a grid fine enough that no aliasing occurs, so the
// coefficients of the result are exact for band-limited inputs.  The result
// lives on that finer grid with both representations filled in.
ScalarField oversampled_product(const ScalarField& a, const ScalarField& b);

// Largest conjugate-symmetry defect max_k |c(k) - conj(c(-k))|; a real field
// has this at roundoff level.
double conjugate_symmetry_defect(const ScalarField& f);

}  // namespace gmhd
