#pragma once

// Core model: incompressible 2D magnetohydrodynamics with fractional
// dissipation of order 2*alpha on the velocity and 2*beta on the magnetic
// field.  The primary prognostic pair is (w, j) = (curl u, curl b); the
// velocity formulation is kept alongside as an independent cross-check.

#include "gmhd/spectral.hpp"

namespace gmhd {

struct SimParams {
    double nu = 1.0;     // kinetic dissipation coefficient
    double eta = 1.0;    // magnetic diffusion coefficient
    double alpha = 1.0;  // kinetic dissipation order (Lambda^{2*alpha})
    double beta = 1.0;   // magnetic diffusion order (Lambda^{2*beta})
    int n = 64;          // grid points per dimension

    void validate() const;
};

// Velocity from vorticity on the torus: u = grad^perp psi with -lap psi = -w,
// i.e. u1 = i*k2*w/|k|^2, u2 = -i*k1*w/|k|^2 mode by mode.  Requires zero mean.
VectorField velocity_from_vorticity(const ScalarField& w);

// Scalar curl d1 v2 - d2 v1.
ScalarField curl2d(const VectorField& v);

// The current-stretching source in the j equation:
//   T = 2 * (d1 b1 * (d1 u2 + d2 u1) - d1 u1 * (d1 b2 + d2 b1)),
// evaluated pseudo-spectrally, dealiased, mean-free.
ScalarField stretching_term(const VectorField& u, const VectorField& b);

// Dynamical state in vorticity-current variables.  The mean modes of w and j
// are pinned to exactly zero on construction, and u, b are cached from the
// curl inversion so every consumer sees one consistent reconstruction.
class MhdState {
  public:
    static MhdState from_vorticity(ScalarField w, ScalarField j, double time);

    const ScalarField& w() const { return w_; }
    const ScalarField& j() const { return j_; }
    const VectorField& u() const { return u_; }
    const VectorField& b() const { return b_; }
    double time() const { return time_; }
    const GridPtr& grid() const { return w_.grid(); }

  private:
    MhdState() = default;
    ScalarField w_, j_;
    VectorField u_, b_;
    double time_ = 0.0;
};

// Right-hand side split into the stiff linear part (handled exactly by the
// integrating factor) and the dealiased nonlinear part.
struct Tendency {
    ScalarField dw_linear, dw_nonlinear;
    ScalarField dj_linear, dj_nonlinear;

    ScalarField dw_total() const { return dw_linear + dw_nonlinear; }
    ScalarField dj_total() const { return dj_linear + dj_nonlinear; }
};

Tendency rhs_vorticity_form(const MhdState& s, const SimParams& p);

// Velocity-form state and tendency, used to cross-validate the vorticity
// dynamics: curl of the velocity tendency must match the vorticity tendency
// to roundoff because the quadratic products are computed alias-free.
struct VelocityState {
    VectorField u, b;
    double time = 0.0;
};

struct VelocityTendency {
    VectorField du_linear, du_nonlinear;
    VectorField db_linear, db_nonlinear;
};

VelocityTendency rhs_velocity_form(const VelocityState& s, const SimParams& p);

// Total energy |u|_{L2}^2 + |b|_{L2}^2.
double total_energy(const MhdState& s);

}  // namespace gmhd
