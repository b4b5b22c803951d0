#pragma once

#include "fastspread/evolve.hpp"

// Independent low-tech references used to cross-validate the spectral path:
// a small-grid finite-difference solver, a direct-quadrature kernel
// application, and the shear factorization identity.

namespace fastspread::oracle {

/// Explicit-Euler finite-difference run (second-order central stencils,
/// periodic wrap) producing the same trajectory format as evolve::run.
/// Restricted to grids with at most 64 points per axis.
/// dt obeys 0.2 h^2/(2 d kappa) plus an advective limit.
evolve::Trajectory fd_run(const evolve::SimConfig& config,
                          const ScalarField& initial);

/// Direct O(N^4) double-sum quadrature of the 2D kernel integral; ground
/// truth for kernels::apply_kernel. Grids above 48 points per axis are
/// rejected (cost guard).
ScalarField kernel_quadrature_apply(const ScalarField& f, double t, double A);

/// Verify that the shear solution factorizes as the x1 heat kernel applied to
/// the solution without x1 diffusion:
///   rho(t) = heat_x1(t) * psi(t),  d_t psi + A u(x2) d_x1 psi = d_x2x2 psi.
/// Both sides are computed with the same fixed-dt split scheme; returns the
/// relative Linf difference.
double shear_factorization_check(const ScalarField& rho0,
                                 const std::vector<double>& profile, double A,
                                 double t);

}  // namespace fastspread::oracle
