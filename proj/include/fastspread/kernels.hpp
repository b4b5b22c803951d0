#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fastspread/field.hpp"
#include "fastspread/flow.hpp"

// Closed-form Green's functions of the rescaled hyperbolic advection-diffusion
// equation
//     d_t rho + (-x_-, x_d) . grad rho = A^{-1} Laplace rho,
// their sup-norm envelopes, and derived quantities (dissipation times, plateau
// detection for shear profiles). Time arguments are in the rescaled frame
// (t' = A t) unless stated otherwise.

namespace fastspread::kernels {

/// 2D kernel value:
///   K(t,A,x,x') = A/(4 pi sinh t) *
///     exp{ -(x2 e^{-t} - x2')^2 / (2 A^{-1}(1-e^{-2t}))
///          -(x1 e^{t}  - x1')^2 / (2 A^{-1}(e^{2t}-1)) }.
double hyperbolic_kernel_2d(double t, double A, std::array<double, 2> x,
                            std::array<double, 2> xp);

/// 3D kernel value:
///   K(t,A,x,x') = A^{3/2} / (2^{5/2} pi^{3/2} sqrt(e^{2t}-1) (1-e^{-t})) *
///     exp{ -(x3 e^{-t} - x3')^2 / (2 A^{-1}(1-e^{-2t}))
///          -|(x1,x2) e^{t/2} - (x1',x2')|^2 / (4 A^{-1}(e^{t}-1)) }.
double hyperbolic_kernel_3d(double t, double A, std::array<double, 3> x,
                            std::array<double, 3> xp);

/// Pointwise supremum of the kernel (the x = x' = 0 value).
double kernel_sup(int dim, double t, double A);

/// L1->Linf envelope constant: ||S_t f||_inf <= envelope * ||f||_1.
/// dim 2: A/sinh t; dim 3: A^{3/2}/(sqrt(e^{2t}-1)(1-e^{-t})).
/// Exceeds kernel_sup by 4 pi (2D) and 2^{5/2} pi^{3/2} (3D).
double linf_envelope(double t, double A, int dim);

/// Per-axis factor of the separable kernel: the evolved 1D profile is
///   rho(x) = c * Integral exp(-(s x - x')^2 / (2 w2)) rho0(x') dx'.
struct AxisKernel {
  double s;   // back-trace scale e^{rt} (contracting) or e^{-t} (stretching)
  double w2;  // Gaussian variance in the scaled variable
  double c;   // normalization prefactor
};

/// Factor for one axis of the d-dimensional kernel. Contracting axes have
/// rate 1/(d-1), the stretching axis rate 1.
AxisKernel axis_kernel(int dim, int axis, double t, double A);

/// Evaluate the kernel integral by separable per-axis 1D Gaussian quadrature
/// in the scaled coordinates (O(N^{d+1}) instead of O(N^{2d})). Data outside
/// the box is treated as zero. FullSpace topology, t > 0.
ScalarField apply_kernel(const ScalarField& f, double t, double A);

struct DissipationEstimate {
  double tau = 0.0;  // original (unrescaled) time
  std::vector<std::pair<double, double>> operator_norm_curve;  // (t, ||S_t||)
};

/// Closed-form dissipation time of the 2D hyperbolic flow in original time:
/// the L1->Linf norm equals the kernel sup A/(4 pi sinh(A tau)), so
/// tau = asinh(A/(2 pi)) / A.
double dissipation_time_hyperbolic_2d(double A);

/// Exact dissipation estimate (closed-form curve); hyperbolic 2D only.
DissipationEstimate dissipation_time(const FlowSpec& flow);

/// Numeric estimate from a near-delta datum (Gaussian with sigma = 3h).
/// Hyperbolic flows evolve the datum with the exact kernel; shear flows run
/// the pseudo-spectral solver on `grid` and bisect the monotone curve.
/// Throws if the curve does not drop below 1/2 within `horizon`
/// (original time).
DissipationEstimate dissipation_time_near_delta(const FlowSpec& flow,
                                                const GridSpec& grid,
                                                double horizon);

struct PlateauResult {
  bool empty = false;  // true iff some derivative exceeds tol at every point
  std::optional<std::array<double, 2>> witness;  // transverse coords if not
};

/// Check whether the plateau set of a shear profile (points where all
/// derivatives up to max_order vanish within tol) is empty. The profile is
/// sampled on the transverse section of `grid`; derivatives are spectral.
PlateauResult plateau_check(const GridSpec& grid,
                            const std::vector<double>& profile,
                            int max_order = 4, double tol = 1e-6);

}  // namespace fastspread::kernels
