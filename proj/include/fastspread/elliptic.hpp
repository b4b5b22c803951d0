#pragma once

#include <vector>

#include "fastspread/field.hpp"

namespace fastspread::elliptic {

/// Chemoattractant concentration c solving -Laplace c = n, with its gradient.
struct ChemField {
  ScalarField c;
  std::vector<ScalarField> grad_c;  // dim components
};

/// Free-space solve on a FullSpace grid: zero-padded (size-doubled) circular
/// convolution with the free-space Green's function
///   2D: -(1/2 pi) log|x|,   3D: 1/(4 pi |x|),
/// with the gradient obtained from the analytic kernel gradient. Kernel
/// transforms are cached per grid.
ChemField inverse_laplacian_free(const ScalarField& n);

/// Channel solve: Fourier pseudo-inverse 1/|k|^2 on nonzero modes; the global
/// zero mode of c is gauged to 0 (only grad c enters the dynamics).
ChemField inverse_laplacian_channel(const ScalarField& n);

/// Dispatch on grid topology.
ChemField inverse_laplacian(const ScalarField& n);

}  // namespace fastspread::elliptic
