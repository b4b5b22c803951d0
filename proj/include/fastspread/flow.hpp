#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fastspread/grid.hpp"

namespace fastspread {

/// Advecting velocity field with amplitude A.
///
/// Hyperbolic: u(x) = (-x_-, x_d) on R^d with x_- = (x_1,..,x_{d-1})/(d-1);
///   contracts the first d-1 axes at rate 1/(d-1) and stretches the last at
///   rate 1. Divergence-free by construction.
/// Shear: u(x) = (u(x_-), 0) on R x T^{d-1}; the profile is sampled on the
///   transverse grid (row-major over axes 1..d-1).
///
/// amplitude == 0 disables advection (used as the no-flow baseline).
struct FlowSpec {
  enum class Kind { Hyperbolic, Shear };

  Kind kind = Kind::Hyperbolic;
  double amplitude = 0.0;
  std::vector<double> profile;  // shear only

  static FlowSpec hyperbolic(double A) {
    if (A < 0.0) throw std::invalid_argument("FlowSpec: amplitude must be >= 0");
    FlowSpec f;
    f.kind = Kind::Hyperbolic;
    f.amplitude = A;
    return f;
  }

  static FlowSpec shear(std::vector<double> profile, double A) {
    if (A < 0.0) throw std::invalid_argument("FlowSpec: amplitude must be >= 0");
    FlowSpec f;
    f.kind = Kind::Shear;
    f.amplitude = A;
    f.profile = std::move(profile);
    return f;
  }
};

/// Sample u on the transverse section of a channel grid. For 2D the callable
/// receives (x1, 0); for 3D (x1, x2).
std::vector<double> sample_shear_profile(
    const GridSpec& grid, const std::function<double(double, double)>& u);

/// Number of transverse nodes of a channel grid.
std::size_t transverse_size(const GridSpec& grid);

}  // namespace fastspread
