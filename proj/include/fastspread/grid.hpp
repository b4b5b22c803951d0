#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fastspread {

/// Domain topology of the truncated computational box.
///   FullSpace: every axis is a truncation of the real line, box [-L_i, L_i).
///   Channel:   axis 0 truncates the real line; the remaining axes are exactly
///              periodic with period 2*pi (half_length pi).
enum class Topology { FullSpace, Channel };

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform tensor grid on a truncated box. Row-major storage, axis 0 slowest.
struct GridSpec {
  int dim = 2;
  std::array<int, 3> n = {0, 0, 1};
  std::array<double, 3> half_length = {0.0, 0.0, 0.0};
  Topology topology = Topology::FullSpace;

  GridSpec() = default;
  GridSpec(int dim_, std::array<int, 3> n_, std::array<double, 3> half_length_,
           Topology topology_ = Topology::FullSpace)
      : dim(dim_), n(n_), half_length(half_length_), topology(topology_) {
    validate();
  }

  static GridSpec square(int points, double half_len,
                         Topology topo = Topology::FullSpace) {
    return GridSpec(2, {points, points, 1}, {half_len, half_len, 0.0}, topo);
  }
  static GridSpec cube(int points, double half_len) {
    return GridSpec(3, {points, points, points},
                    {half_len, half_len, half_len}, Topology::FullSpace);
  }
  /// 2D channel R x T: axis 0 truncated at +-half_len_x, axis 1 periodic 2*pi.
  static GridSpec channel(int nx, double half_len_x, int ny) {
    return GridSpec(2, {nx, ny, 1}, {half_len_x, M_PI, 0.0}, Topology::Channel);
  }
  static GridSpec channel3(int nx, double half_len_x, int ny, int nz) {
    return GridSpec(3, {nx, ny, nz}, {half_len_x, M_PI, M_PI},
                    Topology::Channel);
  }

  void validate() const {
    if (dim != 2 && dim != 3) throw std::invalid_argument("GridSpec: dim must be 2 or 3");
    for (int a = 0; a < dim; ++a) {
      if (n[a] < 8 || n[a] % 2 != 0)
        throw std::invalid_argument("GridSpec: n[" + std::to_string(a) + "] must be even and >= 8");
      if (!(half_length[a] > 0.0))
        throw std::invalid_argument("GridSpec: half_length must be positive");
    }
    if (dim == 2 && n[2] != 1)
      throw std::invalid_argument("GridSpec: n[2] must be 1 in 2D");
    if (topology == Topology::Channel) {
      for (int a = 1; a < dim; ++a)
        if (std::abs(half_length[a] - M_PI) > 1e-14)
          throw std::invalid_argument("GridSpec: channel transverse half_length must be pi");
    }
  }

  /// All axis sizes are powers of two (required by the transform path).
  bool spectral_capable() const {
    for (int a = 0; a < dim; ++a)
      if (!is_power_of_two(n[a])) return false;
    return true;
  }

  double spacing(int axis) const { return 2.0 * half_length[axis] / n[axis]; }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing(a);
    return v;
  }

  /// Node coordinate, measured from the box center: x = -L + i*h.
  double coord(int axis, int index) const {
    return -half_length[axis] + index * spacing(axis);
  }

  /// Signed integer mode number for spectral index idx, in [-n/2, n/2).
  int mode_number(int axis, int idx) const {
    return idx < n[axis] / 2 ? idx : idx - n[axis];
  }

  /// Wavenumber of mode m: k = pi * m / L (period 2L).
  double wavenumber(int axis, int idx) const {
    return M_PI * mode_number(axis, idx) / half_length[axis];
  }

  /// Wavenumber for odd-order derivative multipliers: the unpaired Nyquist
  /// mode is treated as zero so derivatives of real data stay real.
  double deriv_wavenumber(int axis, int idx) const {
    return idx == n[axis] / 2 ? 0.0 : wavenumber(axis, idx);
  }

  /// Largest resolved wavenumber magnitude on an axis.
  double max_wavenumber(int axis) const {
    return M_PI * (n[axis] / 2) / half_length[axis];
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
  }

  /// Row-major stride of an axis (axis 0 slowest).
  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < dim; ++a) s *= static_cast<std::size_t>(n[a]);
    return s;
  }

  std::size_t index(int i0, int i1, int i2 = 0) const {
    if (dim == 2) return static_cast<std::size_t>(i0) * n[1] + i1;
    return (static_cast<std::size_t>(i0) * n[1] + i1) * static_cast<std::size_t>(n[2]) + i2;
  }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace fastspread
