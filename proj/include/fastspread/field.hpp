#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "fastspread/grid.hpp"

namespace fastspread {

/// Real scalar density sampled on a GridSpec, row-major, one value per node.
/// Value-semantic snapshot: operations return new fields, never alias.
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
  ScalarField(const GridSpec& g, std::vector<double> v)
      : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("ScalarField: value count does not match grid");
  }

  double& at(int i0, int i1, int i2 = 0) { return values[grid.index(i0, i1, i2)]; }
  double at(int i0, int i1, int i2 = 0) const { return values[grid.index(i0, i1, i2)]; }
  std::size_t size() const { return values.size(); }
};

/// Evaluate f(x) at every node. f receives the node coordinates (x0,x1,x2);
/// x2 is 0 for 2D grids.
ScalarField sample(const GridSpec& grid,
                   const std::function<double(double, double, double)>& f);

/// Complex Fourier coefficients of a real field (full c2c spectrum,
/// conjugate-symmetric up to roundoff). Mode layout matches GridSpec indices.
struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> modes;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), modes(g.size()) {}
};

}  // namespace fastspread
