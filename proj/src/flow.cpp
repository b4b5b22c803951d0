#include "fastspread/flow.hpp"

namespace fastspread {

std::size_t transverse_size(const GridSpec& grid) {
  if (grid.topology != Topology::Channel)
    throw std::invalid_argument("transverse_size: channel grids only");
  std::size_t s = 1;
  for (int a = 1; a < grid.dim; ++a) s *= static_cast<std::size_t>(grid.n[a]);
  return s;
}

std::vector<double> sample_shear_profile(
    const GridSpec& grid, const std::function<double(double, double)>& u) {
  std::vector<double> out(transverse_size(grid));
  if (grid.dim == 2) {
    for (int j = 0; j < grid.n[1]; ++j) out[j] = u(grid.coord(1, j), 0.0);
  } else {
    for (int j1 = 0; j1 < grid.n[1]; ++j1)
      for (int j2 = 0; j2 < grid.n[2]; ++j2)
        out[static_cast<std::size_t>(j1) * grid.n[2] + j2] =
            u(grid.coord(1, j1), grid.coord(2, j2));
  }
  return out;
}

}  // namespace fastspread
