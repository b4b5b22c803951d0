#include "fastspread/fieldmath.hpp"

#include <cmath>
#include <stdexcept>

#include "fastspread/ops.hpp"

namespace fastspread {

ScalarField sample(const GridSpec& grid,
                   const std::function<double(double, double, double)>& f) {
  ScalarField out(grid);
  const int n1 = grid.n[1], n2 = grid.n[2];
#pragma omp parallel for schedule(static)
  for (long long i0 = 0; i0 < grid.n[0]; ++i0) {
    const double x0 = grid.coord(0, static_cast<int>(i0));
    for (int i1 = 0; i1 < n1; ++i1) {
      const double x1 = grid.coord(1, i1);
      for (int i2 = 0; i2 < n2; ++i2) {
        const double x2 = grid.dim == 3 ? grid.coord(2, i2) : 0.0;
        out.values[grid.index(static_cast<int>(i0), i1, i2)] = f(x0, x1, x2);
      }
    }
  }
  return out;
}

double integrate(const ScalarField& f) {
  return f.grid.cell_volume() * ops::sum(f.values);
}

double lp_norm(const ScalarField& f, double p) {
  if (p == kInf) return ops::max_abs(f.values);
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
  const double s = ops::indexed_sum(f.values.size(), [&](std::size_t i) {
    return std::pow(std::abs(f.values[i]), p);
  });
  return std::pow(f.grid.cell_volume() * s, 1.0 / p);
}

double second_moment(const ScalarField& f) {
  const GridSpec& g = f.grid;
  if (g.topology != Topology::FullSpace)
    throw std::domain_error("second_moment: unsupported on channel domains");
  const double s = ops::indexed_sum(f.values.size(), [&](std::size_t u) {
    std::size_t rem = u;
    double r2 = 0.0;
    for (int a = g.dim - 1; a >= 0; --a) {
      const int idx = static_cast<int>(rem % g.n[a]);
      rem /= g.n[a];
      const double x = g.coord(a, idx);
      r2 += x * x;
    }
    return f.values[u] * r2;
  });
  return g.cell_volume() * s;
}

double min_value(const ScalarField& f) { return ops::min(f.values); }
double max_abs_value(const ScalarField& f) { return ops::max_abs(f.values); }

ScalarField sample_gaussian(const GridSpec& grid, std::array<double, 3> center,
                            double sigma, double mass) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_gaussian: sigma must be positive");
  if (mass < 0.0) throw std::invalid_argument("sample_gaussian: mass must be nonnegative");
  const double amp = mass * std::pow(2.0 * M_PI * sigma * sigma, -grid.dim / 2.0);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  return sample(grid, [&](double x0, double x1, double x2) {
    const double d0 = x0 - center[0];
    const double d1 = x1 - center[1];
    const double d2 = grid.dim == 3 ? x2 - center[2] : 0.0;
    return amp * std::exp(-(d0 * d0 + d1 * d1 + d2 * d2) * inv2s2);
  });
}

double boundary_shell_ratio(const ScalarField& f, int axis) {
  const GridSpec& g = f.grid;
  const double edge = 0.9 * g.half_length[axis];
  double shell = 0.0;
  const std::size_t total = g.size();
#pragma omp parallel for schedule(static) reduction(max : shell)
  for (long long i = 0; i < static_cast<long long>(total); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const int idx = static_cast<int>((u / g.stride(axis)) % g.n[axis]);
    if (std::abs(g.coord(axis, idx)) >= edge)
      shell = std::max(shell, std::abs(f.values[u]));
  }
  const double global = max_abs_value(f);
  return global > 0.0 ? shell / global : 0.0;
}

double boundary_shell_ratio(const ScalarField& f) {
  const int naxes = f.grid.topology == Topology::Channel ? 1 : f.grid.dim;
  double worst = 0.0;
  for (int a = 0; a < naxes; ++a)
    worst = std::max(worst, boundary_shell_ratio(f, a));
  return worst;
}

}  // namespace fastspread
