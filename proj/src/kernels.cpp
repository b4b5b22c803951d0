#include "fastspread/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fastspread/fieldmath.hpp"
#include "fastspread/ops.hpp"

namespace fastspread::kernels {

double hyperbolic_kernel_2d(double t, double A, std::array<double, 2> x,
                            std::array<double, 2> xp) {
  if (!(t > 0.0)) throw std::domain_error("hyperbolic_kernel_2d: t must be > 0");
  const double pre = A / (4.0 * M_PI * std::sinh(t));
  const double d2 = x[1] * std::exp(-t) - xp[1];
  const double d1 = x[0] * std::exp(t) - xp[0];
  const double e2 = d2 * d2 / (2.0 / A * (1.0 - std::exp(-2.0 * t)));
  const double e1 = d1 * d1 / (2.0 / A * (std::exp(2.0 * t) - 1.0));
  return pre * std::exp(-e2 - e1);
}

double hyperbolic_kernel_3d(double t, double A, std::array<double, 3> x,
                            std::array<double, 3> xp) {
  if (!(t > 0.0)) throw std::domain_error("hyperbolic_kernel_3d: t must be > 0");
  const double pre = kernel_sup(3, t, A);
  const double d3 = x[2] * std::exp(-t) - xp[2];
  const double e3 = d3 * d3 / (2.0 / A * (1.0 - std::exp(-2.0 * t)));
  const double g1 = x[0] * std::exp(t / 2.0) - xp[0];
  const double g2 = x[1] * std::exp(t / 2.0) - xp[1];
  const double e12 = (g1 * g1 + g2 * g2) / (4.0 / A * (std::exp(t) - 1.0));
  return pre * std::exp(-e3 - e12);
}

double kernel_sup(int dim, double t, double A) {
  if (!(t > 0.0)) throw std::domain_error("kernel_sup: t must be > 0");
  if (dim == 2) return A / (4.0 * M_PI * std::sinh(t));
  return std::pow(A, 1.5) /
         (std::pow(2.0, 2.5) * std::pow(M_PI, 1.5) *
          std::sqrt(std::exp(2.0 * t) - 1.0) * (1.0 - std::exp(-t)));
}

double linf_envelope(double t, double A, int dim) {
  if (!(t > 0.0)) throw std::domain_error("linf_envelope: t must be > 0");
  if (dim == 2) return A / std::sinh(t);
  return std::pow(A, 1.5) /
         (std::sqrt(std::exp(2.0 * t) - 1.0) * (1.0 - std::exp(-t)));
}

AxisKernel axis_kernel(int dim, int axis, double t, double A) {
  if (!(t > 0.0)) throw std::domain_error("axis_kernel: t must be > 0");
  AxisKernel k;
  if (axis == dim - 1) {
    // stretching axis, rate 1
    k.s = std::exp(-t);
    k.w2 = (1.0 - std::exp(-2.0 * t)) / A;
    k.c = 1.0 / std::sqrt(2.0 * M_PI / A * (std::exp(2.0 * t) - 1.0));
  } else {
    // contracting axis, rate r = 1/(d-1)
    const double r = 1.0 / (dim - 1);
    k.s = std::exp(r * t);
    k.w2 = (std::exp(2.0 * r * t) - 1.0) / (r * A);
    k.c = 1.0 / std::sqrt(2.0 * M_PI / (r * A) * (1.0 - std::exp(-2.0 * r * t)));
  }
  return k;
}

ScalarField apply_kernel(const ScalarField& f, double t, double A) {
  const GridSpec& g = f.grid;
  if (g.topology != Topology::FullSpace)
    throw std::domain_error("apply_kernel: unsupported on channel domains");
  if (!(t > 0.0)) throw std::domain_error("apply_kernel: t must be > 0");

  ScalarField cur = f;
  ScalarField next(g);
  std::vector<double> W;
  for (int axis = 0; axis < g.dim; ++axis) {
    const AxisKernel ak = axis_kernel(g.dim, axis, t, A);
    const int n = g.n[axis];
    const double h = g.spacing(axis);
    W.assign(static_cast<std::size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
      const double y = ak.s * g.coord(axis, static_cast<int>(i));
      double* row = W.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        const double d = y - g.coord(axis, j);
        row[j] = ak.c * h * std::exp(-d * d / (2.0 * ak.w2));
      }
    }
    ops::apply_axis_operator(g, axis, W, cur.values, next.values);
    std::swap(cur.values, next.values);
  }
  return cur;
}

namespace {

// Spectral derivative stack of a periodic profile on the transverse section:
// derivs[o][p] = o-th derivative at point p (1D transverse), or all mixed
// partials of total order <= max_order (2D transverse).
std::vector<std::vector<double>> profile_derivatives_1d(
    const std::vector<double>& u, int n, int max_order) {
  std::vector<std::complex<double>> hat(n), work(n);
  for (int j = 0; j < n; ++j) hat[j] = u[j];
  fftw_plan fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(hat.data()),
                                   reinterpret_cast<fftw_complex*>(hat.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  std::vector<std::vector<double>> out;
  fftw_plan bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(work.data()),
                                   reinterpret_cast<fftw_complex*>(work.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
  for (int order = 1; order <= max_order; ++order) {
    for (int j = 0; j < n; ++j) {
      const int m = j < n / 2 ? j : j - n;  // period 2 pi: k = m
      work[j] = hat[j] * std::pow(std::complex<double>(0.0, m), order);
    }
    fftw_execute(bwd);
    std::vector<double> d(n);
    for (int j = 0; j < n; ++j) d[j] = work[j].real() / n;
    out.push_back(std::move(d));
  }
  fftw_destroy_plan(bwd);
  return out;
}

std::vector<std::vector<double>> profile_derivatives_2d(
    const std::vector<double>& u, int n1, int n2, int max_order) {
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  std::vector<std::complex<double>> hat(total), work(total);
  for (std::size_t j = 0; j < total; ++j) hat[j] = u[j];
  fftw_plan fwd = fftw_plan_dft_2d(n1, n2,
                                   reinterpret_cast<fftw_complex*>(hat.data()),
                                   reinterpret_cast<fftw_complex*>(hat.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  fftw_plan bwd = fftw_plan_dft_2d(n1, n2,
                                   reinterpret_cast<fftw_complex*>(work.data()),
                                   reinterpret_cast<fftw_complex*>(work.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
  std::vector<std::vector<double>> out;
  for (int total_order = 1; total_order <= max_order; ++total_order) {
    for (int o1 = 0; o1 <= total_order; ++o1) {
      const int o2 = total_order - o1;
      for (int j1 = 0; j1 < n1; ++j1) {
        const int m1 = j1 < n1 / 2 ? j1 : j1 - n1;
        for (int j2 = 0; j2 < n2; ++j2) {
          const int m2 = j2 < n2 / 2 ? j2 : j2 - n2;
          const std::size_t idx = static_cast<std::size_t>(j1) * n2 + j2;
          work[idx] = hat[idx] * std::pow(std::complex<double>(0.0, m1), o1) *
                      std::pow(std::complex<double>(0.0, m2), o2);
        }
      }
      fftw_execute(bwd);
      std::vector<double> d(total);
      for (std::size_t j = 0; j < total; ++j) d[j] = work[j].real() / static_cast<double>(total);
      out.push_back(std::move(d));
    }
  }
  fftw_destroy_plan(bwd);
  return out;
}

}  // namespace

PlateauResult plateau_check(const GridSpec& grid,
                            const std::vector<double>& profile, int max_order,
                            double tol) {
  if (max_order < 1) throw std::invalid_argument("plateau_check: max_order must be >= 1");
  const std::size_t tsize = transverse_size(grid);
  if (profile.size() != tsize)
    throw std::invalid_argument("plateau_check: profile size does not match transverse grid");

  std::vector<std::vector<double>> derivs;
  if (grid.dim == 2)
    derivs = profile_derivatives_1d(profile, grid.n[1], max_order);
  else
    derivs = profile_derivatives_2d(profile, grid.n[1], grid.n[2], max_order);

  PlateauResult res;
  for (std::size_t p = 0; p < tsize; ++p) {
    bool excited = false;
    for (const auto& d : derivs) {
      if (std::abs(d[p]) > tol) {
        excited = true;
        break;
      }
    }
    if (!excited) {
      res.empty = false;
      if (grid.dim == 2) {
        res.witness = {grid.coord(1, static_cast<int>(p)), 0.0};
      } else {
        const int j1 = static_cast<int>(p) / grid.n[2];
        const int j2 = static_cast<int>(p) % grid.n[2];
        res.witness = {grid.coord(1, j1), grid.coord(2, j2)};
      }
      return res;
    }
  }
  res.empty = true;
  return res;
}

}  // namespace fastspread::kernels
