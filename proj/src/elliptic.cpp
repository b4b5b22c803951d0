#include "fastspread/elliptic.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "fastspread/fft.hpp"
#include "fastspread/ops.hpp"

namespace fastspread::elliptic {

namespace {

// Free-space solver state for one grid: r2c plans on the size-doubled box and
// the transforms of the Green's function and its gradient. The even kernel
// transform is real; the odd gradient kernel transforms are imaginary, so only
// the relevant part is stored.
struct FreeSolver {
  GridSpec grid;
  std::array<int, 3> m = {1, 1, 1};  // doubled sizes
  std::size_t real_size = 0;
  std::size_t cplx_size = 0;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> green_hat;                 // real part
  std::array<std::vector<double>, 3> grad_hat;   // imaginary part per axis

  std::size_t real_index(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * m[1] + i1) * m[2] + i2;
  }
  std::size_t cplx_index(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * m[1] + i1) * (m[2] / 2 + 1) + i2;
  }

  explicit FreeSolver(const GridSpec& g) : grid(g) {
    for (int a = 0; a < 3; ++a) m[a] = a < g.dim ? 2 * g.n[a] : 1;
    real_size = static_cast<std::size_t>(m[0]) * m[1] * m[2];
    cplx_size = static_cast<std::size_t>(m[0]) * m[1] * (m[2] / 2 + 1);

    std::vector<double> rbuf(real_size);
    std::vector<std::complex<double>> cbuf(cplx_size);
    if (g.dim == 2) {
      fwd = fftw_plan_dft_r2c_2d(m[0], m[1], rbuf.data(),
                                 reinterpret_cast<fftw_complex*>(cbuf.data()),
                                 FFTW_ESTIMATE);
      bwd = fftw_plan_dft_c2r_2d(m[0], m[1],
                                 reinterpret_cast<fftw_complex*>(cbuf.data()),
                                 rbuf.data(), FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_r2c_3d(m[0], m[1], m[2], rbuf.data(),
                                 reinterpret_cast<fftw_complex*>(cbuf.data()),
                                 FFTW_ESTIMATE);
      bwd = fftw_plan_dft_c2r_3d(m[0], m[1], m[2],
                                 reinterpret_cast<fftw_complex*>(cbuf.data()),
                                 rbuf.data(), FFTW_ESTIMATE);
    }
    if (!fwd || !bwd) throw std::runtime_error("elliptic: plan creation failed");
    build_kernels();
  }

  // Min-image displacement of doubled-torus index q on an axis, in cells.
  static int offset(int q, int mm) { return q <= mm / 2 ? q : q - mm; }

  void build_kernels() {
    const int d = grid.dim;
    const double h0 = grid.spacing(0), h1 = grid.spacing(1);
    const double h2 = d == 3 ? grid.spacing(2) : 1.0;

    // cell-averaged value at the singularity (equivalent disc / ball)
    double self_green;
    if (d == 2) {
      const double req = std::sqrt(h0 * h1 / M_PI);
      self_green = -(1.0 / (2.0 * M_PI)) * (std::log(req) - 0.5);
    } else {
      const double req = std::cbrt(3.0 * h0 * h1 * h2 / (4.0 * M_PI));
      self_green = 3.0 / (8.0 * M_PI * req);
    }

    std::vector<double> rbuf(real_size);
    std::vector<std::complex<double>> cbuf(cplx_size);

    auto fill_and_transform = [&](auto&& value, std::vector<double>& out,
                                  bool take_real) {
#pragma omp parallel for schedule(static)
      for (long long i0 = 0; i0 < m[0]; ++i0) {
        const double x0 = offset(static_cast<int>(i0), m[0]) * h0;
        for (int i1 = 0; i1 < m[1]; ++i1) {
          const double x1 = offset(i1, m[1]) * h1;
          for (int i2 = 0; i2 < m[2]; ++i2) {
            const double x2 = d == 3 ? offset(i2, m[2]) * h2 : 0.0;
            rbuf[real_index(static_cast<int>(i0), i1, i2)] = value(x0, x1, x2);
          }
        }
      }
      fftw_execute_dft_r2c(fwd, rbuf.data(),
                           reinterpret_cast<fftw_complex*>(cbuf.data()));
      out.resize(cplx_size);
      for (std::size_t i = 0; i < cplx_size; ++i)
        out[i] = take_real ? cbuf[i].real() : cbuf[i].imag();
    };

    auto green = [&](double x0, double x1, double x2) {
      const double r = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2);
      if (r == 0.0) return self_green;
      return d == 2 ? -(1.0 / (2.0 * M_PI)) * std::log(r)
                    : 1.0 / (4.0 * M_PI * r);
    };
    fill_and_transform(green, green_hat, true);

    for (int a = 0; a < d; ++a) {
      auto grad = [&](double x0, double x1, double x2) {
        const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        if (r2 == 0.0) return 0.0;
        const double xa = a == 0 ? x0 : (a == 1 ? x1 : x2);
        return d == 2 ? -(1.0 / (2.0 * M_PI)) * xa / r2
                      : -(1.0 / (4.0 * M_PI)) * xa / (r2 * std::sqrt(r2));
      };
      fill_and_transform(grad, grad_hat[a], false);
    }
  }

  ChemField solve(const ScalarField& n) const {
    const int d = grid.dim;
    std::vector<double> rbuf(real_size, 0.0);
    std::vector<std::complex<double>> nhat(cplx_size);

    // embed n into the zero-padded doubled box
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < grid.n[0]; ++i0)
      for (int i1 = 0; i1 < grid.n[1]; ++i1)
        for (int i2 = 0; i2 < grid.n[2]; ++i2)
          rbuf[real_index(static_cast<int>(i0), i1, i2)] =
              n.values[grid.index(static_cast<int>(i0), i1, i2)];
    fftw_execute_dft_r2c(fwd, rbuf.data(),
                         reinterpret_cast<fftw_complex*>(nhat.data()));

    const double scale = n.grid.cell_volume() / static_cast<double>(real_size);
    std::vector<std::complex<double>> prod(cplx_size);
    ChemField out;

    auto convolve_to = [&](const std::vector<double>& khat, bool imag_kernel,
                           ScalarField& dst) {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < static_cast<long long>(cplx_size); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        prod[u] = imag_kernel
                      ? std::complex<double>(0.0, khat[u]) * nhat[u] * scale
                      : khat[u] * nhat[u] * scale;
      }
      std::vector<double> res(real_size);
      fftw_execute_dft_c2r(bwd, reinterpret_cast<fftw_complex*>(prod.data()),
                           res.data());
      dst = ScalarField(grid);
#pragma omp parallel for schedule(static)
      for (long long i0 = 0; i0 < grid.n[0]; ++i0)
        for (int i1 = 0; i1 < grid.n[1]; ++i1)
          for (int i2 = 0; i2 < grid.n[2]; ++i2)
            dst.values[grid.index(static_cast<int>(i0), i1, i2)] =
                res[real_index(static_cast<int>(i0), i1, i2)];
    };

    convolve_to(green_hat, false, out.c);
    out.grad_c.resize(d);
    for (int a = 0; a < d; ++a) convolve_to(grad_hat[a], true, out.grad_c[a]);
    return out;
  }
};

FreeSolver& free_solver_for(const GridSpec& g) {
  static std::map<std::array<long long, 8>, std::unique_ptr<FreeSolver>> cache;
  static std::mutex mutex;
  const std::array<long long, 8> key = {
      g.dim,
      g.n[0],
      g.n[1],
      g.n[2],
      static_cast<long long>(g.half_length[0] * 1e12),
      static_cast<long long>(g.half_length[1] * 1e12),
      static_cast<long long>(g.half_length[2] * 1e12),
      static_cast<long long>(g.topology)};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<FreeSolver>(g)).first;
  return *it->second;
}

}  // namespace

ChemField inverse_laplacian_free(const ScalarField& n) {
  if (n.grid.topology != Topology::FullSpace)
    throw std::domain_error("inverse_laplacian_free: FullSpace grids only");
  return free_solver_for(n.grid).solve(n);
}

ChemField inverse_laplacian_channel(const ScalarField& n) {
  const GridSpec& g = n.grid;
  if (g.topology != Topology::Channel)
    throw std::domain_error("inverse_laplacian_channel: Channel grids only");

  const SpectralField nhat = fft::forward(n);
  SpectralField chat(g);
  ChemField out;
  out.grad_c.resize(g.dim);

  const std::size_t total = g.size();
  std::vector<SpectralField> ghat(g.dim, SpectralField(g));
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(total); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    std::size_t rem = u;
    double k2 = 0.0;
    std::array<double, 3> k = {0.0, 0.0, 0.0};
    for (int a = g.dim - 1; a >= 0; --a) {
      const int idx = static_cast<int>(rem % g.n[a]);
      rem /= g.n[a];
      k[a] = g.wavenumber(a, idx);
      k2 += k[a] * k[a];
    }
    if (k2 == 0.0) {
      chat.modes[u] = 0.0;  // gauge: zero mean
      for (int a = 0; a < g.dim; ++a) ghat[a].modes[u] = 0.0;
    } else {
      chat.modes[u] = nhat.modes[u] / k2;
      rem = u;
      for (int a = g.dim - 1; a >= 0; --a) {
        const int idx = static_cast<int>(rem % g.n[a]);
        rem /= g.n[a];
        k[a] = g.deriv_wavenumber(a, idx);
      }
      for (int a = 0; a < g.dim; ++a)
        ghat[a].modes[u] = std::complex<double>(0.0, k[a]) * chat.modes[u];
    }
  }
  out.c = fft::inverse(chat);
  for (int a = 0; a < g.dim; ++a) out.grad_c[a] = fft::inverse(ghat[a]);
  return out;
}

ChemField inverse_laplacian(const ScalarField& n) {
  return n.grid.topology == Topology::FullSpace ? inverse_laplacian_free(n)
                                                : inverse_laplacian_channel(n);
}

}  // namespace fastspread::elliptic
