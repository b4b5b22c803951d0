#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fastspread/elliptic.hpp"
#include "fastspread/fft.hpp"
#include "fastspread/fieldmath.hpp"

using namespace fastspread;

namespace {

// analytic potential of a centered 2D Gaussian: -Laplace c = G_sigma
// c(r) = -(M/2pi) [ln r + (1/2) E1(r^2 / (2 sigma^2))]
double gaussian_potential_2d(double r, double sigma, double mass) {
  const double u = r * r / (2.0 * sigma * sigma);
  const double e1 = -std::expint(-u);
  return -(mass / (2.0 * M_PI)) * (std::log(r) + 0.5 * e1);
}

}  // namespace

TEST_CASE("free space: radial Gaussian gradient matches Gauss's theorem") {
  const GridSpec g = GridSpec::square(512, 4.0);
  const double M = 4.0 * M_PI, sigma = 0.5;
  const ScalarField n = sample_gaussian(g, {0, 0, 0}, sigma, M);
  const auto chem = elliptic::inverse_laplacian_free(n);

  // |grad c|(r) = M (1 - exp(-r^2/(2 sigma^2))) / (2 pi r); frozen value at
  // r = 2 sigma: 2 (1 - e^{-2}) = 1.7293294335267746
  const double r = 2.0 * sigma;
  const int i = static_cast<int>(std::round((r + g.half_length[0]) / g.spacing(0)));
  const double got = std::abs(chem.grad_c[0].at(i, g.n[1] / 2));
  CHECK(got == doctest::Approx(1.7293294335267746).epsilon(1e-4));

  // far field: point-mass law M/(2 pi r) within 1% at r = 6 sigma
  const double rf = 6.0 * sigma;
  const int j = static_cast<int>(std::round((rf + g.half_length[0]) / g.spacing(0)));
  CHECK(std::abs(chem.grad_c[0].at(j, g.n[1] / 2)) ==
        doctest::Approx(M / (2.0 * M_PI * rf)).epsilon(0.01));
}

TEST_CASE("free space: potential matches the analytic solution in the interior") {
  const GridSpec g = GridSpec::square(512, 4.0);
  const double M = 3.0, sigma = 0.5;
  const ScalarField n = sample_gaussian(g, {0, 0, 0}, sigma, M);
  const auto chem = elliptic::inverse_laplacian_free(n);
  double worst = 0.0, scale = 0.0;
  for (int i = g.n[0] / 4; i < 3 * g.n[0] / 4; i += 5) {
    for (int j = g.n[1] / 4; j < 3 * g.n[1] / 4; j += 5) {
      const double x = g.coord(0, i), y = g.coord(1, j);
      const double r = std::sqrt(x * x + y * y);
      if (r < 3.0 * g.spacing(0)) continue;
      const double expect = gaussian_potential_2d(r, sigma, M);
      worst = std::max(worst, std::abs(chem.c.at(i, j) - expect));
      scale = std::max(scale, std::abs(expect));
    }
  }
  CHECK(worst < 1e-4 * scale);
}

TEST_CASE("free space: zero data gives zero gradient") {
  const GridSpec g = GridSpec::square(128, 4.0);
  const auto chem = elliptic::inverse_laplacian_free(ScalarField(g));
  for (int a = 0; a < 2; ++a) CHECK(lp_norm(chem.grad_c[a], kInf) == 0.0);
}

TEST_CASE("free space: 3D far field follows the point-mass law") {
  const GridSpec g = GridSpec::cube(64, 4.0);
  const double M = 2.0, sigma = 0.25;
  const ScalarField n = sample_gaussian(g, {0, 0, 0}, sigma, M);
  const auto chem = elliptic::inverse_laplacian_free(n);
  const double r = 6.0 * sigma;
  const int i = static_cast<int>(std::round((r + g.half_length[0]) / g.spacing(0)));
  CHECK(std::abs(chem.grad_c[0].at(i, g.n[1] / 2, g.n[2] / 2)) ==
        doctest::Approx(M / (4.0 * M_PI * r * r)).epsilon(0.01));
}

TEST_CASE("channel: eigenfunction of the transverse Laplacian") {
  const GridSpec g = GridSpec::channel(64, M_PI, 64);
  const ScalarField n =
      sample(g, [](double, double y, double) { return std::cos(y); });
  const auto chem = elliptic::inverse_laplacian_channel(n);
  double worst_c = 0.0, worst_g0 = 0.0, worst_g1 = 0.0;
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j) {
      const double y = g.coord(1, j);
      worst_c = std::max(worst_c, std::abs(chem.c.at(i, j) - std::cos(y)));
      worst_g0 = std::max(worst_g0, std::abs(chem.grad_c[0].at(i, j)));
      worst_g1 = std::max(worst_g1, std::abs(chem.grad_c[1].at(i, j) + std::sin(y)));
    }
  CHECK(worst_c < 1e-12);
  CHECK(worst_g0 < 1e-12);
  CHECK(worst_g1 < 1e-12);
}

TEST_CASE("channel: constant data is gauged away") {
  const GridSpec g = GridSpec::channel(64, 2.0, 64);
  const ScalarField n = sample(g, [](double, double, double) { return 3.5; });
  const auto chem = elliptic::inverse_laplacian_channel(n);
  CHECK(lp_norm(chem.c, kInf) < 1e-12);
  CHECK(lp_norm(chem.grad_c[0], kInf) < 1e-12);
  CHECK(lp_norm(chem.grad_c[1], kInf) < 1e-12);
}

TEST_CASE("channel: Fourier multiplier on a product mode") {
  // n = cos(k1 x1) cos(x2) with k1 = 2 on a box of half-length pi
  const GridSpec g = GridSpec::channel(64, M_PI, 64);
  const ScalarField n = sample(
      g, [](double x, double y, double) { return std::cos(2.0 * x) * std::cos(y); });
  const auto chem = elliptic::inverse_laplacian_channel(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n.values.size(); ++i)
    worst = std::max(worst, std::abs(chem.c.values[i] - n.values[i] / 5.0));
  CHECK(worst < 1e-12);
}

TEST_CASE("channel: residual and curl vanish spectrally") {
  const GridSpec g = GridSpec::channel(64, 4.0, 64);
  const ScalarField n = sample(g, [](double x, double y, double) {
    return std::exp(-x * x) * (1.0 + 0.3 * std::sin(2.0 * y));
  });
  const auto chem = elliptic::inverse_laplacian_channel(n);

  // -Laplace c must reproduce n minus its mean, mode by mode
  SpectralField chat = fft::forward(chem.c);
  SpectralField nhat = fft::forward(n);
  SpectralField g0 = fft::forward(chem.grad_c[0]);
  SpectralField g1 = fft::forward(chem.grad_c[1]);
  double resid = 0.0, curl = 0.0;
  const double norm = static_cast<double>(g.size());
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j) {
      const std::size_t u = g.index(i, j);
      const double k0 = g.wavenumber(0, i), k1 = g.wavenumber(1, j);
      const double k2 = k0 * k0 + k1 * k1;
      if (k2 > 0.0)
        resid = std::max(resid,
                         std::abs(k2 * chat.modes[u] - nhat.modes[u]) / norm);
      const double d0 = g.deriv_wavenumber(0, i), d1 = g.deriv_wavenumber(1, j);
      curl = std::max(curl, std::abs(std::complex<double>(0, d0) * g1.modes[u] -
                                     std::complex<double>(0, d1) * g0.modes[u]) /
                                norm);
    }
  CHECK(resid < 1e-10);
  CHECK(curl < 1e-10);
}

TEST_CASE("linearity of the solve") {
  const GridSpec g = GridSpec::square(128, 4.0);
  const ScalarField n1 = sample_gaussian(g, {0.5, 0, 0}, 0.4, 1.0);
  const ScalarField n2 = sample_gaussian(g, {-0.7, 0.3, 0}, 0.6, 2.0);
  ScalarField combo(g);
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = 2.0 * n1.values[i] - 0.5 * n2.values[i];

  const auto c1 = elliptic::inverse_laplacian(n1);
  const auto c2 = elliptic::inverse_laplacian(n2);
  const auto cc = elliptic::inverse_laplacian(combo);
  double worst = 0.0;
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    worst = std::max(worst, std::abs(cc.c.values[i] - 2.0 * c1.c.values[i] +
                                     0.5 * c2.c.values[i]));
  CHECK(worst < 1e-11 * lp_norm(cc.c, kInf) + 1e-13);
}

TEST_CASE("topology dispatch and rejection") {
  CHECK_THROWS_AS(
      elliptic::inverse_laplacian_free(ScalarField(GridSpec::channel(64, 2.0, 64))),
      std::domain_error);
  CHECK_THROWS_AS(
      elliptic::inverse_laplacian_channel(ScalarField(GridSpec::square(64, 2.0))),
      std::domain_error);
}
