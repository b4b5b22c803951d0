#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fastspread/fft.hpp"
#include "fastspread/fieldmath.hpp"
#include "fastspread/snapshot.hpp"

using namespace fastspread;

namespace {

// closed-form integral of a box-truncated Gaussian (erf per axis)
double gaussian_box_integral(const GridSpec& g, std::array<double, 3> c,
                             double sigma, double mass) {
  double v = mass;
  for (int a = 0; a < g.dim; ++a) {
    const double L = g.half_length[a];
    const double s = sigma * std::sqrt(2.0);
    v *= 0.5 * (std::erf((L - c[a]) / s) - std::erf((-L - c[a]) / s));
  }
  return v;
}

}  // namespace

TEST_CASE("integrate: constant field on [-pi,pi)^2") {
  const GridSpec g = GridSpec::square(64, M_PI);
  const ScalarField one = sample(g, [](double, double, double) { return 1.0; });
  CHECK(integrate(one) == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("integrate: zero field") {
  const ScalarField z(GridSpec::square(32, 1.0));
  CHECK(integrate(z) == 0.0);
}

TEST_CASE("integrate: Gaussian mass recovered to 1e-10") {
  const GridSpec g = GridSpec::square(256, 8.0);
  const double mass = 4.0 * M_PI;
  const ScalarField f = sample_gaussian(g, {0.0, 0.0, 0.0}, 0.5, mass);
  const double got = integrate(f);
  CHECK(std::abs(got - mass) < 1e-10);
  CHECK(std::abs(got - gaussian_box_integral(g, {0, 0, 0}, 0.5, mass)) < 1e-10);
}

TEST_CASE("lp_norm: sup norm of a plateau") {
  const GridSpec g = GridSpec::square(32, 1.0);
  const ScalarField f =
      sample(g, [](double x, double, double) { return x < 0.0 ? 2.0 : 0.5; });
  CHECK(lp_norm(f, kInf) == 2.0);
}

TEST_CASE("lp_norm: L2 of a 2D Gaussian") {
  const GridSpec g = GridSpec::square(256, 8.0);
  const double mass = 3.7, sigma = 0.5;
  const ScalarField f = sample_gaussian(g, {0.0, 0.0, 0.0}, sigma, mass);
  // ||G||_2 = M / (2 sigma sqrt(pi))
  CHECK(lp_norm(f, 2.0) ==
        doctest::Approx(mass / (2.0 * sigma * std::sqrt(M_PI))).epsilon(1e-8));
}

TEST_CASE("lp_norm: zero field for several p") {
  const ScalarField z(GridSpec::square(32, 2.0));
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(z, p) == 0.0);
  CHECK(lp_norm(z, kInf) == 0.0);
}

TEST_CASE("lp_norm: interpolation bound on random fields") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const GridSpec g = GridSpec::square(64, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    ScalarField f(g);
    for (double& v : f.values) v = dist(rng);
    for (double p : {1.5, 2.0, 4.0}) {
      const double bound = std::pow(lp_norm(f, 1.0), 1.0 / p) *
                           std::pow(lp_norm(f, kInf), 1.0 - 1.0 / p);
      CHECK(lp_norm(f, p) <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("second_moment: centered, point-like, and shifted data") {
  const GridSpec g = GridSpec::square(256, 8.0);
  const double mass = 4.0 * M_PI, sigma = 0.5;
  CHECK(second_moment(sample_gaussian(g, {0, 0, 0}, sigma, mass)) ==
        doctest::Approx(2.0 * mass * sigma * sigma).epsilon(1e-8));

  // point-like datum at the center: |x|^2 vanishes there
  ScalarField delta(g);
  delta.at(g.n[0] / 2, g.n[1] / 2) = mass / g.cell_volume();
  CHECK(std::abs(second_moment(delta)) < 1e-12);

  const double a = 1.25;
  CHECK(second_moment(sample_gaussian(g, {a, 0, 0}, sigma, mass)) ==
        doctest::Approx(mass * (2.0 * sigma * sigma + a * a)).epsilon(1e-8));
}

TEST_CASE("second_moment: channel topology rejected") {
  const GridSpec g = GridSpec::channel(64, 4.0, 64);
  const ScalarField f(g);
  CHECK_THROWS_AS(second_moment(f), std::domain_error);
}

TEST_CASE("sample_gaussian: edge cases") {
  const GridSpec g = GridSpec::square(128, 8.0);
  const ScalarField zero_mass = sample_gaussian(g, {0, 0, 0}, 1.0, 0.0);
  CHECK(lp_norm(zero_mass, kInf) == 0.0);

  CHECK_THROWS_AS(sample_gaussian(g, {0, 0, 0}, -1.0, 1.0), std::invalid_argument);

  const double mass = 2.0, sigma = 0.5;
  const ScalarField f = sample_gaussian(g, {0, 0, 0}, sigma, mass);
  CHECK(lp_norm(f, kInf) ==
        doctest::Approx(mass / (2.0 * M_PI * sigma * sigma)).epsilon(1e-13));
}

TEST_CASE("quadrature exactness improves with resolution") {
  // relative error < 1e-10 once sigma covers six cells
  const GridSpec g = GridSpec::square(128, 8.0);
  const double sigma = 6.0 * g.spacing(0);
  const ScalarField f = sample_gaussian(g, {0, 0, 0}, sigma, 1.0);
  CHECK(std::abs(integrate(f) - 1.0) < 1e-10);
}

TEST_CASE("spectral transform: round trip, constant, cosine") {
  const GridSpec g = GridSpec::square(64, 2.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values) v = dist(rng);

  const ScalarField back = fft::inverse(fft::forward(f));
  double worst = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
  CHECK(worst < 1e-12 * lp_norm(f, kInf));

  const ScalarField one = sample(g, [](double, double, double) { return 1.0; });
  SpectralField F = fft::forward(one);
  CHECK(std::abs(F.modes[0]) == doctest::Approx(g.size()).epsilon(1e-12));
  double off = 0.0;
  for (std::size_t i = 1; i < F.modes.size(); ++i) off = std::max(off, std::abs(F.modes[i]));
  CHECK(off < 1e-9);

  // cos(k0 x0) with k0 the fundamental of axis 0: exactly two conjugate modes
  const double k0 = M_PI / g.half_length[0];
  const ScalarField c =
      sample(g, [&](double x, double, double) { return std::cos(k0 * x); });
  F = fft::forward(c);
  const std::size_t plus = g.index(1, 0);
  const std::size_t minus = g.index(g.n[0] - 1, 0);
  CHECK(std::abs(F.modes[plus] - std::conj(F.modes[minus])) < 1e-9);
  CHECK(std::abs(std::abs(F.modes[plus]) - g.size() / 2.0) < 1e-8);
  double rest = 0.0;
  for (std::size_t i = 0; i < F.modes.size(); ++i)
    if (i != plus && i != minus) rest = std::max(rest, std::abs(F.modes[i]));
  CHECK(rest < 1e-8);
}

TEST_CASE("spectral transform requires power-of-two sizes") {
  const GridSpec g(2, {48, 48, 1}, {2.0, 2.0, 0.0});
  CHECK(!g.spectral_capable());
  const ScalarField f(g);
  CHECK_THROWS_AS(fft::forward(f), std::invalid_argument);
}

TEST_CASE("Parseval identity") {
  const GridSpec g = GridSpec::square(64, 3.0);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values) v = dist(rng);
  const double physical = g.cell_volume() * [&] {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s;
  }();
  CHECK(fft::mode_energy(fft::forward(f)) ==
        doctest::Approx(physical).epsilon(1e-10));
}

TEST_CASE("boundary shell ratio") {
  const GridSpec g = GridSpec::square(64, 8.0);
  const ScalarField inner = sample_gaussian(g, {0, 0, 0}, 0.5, 1.0);
  CHECK(boundary_shell_ratio(inner) < 1e-30);

  const ScalarField wide = sample_gaussian(g, {0, 0, 0}, 4.0, 1.0);
  CHECK(boundary_shell_ratio(wide) > 1e-3);

  CHECK(boundary_shell_ratio(ScalarField(g)) == 0.0);
}

TEST_CASE("snapshot file round trip") {
  const GridSpec g = GridSpec::square(32, 2.5);
  const ScalarField f = sample_gaussian(g, {0.5, -0.25, 0}, 0.6, 2.0);
  const std::string path = "snapshot_test.bin";
  write_snapshot(path, f, 1.75);
  const Snapshot s = read_snapshot(path);
  CHECK(s.time == 1.75);
  CHECK(s.field.grid == g);
  CHECK(s.field.values == f.values);
  std::remove(path.c_str());
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(2, {9, 64, 1}, {1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(2, {4, 64, 1}, {1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(4, {32, 32, 32}, {1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(2, {32, 32, 1}, {-1.0, 1.0, 0.0}), std::invalid_argument);
  // channel transverse half-length is forced to pi
  CHECK_THROWS_AS(GridSpec(2, {32, 32, 1}, {1.0, 2.0, 0.0}, Topology::Channel),
                  std::invalid_argument);
}
