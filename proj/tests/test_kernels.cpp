#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fastspread/fieldmath.hpp"
#include "fastspread/kernels.hpp"

using namespace fastspread;
namespace k = fastspread::kernels;

namespace {

// test-only adaptive Simpson, independent of the library quadrature
double simpson_rec(const std::function<double(double)>& f, double a, double m,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12) {
  const double m = 0.5 * (a + b), fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 50);
}

// integral of the 2D kernel over x', exploiting the formula's separability:
// integrate each x' factor along a line through the center, divide out the
// double-counted center value
double kernel2d_integral_over_xp(double t, double A, std::array<double, 2> x) {
  const double c1 = x[0] * std::exp(t);
  const double w1 = std::sqrt((std::exp(2.0 * t) - 1.0) / A);
  const double c2 = x[1] * std::exp(-t);
  const double w2 = std::sqrt((1.0 - std::exp(-2.0 * t)) / A);
  const double at_center = k::hyperbolic_kernel_2d(t, A, x, {c1, c2});
  const double i1 = integrate_1d(
      [&](double y) { return k::hyperbolic_kernel_2d(t, A, x, {y, c2}); },
      c1 - 14.0 * w1, c1 + 14.0 * w1);
  const double i2 = integrate_1d(
      [&](double y) { return k::hyperbolic_kernel_2d(t, A, x, {c1, y}); },
      c2 - 14.0 * w2, c2 + 14.0 * w2);
  return i1 * i2 / at_center;
}

double kernel3d_integral_over_xp(double t, double A, std::array<double, 3> x) {
  const double c12 = std::exp(t / 2.0);
  const double w12 = std::sqrt(2.0 * (std::exp(t) - 1.0) / A);
  const double w3 = std::sqrt((1.0 - std::exp(-2.0 * t)) / A);
  const std::array<double, 3> ctr = {x[0] * c12, x[1] * c12,
                                     x[2] * std::exp(-t)};
  const double widths[3] = {w12, w12, w3};
  const double at_center = k::hyperbolic_kernel_3d(t, A, x, ctr);
  double integral = 1.0 / (at_center * at_center);
  for (int a = 0; a < 3; ++a) {
    integral *= integrate_1d(
        [&](double y) {
          std::array<double, 3> xp = ctr;
          xp[a] = y;
          return k::hyperbolic_kernel_3d(t, A, x, xp);
        },
        ctr[a] - 14.0 * widths[a], ctr[a] + 14.0 * widths[a], 1e-10);
  }
  return integral;
}

}  // namespace

TEST_CASE("2D kernel: value at the origin with sinh t = 1") {
  const double t = std::log(1.0 + std::sqrt(2.0));  // sinh t = 1
  CHECK(k::hyperbolic_kernel_2d(t, 1.0, {0, 0}, {0, 0}) ==
        doctest::Approx(0.07957747154594767).epsilon(1e-12));
}

TEST_CASE("2D kernel: normalization over x' (adaptive quadrature)") {
  CHECK(std::abs(kernel2d_integral_over_xp(0.5, 1.0, {0.3, -0.2}) - 1.0) < 1e-8);
}

TEST_CASE("2D kernel: dominated by its sup") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double t = 0.1 + 0.5 * (dist(rng) + 3.0);
    const double A = 1.0 + (dist(rng) + 3.0);
    const std::array<double, 2> x = {dist(rng), dist(rng)};
    const std::array<double, 2> xp = {dist(rng), dist(rng)};
    const double v = k::hyperbolic_kernel_2d(t, A, x, xp);
    CHECK(v > 0.0);
    CHECK(v <= k::kernel_sup(2, t, A) * (1.0 + 1e-14));
  }
}

TEST_CASE("2D kernel: t <= 0 rejected") {
  CHECK_THROWS_AS(k::hyperbolic_kernel_2d(0.0, 1.0, {0, 0}, {0, 0}),
                  std::domain_error);
  CHECK_THROWS_AS(k::hyperbolic_kernel_2d(-1.0, 1.0, {0, 0}, {0, 0}),
                  std::domain_error);
}

TEST_CASE("3D kernel: prefactor at A=1, t=1") {
  CHECK(k::kernel_sup(3, 1.0, 1.0) ==
        doctest::Approx(0.019869271113534724).epsilon(1e-12));
  CHECK(k::hyperbolic_kernel_3d(1.0, 1.0, {0, 0, 0}, {0, 0, 0}) ==
        doctest::Approx(0.019869271113534724).epsilon(1e-12));
}

TEST_CASE("3D kernel: normalization over x' for A in {1,10}, t in {0.5,1}") {
  for (double A : {1.0, 10.0})
    for (double t : {0.5, 1.0})
      CHECK(std::abs(kernel3d_integral_over_xp(t, A, {0.2, -0.1, 0.4}) - 1.0) <
            1e-6);
}

TEST_CASE("3D kernel: dominated by its prefactor") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double t = 0.2 + (dist(rng) + 2.0) * 0.4;
    const double A = 1.0 + (dist(rng) + 2.0) * 3.0;
    const std::array<double, 3> x = {dist(rng), dist(rng), dist(rng)};
    const std::array<double, 3> xp = {dist(rng), dist(rng), dist(rng)};
    CHECK(k::hyperbolic_kernel_3d(t, A, x, xp) <=
          k::kernel_sup(3, t, A) * (1.0 + 1e-14));
  }
}

TEST_CASE("apply_kernel: Gaussian maps to the closed-form product Gaussian") {
  const GridSpec g = GridSpec::square(256, 16.0);
  const double sigma = 0.5, mass = 1.0, t = 1.0, A = 1.0;
  const ScalarField f = sample_gaussian(g, {0, 0, 0}, sigma, mass);
  const ScalarField out = k::apply_kernel(f, t, A);

  const double v1 =
      sigma * sigma * std::exp(-2.0 * t) + (1.0 - std::exp(-2.0 * t)) / A;
  const double v2 =
      sigma * sigma * std::exp(2.0 * t) + (std::exp(2.0 * t) - 1.0) / A;
  const ScalarField expect = sample(g, [&](double x0, double x1, double) {
    return mass / (2.0 * M_PI * std::sqrt(v1 * v2)) *
           std::exp(-x0 * x0 / (2.0 * v1) - x1 * x1 / (2.0 * v2));
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    worst = std::max(worst, std::abs(out.values[i] - expect.values[i]));
  CHECK(worst / lp_norm(expect, kInf) < 1e-6);
}

TEST_CASE("apply_kernel: mass conservation") {
  const GridSpec g = GridSpec::square(256, 16.0);
  const ScalarField f = sample_gaussian(g, {0.4, -0.3, 0}, 0.6, 2.5);
  const ScalarField out = k::apply_kernel(f, 0.75, 2.0);
  CHECK(integrate(out) == doctest::Approx(integrate(f)).epsilon(1e-8));
}

TEST_CASE("apply_kernel: semigroup property on Gaussian data") {
  const GridSpec g = GridSpec::square(256, 16.0);
  const ScalarField f = sample_gaussian(g, {0, 0, 0}, 0.5, 1.0);
  for (auto [s, t] : {std::pair{0.25, 0.25}, std::pair{0.5, 1.0}}) {
    const ScalarField once = k::apply_kernel(f, s + t, 1.0);
    const ScalarField twice =
        k::apply_kernel(k::apply_kernel(f, s, 1.0), t, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < once.values.size(); ++i)
      worst = std::max(worst, std::abs(once.values[i] - twice.values[i]));
    CHECK(worst / lp_norm(once, kInf) < 1e-6);
  }
}

TEST_CASE("apply_kernel: channel topology rejected") {
  const ScalarField f(GridSpec::channel(64, 4.0, 64));
  CHECK_THROWS_AS(k::apply_kernel(f, 1.0, 1.0), std::domain_error);
}

TEST_CASE("linf_envelope: values and asymptotics") {
  const double t1 = std::log(1.0 + std::sqrt(2.0));
  CHECK(k::linf_envelope(t1, 1.0, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k::linf_envelope(1.0, 10.0, 2) ==
        doctest::Approx(8.509181282393216).epsilon(1e-12));
  // ~ 2 A e^{-t} for large t
  CHECK(k::linf_envelope(20.0, 3.0, 2) ==
        doctest::Approx(2.0 * 3.0 * std::exp(-20.0)).epsilon(1e-8));
  CHECK(k::linf_envelope(1e-8, 1.0, 2) > 1e7);
  // envelope sits above the kernel sup by 4 pi (2D) / 2^{5/2} pi^{3/2} (3D)
  CHECK(k::linf_envelope(0.7, 2.0, 2) / k::kernel_sup(2, 0.7, 2.0) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(k::linf_envelope(0.7, 2.0, 3) / k::kernel_sup(3, 0.7, 2.0) ==
        doctest::Approx(std::pow(2.0, 2.5) * std::pow(M_PI, 1.5)).epsilon(1e-12));
}

TEST_CASE("dissipation time: closed form and asymptotics") {
  const double tau = k::dissipation_time_hyperbolic_2d(2.0 * M_PI);
  CHECK(tau == doctest::Approx(0.14027496308479503).epsilon(1e-12));

  // tau(A) * A / log A -> 1; at A = 1e4 the ratio is within 15% of 1
  const double ratio =
      k::dissipation_time_hyperbolic_2d(1e4) * 1e4 / std::log(1e4);
  CHECK(std::abs(ratio - 1.0) < 0.15);

  double prev = k::dissipation_time_hyperbolic_2d(10.0);
  for (double A : {100.0, 1000.0}) {
    const double cur = k::dissipation_time_hyperbolic_2d(A);
    CHECK(cur < prev);
    prev = cur;
  }

  const k::DissipationEstimate est =
      k::dissipation_time(FlowSpec::hyperbolic(2.0 * M_PI));
  CHECK(est.tau == doctest::Approx(tau).epsilon(1e-12));
  for (std::size_t i = 1; i < est.operator_norm_curve.size(); ++i)
    CHECK(est.operator_norm_curve[i].second <
          est.operator_norm_curve[i - 1].second);
}

TEST_CASE("dissipation time: near-delta estimate tracks the closed form") {
  const double A = 2.0 * M_PI;
  const GridSpec g = GridSpec::square(512, 6.0);
  const k::DissipationEstimate est =
      k::dissipation_time_near_delta(FlowSpec::hyperbolic(A), g, 1.0);
  CHECK(std::abs(est.tau - k::dissipation_time_hyperbolic_2d(A)) <
        0.03 * k::dissipation_time_hyperbolic_2d(A));
}

TEST_CASE("plateau_check: sin profile has no plateau at order 2") {
  const GridSpec g = GridSpec::channel(64, 4.0, 128);
  const auto u =
      sample_shear_profile(g, [](double y, double) { return std::sin(y); });
  CHECK(k::plateau_check(g, u, 2, 1e-6).empty);
  // order 1 alone with tolerance above the 1/sqrt(2) floor finds the
  // critical points of the profile
  const auto res1 = k::plateau_check(g, u, 1, 0.5);
  CHECK(!res1.empty);
  REQUIRE(res1.witness.has_value());
  CHECK(std::abs(std::abs((*res1.witness)[0]) - M_PI / 2.0) < 0.6);
}

TEST_CASE("plateau_check: constant profile is all plateau") {
  const GridSpec g = GridSpec::channel(64, 4.0, 128);
  const auto u = sample_shear_profile(g, [](double, double) { return 1.0; });
  const auto res = k::plateau_check(g, u, 4, 1e-6);
  CHECK(!res.empty);
  CHECK(res.witness.has_value());
}

TEST_CASE("plateau_check: sin + sin 2 empty at order 3") {
  const GridSpec g = GridSpec::channel(64, 4.0, 128);
  const auto u = sample_shear_profile(
      g, [](double y, double) { return std::sin(y) + std::sin(2.0 * y); });
  CHECK(k::plateau_check(g, u, 3, 1e-6).empty);
}

TEST_CASE("plateau_check: 3D transverse profiles") {
  const GridSpec g = GridSpec::channel3(32, 4.0, 32, 32);
  const auto u = sample_shear_profile(
      g, [](double y, double z) { return std::sin(y) * std::cos(z); });
  CHECK(k::plateau_check(g, u, 2, 1e-6).empty);
  const auto flat = sample_shear_profile(g, [](double, double) { return 2.0; });
  CHECK(!k::plateau_check(g, flat, 4, 1e-6).empty);
}
