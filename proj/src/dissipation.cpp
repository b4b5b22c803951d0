#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fastspread/evolve.hpp"
#include "fastspread/fieldmath.hpp"
#include "fastspread/kernels.hpp"

namespace fastspread::kernels {

double dissipation_time_hyperbolic_2d(double A) {
  if (!(A > 0.0))
    throw std::invalid_argument("dissipation_time: amplitude must be > 0");
  return std::asinh(A / (2.0 * M_PI)) / A;
}

DissipationEstimate dissipation_time(const FlowSpec& flow) {
  if (flow.kind != FlowSpec::Kind::Hyperbolic)
    throw std::invalid_argument(
        "dissipation_time: closed form exists for the hyperbolic 2D flow only; "
        "use dissipation_time_near_delta for shear profiles");
  const double A = flow.amplitude;
  DissipationEstimate est;
  est.tau = dissipation_time_hyperbolic_2d(A);
  // ||S_t||_{L1->Linf} = A / (4 pi sinh(A t)) in original time
  for (int i = 0; i <= 32; ++i) {
    const double t = est.tau * std::pow(2.0, -2.0 + 4.0 * i / 32.0);
    est.operator_norm_curve.emplace_back(t, A / (4.0 * M_PI * std::sinh(A * t)));
  }
  return est;
}

namespace {

ScalarField near_delta(const GridSpec& grid) {
  double h = grid.spacing(0);
  for (int a = 1; a < grid.dim; ++a) h = std::max(h, grid.spacing(a));
  return sample_gaussian(grid, {0.0, 0.0, 0.0}, 3.0 * h, 1.0);
}

}  // namespace

DissipationEstimate dissipation_time_near_delta(const FlowSpec& flow,
                                                const GridSpec& grid,
                                                double horizon) {
  if (!(flow.amplitude > 0.0))
    throw std::invalid_argument("dissipation_time_near_delta: amplitude must be > 0");
  if (!(horizon > 0.0))
    throw std::invalid_argument("dissipation_time_near_delta: horizon must be > 0");
  const double A = flow.amplitude;
  const ScalarField rho0 = near_delta(grid);
  const double mass = integrate(rho0);

  DissipationEstimate est;

  if (flow.kind == FlowSpec::Kind::Hyperbolic) {
    if (grid.dim != 2)
      throw std::invalid_argument("dissipation_time_near_delta: hyperbolic flows in 2D only");
    auto ratio = [&](double tau_original) {
      const ScalarField rho = apply_kernel(rho0, A * tau_original, A);
      return lp_norm(rho, kInf) / mass;
    };
    double hi = horizon;
    const double rh = ratio(hi);
    est.operator_norm_curve.emplace_back(hi, rh);
    if (rh > 0.5)
      throw std::runtime_error(
          "dissipation_time_near_delta: norm did not reach 1/2 within horizon");
    double lo = 0.0;
    for (int it = 0; it < 60 && hi - lo > 1e-4 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double r = ratio(mid);
      est.operator_norm_curve.emplace_back(mid, r);
      (r > 0.5 ? lo : hi) = mid;
    }
    est.tau = hi;
  } else {
    evolve::SimConfig cfg;
    cfg.grid = grid;
    cfg.flow = flow;
    cfg.model = evolve::ModelSpec::passive();
    cfg.frame = evolve::Frame::Original;
    cfg.t_end = horizon;
    cfg.dt_policy.dt_max = std::max(horizon / 4000.0, 1e-4);
    cfg.dt_policy.c_stab = 1.0;  // passive scalar: no nonlinear substep
    cfg.record_every = 1;

    double tau = -1.0;
    double prev_t = 0.0, prev_ratio = 1e300;
    evolve::RecordObserver obs = [&](const diag::DiagRecord& r) {
      if (r.step == 0) return;
      const double ratio = r.linf / mass;
      est.operator_norm_curve.emplace_back(r.t_original, ratio);
      if (tau < 0.0 && ratio <= 0.5) {
        // refine the crossing by log-linear interpolation
        if (prev_ratio > 0.5 && prev_ratio < 1e299) {
          const double f = (std::log(0.5) - std::log(prev_ratio)) /
                           (std::log(ratio) - std::log(prev_ratio));
          tau = prev_t + f * (r.t_original - prev_t);
        } else {
          tau = r.t_original;
        }
      }
      prev_t = r.t_original;
      prev_ratio = ratio;
    };
    evolve::run(cfg, rho0, obs);
    if (tau < 0.0)
      throw std::runtime_error(
          "dissipation_time_near_delta: norm did not reach 1/2 within horizon");
    est.tau = tau;
  }

  std::sort(est.operator_norm_curve.begin(), est.operator_norm_curve.end());
  return est;
}

}  // namespace fastspread::kernels
