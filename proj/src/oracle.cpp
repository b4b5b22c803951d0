#include "fastspread/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fastspread/elliptic.hpp"
#include "fastspread/fft.hpp"
#include "fastspread/fieldmath.hpp"
#include "fastspread/kernels.hpp"
#include "fastspread/ops.hpp"

namespace fastspread::oracle {

namespace {

// periodic neighbor index
inline int wrap(int i, int n) { return i < 0 ? i + n : (i >= n ? i - n : i); }

struct Stencil {
  const GridSpec& g;
  // value at neighbor along axis, offset +-1
  double at(const std::vector<double>& v, std::array<int, 3> idx, int axis,
            int off) const {
    idx[axis] = wrap(idx[axis] + off, g.n[axis]);
    return v[g.index(idx[0], idx[1], idx[2])];
  }
};

}  // namespace

evolve::Trajectory fd_run(const evolve::SimConfig& config,
                          const ScalarField& initial) {
  config.validate();
  const GridSpec& g = config.grid;
  for (int a = 0; a < g.dim; ++a)
    if (g.n[a] > 64)
      throw std::invalid_argument("fd_run: grids above 64 points per axis are rejected");
  if (!(initial.grid == g))
    throw std::invalid_argument("fd_run: initial data grid does not match config");

  const bool resc = config.rescaled_internally();
  const double A = config.flow.amplitude;
  const double kappa = resc ? 1.0 / A : 1.0;
  const double nlcoef = resc ? 1.0 / A : 1.0;
  const double frame_to_internal =
      resc && config.frame == evolve::Frame::Original ? A : 1.0;
  const double t_end = config.t_end * frame_to_internal;

  // velocity field (internal frame)
  std::vector<std::array<double, 3>> vel;
  double vmax = 0.0;
  if (config.flow.amplitude > 0.0) {
    vel.resize(g.size());
    const double amp = config.flow.kind == FlowSpec::Kind::Shear ? A : 1.0;
    for (int i0 = 0; i0 < g.n[0]; ++i0)
      for (int i1 = 0; i1 < g.n[1]; ++i1)
        for (int i2 = 0; i2 < g.n[2]; ++i2) {
          const std::array<int, 3> ii = {i0, i1, i2};
          std::array<double, 3> u = {0.0, 0.0, 0.0};
          if (config.flow.kind == FlowSpec::Kind::Hyperbolic) {
            const double r = 1.0 / (g.dim - 1);
            for (int a = 0; a < g.dim - 1; ++a) u[a] = -r * g.coord(a, ii[a]);
            u[g.dim - 1] = g.coord(g.dim - 1, ii[g.dim - 1]);
          } else {
            const std::size_t tidx = g.dim == 2
                                         ? static_cast<std::size_t>(i1)
                                         : static_cast<std::size_t>(i1) * g.n[2] + i2;
            u[0] = amp * config.flow.profile[tidx];
          }
          vel[g.index(i0, i1, i2)] = u;
          for (int a = 0; a < g.dim; ++a) vmax = std::max(vmax, std::abs(u[a]));
        }
  }

  double h_min = g.spacing(0);
  for (int a = 1; a < g.dim; ++a) h_min = std::min(h_min, g.spacing(a));
  double dt = 0.2 * h_min * h_min / (2.0 * g.dim * kappa);
  if (vmax > 0.0) dt = std::min(dt, 0.4 * h_min / vmax);
  dt = std::min(dt, config.dt_policy.dt_max);
  if (!(dt > 0.0)) throw std::invalid_argument("fd_run: CFL violation");

  evolve::StepperState st;
  st.field = initial;
  evolve::Trajectory traj;

  std::vector<double> snaps = config.snapshot_times;
  for (double& s : snaps) s *= frame_to_internal;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  auto record_of = [&](double dt_used) {
    diag::DiagRecord r;
    r.step = st.step_count;
    r.t_original = resc ? evolve::to_original(st.t, A) : st.t;
    r.t_rescaled = resc ? st.t : evolve::to_rescaled(st.t, A);
    r.dt = dt_used;
    r.mass = integrate(st.field);
    r.l2 = lp_norm(st.field, 2.0);
    r.linf = lp_norm(st.field, kInf);
    r.second_moment = g.topology == Topology::FullSpace
                          ? second_moment(st.field)
                          : std::nan("");
    r.min_value = min_value(st.field);
    r.tail_fraction =
        g.spectral_capable() ? fft::tail_fraction(fft::forward(st.field)) : 0.0;
    return r;
  };

  traj.records.push_back(record_of(0.0));
  const double linf0 = traj.records.front().linf;
  const Stencil sten{g};
  std::vector<double> next(g.size());

  while (st.t < t_end - 1e-12) {
    double step_dt = std::min(dt, t_end - st.t);
    if (next_snap < snaps.size())
      step_dt = std::min(step_dt, std::max(snaps[next_snap] - st.t, 1e-12));

    const ScalarField* chem_n = nullptr;
    elliptic::ChemField chem;
    if (config.model.kind == evolve::ModelSpec::Kind::PKS) {
      chem = elliptic::inverse_laplacian(st.field);
      chem_n = &st.field;
    }

    const std::vector<double>& v = st.field.values;
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < g.n[0]; ++i0)
      for (int i1 = 0; i1 < g.n[1]; ++i1)
        for (int i2 = 0; i2 < g.n[2]; ++i2) {
          const std::array<int, 3> idx = {static_cast<int>(i0), i1, i2};
          const std::size_t u = g.index(idx[0], idx[1], idx[2]);
          double lap = 0.0, adv = 0.0, nl = 0.0;
          for (int a = 0; a < g.dim; ++a) {
            const double h = g.spacing(a);
            const double vp = sten.at(v, idx, a, +1);
            const double vm = sten.at(v, idx, a, -1);
            lap += (vp - 2.0 * v[u] + vm) / (h * h);
            if (!vel.empty()) adv += vel[u][a] * (vp - vm) / (2.0 * h);
          }
          if (chem_n) {
            // centered divergence of the aggregation flux n grad c
            for (int a = 0; a < g.dim; ++a) {
              const double h = g.spacing(a);
              const double fp = sten.at(v, idx, a, +1) *
                                sten.at(chem.grad_c[a].values, idx, a, +1);
              const double fm = sten.at(v, idx, a, -1) *
                                sten.at(chem.grad_c[a].values, idx, a, -1);
              nl -= (fp - fm) / (2.0 * h);
            }
          } else if (config.model.kind == evolve::ModelSpec::Kind::Ignition) {
            nl = evolve::ignition_f(v[u], config.model.alpha);
          }
          next[u] = v[u] + step_dt * (kappa * lap - adv + nlcoef * nl);
        }
    st.field.values.swap(next);
    st.t += step_dt;
    st.step_count += 1;

    if (next_snap < snaps.size() && std::abs(st.t - snaps[next_snap]) <= 1e-9) {
      traj.snapshots.emplace_back(snaps[next_snap], st.field);
      ++next_snap;
    }

    const double linf = ops::max_abs(st.field.values);
    const bool runaway = !std::isfinite(linf) || linf > 1e6 * std::max(linf0, 1e-300);
    const bool at_end = st.t >= t_end - 1e-12;
    if (st.step_count % config.record_every == 0 || at_end || runaway)
      traj.records.push_back(record_of(step_dt));
    if (runaway) {
      traj.events.push_back({diag::EventKind::BlowUp,
                             traj.records.back().t_original,
                             "finite-difference field runaway"});
      return traj;
    }
  }
  traj.reached_end = true;
  return traj;
}

ScalarField kernel_quadrature_apply(const ScalarField& f, double t, double A) {
  const GridSpec& g = f.grid;
  if (g.dim != 2 || g.topology != Topology::FullSpace)
    throw std::domain_error("kernel_quadrature_apply: 2D FullSpace only");
  if (g.n[0] > 48 || g.n[1] > 48)
    throw std::invalid_argument("kernel_quadrature_apply: grid too large (cost guard)");
  if (!(t > 0.0)) throw std::domain_error("kernel_quadrature_apply: t must be > 0");

  const double h2 = g.cell_volume();
  ScalarField out(g);
#pragma omp parallel for schedule(static)
  for (long long i0 = 0; i0 < g.n[0]; ++i0) {
    for (int i1 = 0; i1 < g.n[1]; ++i1) {
      const std::array<double, 2> x = {g.coord(0, static_cast<int>(i0)),
                                       g.coord(1, i1)};
      double acc = 0.0;
      for (int j0 = 0; j0 < g.n[0]; ++j0)
        for (int j1 = 0; j1 < g.n[1]; ++j1)
          acc += kernels::hyperbolic_kernel_2d(
                     t, A, x, {g.coord(0, j0), g.coord(1, j1)}) *
                 f.values[g.index(j0, j1)];
      out.values[g.index(static_cast<int>(i0), i1)] = acc * h2;
    }
  }
  return out;
}

namespace {

// Fourier multiplier exp(-(w1 k1^2 + w2 k2^2) dt) on a channel field.
ScalarField axis_diffusion(const ScalarField& f, double dt, double w1, double w2) {
  SpectralField F = fft::forward(f);
  const GridSpec& g = f.grid;
  const std::size_t total = g.size();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(total); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const int i0 = static_cast<int>(u / g.n[1]);
    const int i1 = static_cast<int>(u % g.n[1]);
    const double k1 = g.wavenumber(0, i0);
    const double k2 = g.wavenumber(1, i1);
    F.modes[u] *= std::exp(-(w1 * k1 * k1 + w2 * k2 * k2) * dt);
  }
  return fft::inverse(F);
}

}  // namespace

double shear_factorization_check(const ScalarField& rho0,
                                 const std::vector<double>& profile, double A,
                                 double t) {
  const GridSpec& g = rho0.grid;
  if (g.dim != 2 || g.topology != Topology::Channel)
    throw std::domain_error("shear_factorization_check: 2D channel only");
  if (!(t > 0.0)) throw std::domain_error("shear_factorization_check: t must be > 0");

  const int nsteps = std::max(1, static_cast<int>(std::ceil(t / 0.005)));
  const double dt = t / nsteps;

  ScalarField rho = rho0, psi = rho0;
  for (int s = 0; s < nsteps; ++s) {
    rho = axis_diffusion(rho, 0.5 * dt, 1.0, 1.0);
    rho = evolve::advect_exact_shear(rho, profile, A, dt);
    rho = axis_diffusion(rho, 0.5 * dt, 1.0, 1.0);

    psi = axis_diffusion(psi, 0.5 * dt, 0.0, 1.0);
    psi = evolve::advect_exact_shear(psi, profile, A, dt);
    psi = axis_diffusion(psi, 0.5 * dt, 0.0, 1.0);
  }
  // convolve psi in x1 with the heat kernel at time t
  const ScalarField predicted = axis_diffusion(psi, t, 1.0, 0.0);

  double num = 0.0;
#pragma omp parallel for schedule(static) reduction(max : num)
  for (long long i = 0; i < static_cast<long long>(rho.values.size()); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    num = std::max(num, std::abs(rho.values[u] - predicted.values[u]));
  }
  const double den = max_abs_value(rho);
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace fastspread::oracle
