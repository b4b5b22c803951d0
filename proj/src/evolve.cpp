#include "fastspread/evolve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fastspread/elliptic.hpp"
#include "fastspread/fft.hpp"
#include "fastspread/fieldmath.hpp"
#include "fastspread/ops.hpp"

namespace fastspread::evolve {

namespace {
// Terminal boundary-monitor thresholds. The sheared channel axis wraps real
// transport back into the interior, so the strict level applies. On the
// contracting axes of a hyperbolic run the spectral ringing of a
// concentrating field already sits near 1e-6 of the max across the whole box;
// the terminal level there is set where genuine inflow contamination starts
// to bias results. Worst-case ratios are always reported.
constexpr double kBoundaryLimitChannel = 1e-6;
constexpr double kBoundaryLimitContracting = 1e-3;
constexpr double kTimeEps = 1e-12;
}  // namespace

ModelSpec ModelSpec::ignition(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ModelSpec: alpha must be in (0,1)");
  ModelSpec m;
  m.kind = Kind::Ignition;
  m.alpha = alpha;
  m.beta = ignition_beta(alpha);
  return m;
}

bool SimConfig::rescaled_internally() const {
  return flow.kind == FlowSpec::Kind::Hyperbolic && flow.amplitude > 0.0;
}

void SimConfig::validate() const {
  grid.validate();
  if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end must be > 0");
  if (!(dt_policy.c_stab > 0.0 && dt_policy.c_stab <= 1.0))
    throw std::invalid_argument("SimConfig: c_stab must be in (0,1]");
  if (!(dt_policy.dt_max > 0.0))
    throw std::invalid_argument("SimConfig: dt_max must be > 0");
  if (record_every < 1)
    throw std::invalid_argument("SimConfig: record_every must be >= 1");
  if (flow.kind == FlowSpec::Kind::Hyperbolic &&
      grid.topology != Topology::FullSpace)
    throw std::invalid_argument("SimConfig: hyperbolic flow needs FullSpace topology");
  if (flow.kind == FlowSpec::Kind::Shear) {
    if (grid.topology != Topology::Channel)
      throw std::invalid_argument("SimConfig: shear flow needs Channel topology");
    if (flow.profile.size() != transverse_size(grid))
      throw std::invalid_argument("SimConfig: shear profile does not match grid");
  }
  if (frame == Frame::Rescaled && !rescaled_internally())
    throw std::invalid_argument(
        "SimConfig: rescaled frame applies only to hyperbolic runs with A > 0");
  if (model.kind == ModelSpec::Kind::Ignition &&
      !(model.alpha > 0.0 && model.alpha < 1.0))
    throw std::invalid_argument("SimConfig: ignition alpha must be in (0,1)");
}

namespace {

// Cardinal function of trigonometric interpolation on n points with period p
// (even n, symmetric Nyquist treatment).
double dirichlet(double theta, int n, double period) {
  double u = 2.0 * M_PI * theta / period;
  u -= 2.0 * M_PI * std::round(u / (2.0 * M_PI));
  if (std::abs(u) < 1e-13) return 1.0;
  return std::sin(0.5 * n * u) / (n * std::tan(0.5 * u));
}

// Resample one axis at back-traced points s*x_i; zero outside the box.
void resample_axis(const GridSpec& g, int axis, double s,
                   const std::vector<double>& in, std::vector<double>& out) {
  const int n = g.n[axis];
  const double L = g.half_length[axis];
  std::vector<double> R(static_cast<std::size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const double y = s * g.coord(axis, static_cast<int>(i));
    double* row = R.data() + static_cast<std::size_t>(i) * n;
    if (y < -L || y >= L) continue;  // zero extension
    for (int j = 0; j < n; ++j) row[j] = dirichlet(y - g.coord(axis, j), n, 2.0 * L);
  }
  ops::apply_axis_operator(g, axis, R, in, out);
}

// 1D c2c plans for per-line transforms along axis 0.
fftw_plan line_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> buf(n);
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                 reinterpret_cast<fftw_complex*>(buf.data()),
                                 sign, FFTW_ESTIMATE);
  if (!p) throw std::runtime_error("advect_exact_shear: plan creation failed");
  cache.emplace(std::make_pair(n, sign), p);
  return p;
}

}  // namespace

ScalarField advect_exact_hyperbolic(const ScalarField& f, double dt) {
  const GridSpec& g = f.grid;
  if (g.topology != Topology::FullSpace)
    throw std::domain_error("advect_exact_hyperbolic: FullSpace grids only");
  if (dt == 0.0) return f;
  const double rate = 1.0 / (g.dim - 1);
  ScalarField cur = f, next(g);
  for (int axis = 0; axis < g.dim; ++axis) {
    const double s = axis == g.dim - 1 ? std::exp(-dt) : std::exp(rate * dt);
    resample_axis(g, axis, s, cur.values, next.values);
    std::swap(cur.values, next.values);
  }
  return cur;
}

ScalarField advect_exact_shear(const ScalarField& f,
                               const std::vector<double>& profile, double A,
                               double dt) {
  const GridSpec& g = f.grid;
  if (g.topology != Topology::Channel)
    throw std::domain_error("advect_exact_shear: Channel grids only");
  if (profile.size() != transverse_size(g))
    throw std::invalid_argument("advect_exact_shear: profile size mismatch");
  if (dt == 0.0 || A == 0.0) return f;
  if (!is_power_of_two(g.n[0]))
    throw std::invalid_argument("advect_exact_shear: n[0] must be a power of two");

  const int n0 = g.n[0];
  const std::size_t nlines = transverse_size(g);  // equals stride(0)
  fftw_plan fwd = line_plan(n0, FFTW_FORWARD);
  fftw_plan bwd = line_plan(n0, FFTW_BACKWARD);

  ScalarField out(g);
#pragma omp parallel
  {
    std::vector<std::complex<double>> line(n0);
#pragma omp for schedule(static)
    for (long long l = 0; l < static_cast<long long>(nlines); ++l) {
      const std::size_t base = static_cast<std::size_t>(l);
      const double shift = A * profile[base] * dt;
      if (shift == 0.0) {  // unsheared rows pass through exactly
        for (int j = 0; j < n0; ++j)
          out.values[base + static_cast<std::size_t>(j) * nlines] =
              f.values[base + static_cast<std::size_t>(j) * nlines];
        continue;
      }
      for (int j = 0; j < n0; ++j)
        line[j] = f.values[base + static_cast<std::size_t>(j) * nlines];
      fftw_execute_dft(fwd, reinterpret_cast<fftw_complex*>(line.data()),
                       reinterpret_cast<fftw_complex*>(line.data()));
      for (int j = 0; j < n0; ++j) {
        const double k = g.wavenumber(0, j);
        line[j] *= std::polar(1.0, -k * shift);
      }
      fftw_execute_dft(bwd, reinterpret_cast<fftw_complex*>(line.data()),
                       reinterpret_cast<fftw_complex*>(line.data()));
      for (int j = 0; j < n0; ++j)
        out.values[base + static_cast<std::size_t>(j) * nlines] =
            line[j].real() / n0;
    }
  }
  return out;
}

ScalarField diffusion_step_exact(const ScalarField& f, double dt, double kappa,
                                 double* tail_out, bool dealias_band) {
  if (dt < 0.0) throw std::invalid_argument("diffusion_step_exact: dt must be >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("diffusion_step_exact: kappa must be > 0");
  if (dt == 0.0 && !tail_out) return f;

  const GridSpec& g = f.grid;
  SpectralField F = fft::forward(f);
  if (dt > 0.0) {
    const std::size_t total = g.size();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      std::size_t rem = u;
      double k2 = 0.0;
      for (int a = g.dim - 1; a >= 0; --a) {
        const int idx = static_cast<int>(rem % g.n[a]);
        rem /= g.n[a];
        const double k = g.wavenumber(a, idx);
        k2 += k * k;
      }
      F.modes[u] *= std::exp(-kappa * k2 * dt);
    }
  }
  if (tail_out) *tail_out = fft::tail_fraction(F, dealias_band);
  if (dt == 0.0) return f;
  return fft::inverse(F);
}

ScalarField pks_rhs(const ScalarField& n, bool dealias) {
  const GridSpec& g = n.grid;
  const elliptic::ChemField chem = elliptic::inverse_laplacian(n);

  SpectralField rhs_hat(g);
  ScalarField flux(g);
  for (int a = 0; a < g.dim; ++a) {
    ops::multiply(flux.values, n.values, chem.grad_c[a].values);
    SpectralField F = fft::forward(flux);
    const std::size_t total = g.size();
    const std::size_t stride = g.stride(a);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      const int idx = static_cast<int>((u / stride) % g.n[a]);
      const double k = g.deriv_wavenumber(a, idx);
      // accumulate -i k_a F_a
      rhs_hat.modes[u] -= std::complex<double>(0.0, k) * F.modes[u];
    }
  }
  if (dealias) fft::dealias(rhs_hat);
  return fft::inverse(rhs_hat);
}

double ignition_f(double z, double alpha) {
  if (z <= alpha || z >= 1.0) return 0.0;
  return (z - alpha) * (1.0 - z);
}

double ignition_beta(double alpha) {
  static std::map<double, double> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  double beta = 0.0;
  const int sweep = 1000000;
  for (int i = 1; i <= sweep; ++i) {
    const double z = static_cast<double>(i) / sweep;
    beta = std::max(beta, ignition_f(z, alpha) / z);
  }
  cache.emplace(alpha, beta);
  return beta;
}

ScalarField reaction_step(const ScalarField& n, double dt, double alpha) {
  if (dt < 0.0) throw std::invalid_argument("reaction_step: dt must be >= 0");
  if (dt == 0.0) return n;
  const int nsub = std::max(1, static_cast<int>(std::ceil(dt / 0.05)));
  const double h = dt / nsub;
  ScalarField out = n;
  ops::indexed_update(out.values, [&](std::size_t, double z) {
    for (int s = 0; s < nsub; ++s) {
      const double k1 = ignition_f(z, alpha);
      const double k2 = ignition_f(z + 0.5 * h * k1, alpha);
      const double k3 = ignition_f(z + 0.5 * h * k2, alpha);
      const double k4 = ignition_f(z + h * k3, alpha);
      z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return z;
  });
  return out;
}

StepInfo strang_step(StepperState& state, const SimConfig& config, double dt) {
  const bool resc = config.rescaled_internally();
  const double A = config.flow.amplitude;
  const double kappa = resc ? 1.0 / A : 1.0;
  const double nlcoef = resc ? 1.0 / A : 1.0;

  if (dt <= 0.0) {
    const double linf = ops::max_abs(state.field.values);
    dt = std::min(config.dt_policy.dt_max,
                  config.dt_policy.c_stab / (1.0 + linf));
  }

  ScalarField f = diffusion_step_exact(state.field, 0.5 * dt, kappa);

  if (config.flow.amplitude > 0.0) {
    if (config.flow.kind == FlowSpec::Kind::Hyperbolic)
      f = advect_exact_hyperbolic(f, dt);
    else
      f = advect_exact_shear(f, config.flow.profile, A, dt);
  }

  switch (config.model.kind) {
    case ModelSpec::Kind::PassiveScalar:
      break;
    case ModelSpec::Kind::PKS: {
      const ScalarField r1 = pks_rhs(f, config.dealias);
      ScalarField mid = f;
      ops::axpy(mid.values, 0.5 * nlcoef * dt, r1.values);
      const ScalarField r2 = pks_rhs(mid, config.dealias);
      ops::axpy(f.values, nlcoef * dt, r2.values);
      break;
    }
    case ModelSpec::Kind::Ignition:
      f = reaction_step(f, nlcoef * dt, config.model.alpha);
      break;
  }

  StepInfo info;
  info.dt = dt;
  state.field = diffusion_step_exact(f, 0.5 * dt, kappa, &info.tail_fraction,
                                     config.dealias);
  state.t += dt;
  state.step_count += 1;
  return info;
}

namespace {

diag::DiagRecord make_record(const StepperState& st, const SimConfig& config,
                             double dt, double tail) {
  const bool resc = config.rescaled_internally();
  const double A = config.flow.amplitude;
  diag::DiagRecord r;
  r.step = st.step_count;
  r.t_original = resc ? to_original(st.t, A) : st.t;
  r.t_rescaled = resc ? st.t : to_rescaled(st.t, A);
  r.dt = dt;
  r.mass = integrate(st.field);
  r.l2 = lp_norm(st.field, 2.0);
  r.linf = lp_norm(st.field, kInf);
  r.second_moment = config.grid.topology == Topology::FullSpace
                        ? second_moment(st.field)
                        : std::nan("");
  r.min_value = min_value(st.field);
  r.tail_fraction = tail;
  return r;
}

// Axes whose warm boundary shell invalidates the run. The stretching axis of
// a hyperbolic flow is a pure-outflow truncation (mass escapes to infinity by
// design) and stays advisory; the contracting axes and the sheared channel
// axis wrap contamination back into the interior.
std::vector<int> terminal_monitor_axes(const SimConfig& config) {
  std::vector<int> axes;
  if (config.flow.amplitude <= 0.0) return axes;
  if (config.flow.kind == FlowSpec::Kind::Hyperbolic) {
    for (int a = 0; a < config.grid.dim - 1; ++a) axes.push_back(a);
  } else {
    axes.push_back(0);
  }
  return axes;
}

}  // namespace

Trajectory run(const SimConfig& config, const ScalarField& initial,
               const RecordObserver& observer) {
  config.validate();
  if (!(initial.grid == config.grid))
    throw std::invalid_argument("run: initial data grid does not match config");

  const bool resc = config.rescaled_internally();
  const double A = config.flow.amplitude;
  const double frame_to_internal =
      resc && config.frame == Frame::Original ? A : 1.0;

  const double t_end = config.t_end * frame_to_internal;
  std::vector<double> snaps = config.snapshot_times;
  for (double& s : snaps) s *= frame_to_internal;
  std::sort(snaps.begin(), snaps.end());

  Trajectory traj;
  StepperState st;
  st.field = initial;

  const std::vector<int> terminal_axes = terminal_monitor_axes(config);
  const int monitored = config.grid.topology == Topology::Channel
                            ? 1
                            : config.grid.dim;

  double tail0 = 0.0;
  if (config.grid.spectral_capable())
    tail0 = fft::tail_fraction(fft::forward(initial), config.dealias);
  diag::DiagRecord rec = make_record(st, config, 0.0, tail0);
  const double linf0 = rec.linf;
  traj.records.push_back(rec);
  if (observer) observer(rec);

  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= kTimeEps) {
    traj.snapshots.emplace_back(snaps[next_snap], st.field);
    ++next_snap;
  }

  bool quenched = false;
  while (st.t < t_end - kTimeEps) {
    const double linf = ops::max_abs(st.field.values);
    double dt = std::min(config.dt_policy.dt_max,
                         config.dt_policy.c_stab / (1.0 + linf));
    dt = std::min(dt, t_end - st.t);
    if (next_snap < snaps.size()) dt = std::min(dt, snaps[next_snap] - st.t);
    if (dt <= kTimeEps) {  // degenerate clip: snapshot collides with t
      if (next_snap < snaps.size()) {
        traj.snapshots.emplace_back(snaps[next_snap], st.field);
        ++next_snap;
        continue;
      }
      break;
    }

    const StepInfo info = strang_step(st, config, dt);
    rec = make_record(st, config, info.dt, info.tail_fraction);

    if (next_snap < snaps.size() && std::abs(st.t - snaps[next_snap]) <= 1e-9) {
      traj.snapshots.emplace_back(snaps[next_snap], st.field);
      ++next_snap;
    }

    const bool at_end = st.t >= t_end - kTimeEps;
    bool terminal = false;

    if (!std::isfinite(rec.linf) || !std::isfinite(rec.mass)) {
      traj.events.push_back(
          {diag::EventKind::BlowUp, rec.t_original, "non-finite field"});
      terminal = true;
    } else if (linf0 > 0.0 && rec.linf > config.blowup.linf_factor * linf0) {
      traj.events.push_back({diag::EventKind::BlowUp, rec.t_original,
                             "linf exceeded threshold factor"});
      terminal = true;
    } else if (rec.tail_fraction > config.blowup.tail_limit) {
      traj.events.push_back({diag::EventKind::BlowUp, rec.t_original,
                             "spectral tail above resolution limit"});
      terminal = true;
    }

    if (!terminal) {
      const double limit = config.grid.topology == Topology::Channel
                               ? kBoundaryLimitChannel
                               : kBoundaryLimitContracting;
      for (int a = 0; a < monitored; ++a) {
        const double ratio = boundary_shell_ratio(st.field, a);
        traj.boundary_worst = std::max(traj.boundary_worst, ratio);
        if (ratio > limit &&
            std::find(terminal_axes.begin(), terminal_axes.end(), a) !=
                terminal_axes.end()) {
          traj.events.push_back({diag::EventKind::DomainOverflow, rec.t_original,
                                 "boundary shell ratio " + std::to_string(ratio) +
                                     " on axis " + std::to_string(a)});
          terminal = true;
          break;
        }
      }
    }

    if (!terminal && !quenched &&
        config.model.kind == ModelSpec::Kind::Ignition &&
        rec.linf < config.model.alpha) {
      quenched = true;
      traj.events.push_back({diag::EventKind::Quench, rec.t_original,
                             "linf dropped below ignition temperature"});
    }

    if (st.step_count % config.record_every == 0 || terminal || at_end) {
      traj.records.push_back(rec);
      if (observer) observer(rec);
    }

    if (terminal) return traj;
  }
  traj.reached_end = true;
  return traj;
}

}  // namespace fastspread::evolve
