#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fastspread/diagnostics.hpp"
#include "fastspread/field.hpp"
#include "fastspread/flow.hpp"

namespace fastspread::evolve {

/// Which nonlinearity is active.
struct ModelSpec {
  enum class Kind { PassiveScalar, PKS, Ignition };
  Kind kind = Kind::PassiveScalar;
  double alpha = 0.0;  // ignition temperature, in (0,1)
  double beta = 0.0;   // sup_z f(z)/z, computed and cached for Ignition

  static ModelSpec passive() { return {}; }
  static ModelSpec pks() { return {Kind::PKS, 0.0, 0.0}; }
  static ModelSpec ignition(double alpha);
};

/// Time frame in which t_end, dt_policy, and snapshot_times are expressed.
/// Hyperbolic runs always execute internally in the rescaled frame
/// (t' = A t): the unit-amplitude flow makes the advection map
/// amplitude-independent and diffusivity becomes A^{-1}.
enum class Frame { Original, Rescaled };

struct DtPolicy {
  double c_stab = 0.1;
  double dt_max = 0.1;
};

struct SimConfig {
  GridSpec grid;
  FlowSpec flow;
  ModelSpec model;
  Frame frame = Frame::Original;
  double t_end = 1.0;
  DtPolicy dt_policy;
  bool dealias = true;
  int record_every = 1;
  std::vector<double> snapshot_times;  // in `frame` units
  diag::BlowupThresholds blowup;

  void validate() const;
  /// True when the run steps in rescaled time (hyperbolic, A > 0).
  bool rescaled_internally() const;
};

struct StepperState {
  double t = 0.0;  // internal-frame time
  ScalarField field;
  long step_count = 0;
};

inline double to_rescaled(double t_original, double A) { return A * t_original; }
inline double to_original(double t_rescaled, double A) { return t_rescaled / A; }

/// f composed with the inverse unit-amplitude hyperbolic flow map over dt
/// (rescaled frame): coordinates scale by e^{dt/(d-1)} on contracting axes and
/// e^{-dt} on the stretching axis. Separable band-limited resampling with zero
/// extension outside the box.
ScalarField advect_exact_hyperbolic(const ScalarField& f, double dt);

/// Per transverse node, shift along axis 0 by A u(x_-) dt via the Fourier
/// phase factor exp(-i k1 A u dt).
ScalarField advect_exact_shear(const ScalarField& f,
                               const std::vector<double>& profile, double A,
                               double dt);

/// Exact diffusion: Fourier multiplier exp(-kappa |k|^2 dt). If tail_out is
/// given it receives the tail fraction of the post-step spectrum, measured on
/// the dealiased band when dealias_band is set.
ScalarField diffusion_step_exact(const ScalarField& f, double dt, double kappa,
                                 double* tail_out = nullptr,
                                 bool dealias_band = false);

/// -div(n grad (-Laplace)^{-1} n), the aggregation term. The flux product is
/// 2/3-rule dealiased when requested.
ScalarField pks_rhs(const ScalarField& n, bool dealias = true);

/// Ignition reaction f(z) = (z - alpha)(1 - z) on [alpha, 1], 0 elsewhere.
double ignition_f(double z, double alpha);

/// sup_{z in (0,1]} f(z)/z via a dense sweep (cached per alpha).
double ignition_beta(double alpha);

/// Pointwise RK4 integration of dz/ds = f(z) over s in [0, dt]. Values
/// outside [0,1] are fixed points of f and pass through unchanged.
ScalarField reaction_step(const ScalarField& n, double dt, double alpha);

struct StepInfo {
  double dt = 0.0;             // internal-frame step actually taken
  double tail_fraction = 0.0;  // of the post-step field
};

/// One splitting step: half-diffusion, exact advection, nonlinear substep
/// (midpoint rule for the aggregation term, RK4 for the reaction),
/// half-diffusion. dt <= 0 requests the policy value
/// min(dt_max, c_stab / (1 + ||n||_inf)).
StepInfo strang_step(StepperState& state, const SimConfig& config,
                     double dt = -1.0);

struct Trajectory {
  std::vector<diag::DiagRecord> records;
  std::vector<diag::EventRecord> events;
  /// (rescaled-frame time for hyperbolic runs, internal time otherwise, field)
  std::vector<std::pair<double, ScalarField>> snapshots;
  bool reached_end = false;
  double boundary_worst = 0.0;  // worst shell ratio seen over all truncated axes
};

using RecordObserver = std::function<void(const diag::DiagRecord&)>;

/// Step until t_end or a terminal event (blow-up, domain overflow). Records
/// diagnostics every record_every steps (always the first and last step).
/// Deterministic given config and initial data.
Trajectory run(const SimConfig& config, const ScalarField& initial,
               const RecordObserver& observer = nullptr);

}  // namespace fastspread::evolve
