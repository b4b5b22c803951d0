#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fastspread/field.hpp"

namespace fastspread::diag {

/// Per-step scalar diagnostics of a run.
struct DiagRecord {
  long step = 0;
  double t_original = 0.0;
  double t_rescaled = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double second_moment = 0.0;  // NaN on channel domains
  double min_value = 0.0;
  double tail_fraction = 0.0;  // energy share of the top-1/3 wavenumber shell
};

enum class EventKind { BlowUp, Quench, DomainOverflow, BootstrapViolation };

std::string to_string(EventKind k);

struct EventRecord {
  EventKind kind;
  double t = 0.0;  // original time
  std::string detail;
};

struct BlowupThresholds {
  double linf_factor = 1e4;
  double tail_limit = 0.1;
};

/// First record whose linf exceeds linf_factor * linf(0) or whose spectral
/// tail fraction exceeds tail_limit (resolution loss signals imminent
/// concentration). none for bounded, resolved runs.
std::optional<EventRecord> blowup_detect(const std::vector<DiagRecord>& records,
                                         const BlowupThresholds& thresholds = {});

/// First time linf drops below the ignition temperature. After that time the
/// reaction is off and linf must be non-increasing (up to 1e-8); a later
/// increase throws a consistency error.
std::optional<EventRecord> quench_detect(const std::vector<DiagRecord>& records,
                                         double alpha);

/// Least-squares slope of second_moment vs t_original over [t_lo, t_hi].
/// For the 2D aggregation model without flow this matches 4M - M^2/(2 pi).
double virial_slope(const std::vector<DiagRecord>& records, double t_lo,
                    double t_hi);

struct BootstrapSpec {
  double B = 0.0;       // reference l2 level (initial l2)
  double window = 0.0;  // 10 log A, rescaled time
};

struct BootstrapWindow {
  int k = 0;
  double t_start = 0.0, t_end = 0.0;  // rescaled
  double sup_l2 = 0.0;
  double end_l2 = 0.0;
  bool has_end = false;  // window end covered by the records
  bool pass_sup = false;  // sup l2 <= 2B within the window
  bool pass_end = false;  // l2 at window end <= B
};

struct BootstrapReport {
  std::vector<BootstrapWindow> windows;
  std::optional<EventRecord> violation;
  bool all_pass = true;
};

/// Windowed l2 monitor over rescaled-time records: per window of length W,
/// (a) sup l2 <= 2B, (b) l2 at the window end <= B. Disabled (empty report)
/// when window <= 0.
BootstrapReport bootstrap_monitor(const std::vector<DiagRecord>& records,
                                  const BootstrapSpec& spec);

enum class DecayQuantity { L2, Linf };

/// Least-squares slope of log(quantity) vs log(t_original) over
/// [t_min, t_max]; the window must span at least one decade.
double decay_fit(const std::vector<DiagRecord>& records, double t_min,
                 double t_max, DecayQuantity quantity);

/// Max over snapshots and grid points of n - exp(beta t'/A) rho, where the
/// snapshot lists are matched in rescaled time. Negative when the bound holds
/// strictly.
double comparison_check(
    const std::vector<std::pair<double, ScalarField>>& nonlinear_snapshots,
    const std::vector<std::pair<double, ScalarField>>& passive_snapshots,
    double beta, double A);

}  // namespace fastspread::diag
