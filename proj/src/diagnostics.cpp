#include "fastspread/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "fastspread/ops.hpp"

namespace fastspread::diag {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::BlowUp: return "blow_up";
    case EventKind::Quench: return "quench";
    case EventKind::DomainOverflow: return "domain_overflow";
    case EventKind::BootstrapViolation: return "bootstrap_violation";
  }
  return "unknown";
}

std::optional<EventRecord> blowup_detect(const std::vector<DiagRecord>& records,
                                         const BlowupThresholds& thresholds) {
  if (records.empty()) return std::nullopt;
  const double linf0 = records.front().linf;
  for (const DiagRecord& r : records) {
    if (!std::isfinite(r.linf))
      return EventRecord{EventKind::BlowUp, r.t_original, "non-finite field"};
    if (linf0 > 0.0 && r.linf > thresholds.linf_factor * linf0)
      return EventRecord{EventKind::BlowUp, r.t_original,
                         "linf exceeded " + std::to_string(thresholds.linf_factor) +
                             "x initial"};
    if (r.tail_fraction > thresholds.tail_limit)
      return EventRecord{EventKind::BlowUp, r.t_original,
                         "spectral tail fraction " + std::to_string(r.tail_fraction) +
                             " above " + std::to_string(thresholds.tail_limit)};
  }
  return std::nullopt;
}

std::optional<EventRecord> quench_detect(const std::vector<DiagRecord>& records,
                                         double alpha) {
  std::optional<EventRecord> event;
  double prev_linf = 0.0;
  for (const DiagRecord& r : records) {
    if (!event) {
      if (r.linf < alpha) {
        event = EventRecord{EventKind::Quench, r.t_original,
                            "linf dropped below ignition temperature"};
        prev_linf = r.linf;
      }
    } else {
      if (r.linf > prev_linf + 1e-8)
        throw std::runtime_error(
            "quench_detect: linf increased after quench (consistency error)");
      prev_linf = r.linf;
    }
  }
  return event;
}

namespace {

double ls_slope(const std::vector<std::pair<double, double>>& xy) {
  const double n = static_cast<double>(xy.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::runtime_error("fit error: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

double virial_slope(const std::vector<DiagRecord>& records, double t_lo,
                    double t_hi) {
  std::vector<std::pair<double, double>> xy;
  for (const DiagRecord& r : records)
    if (r.t_original >= t_lo && r.t_original <= t_hi)
      xy.emplace_back(r.t_original, r.second_moment);
  if (xy.size() < 3)
    throw std::runtime_error("virial_slope: insufficient records in window");
  return ls_slope(xy);
}

BootstrapReport bootstrap_monitor(const std::vector<DiagRecord>& records,
                                  const BootstrapSpec& spec) {
  BootstrapReport report;
  if (!(spec.window > 0.0) || records.empty()) return report;  // disabled
  const double W = spec.window;
  const double t_last = records.back().t_rescaled;
  const int nwin = static_cast<int>(std::ceil(t_last / W - 1e-12));

  for (int k = 0; k < std::max(nwin, 0); ++k) {
    BootstrapWindow w;
    w.k = k;
    w.t_start = k * W;
    w.t_end = (k + 1) * W;
    w.sup_l2 = 0.0;
    double best_gap = 1e300;
    for (const DiagRecord& r : records) {
      if (r.t_rescaled >= w.t_start - 1e-12 && r.t_rescaled <= w.t_end + 1e-12)
        w.sup_l2 = std::max(w.sup_l2, r.l2);
      const double gap = std::abs(r.t_rescaled - w.t_end);
      if (gap < best_gap) {
        best_gap = gap;
        w.end_l2 = r.l2;
      }
    }
    // the end check uses the record nearest the window end; skip windows the
    // records never reach
    w.has_end = best_gap <= 0.05 * W + 1e-9;
    w.pass_sup = w.sup_l2 <= 2.0 * spec.B + 1e-12;
    w.pass_end = !w.has_end || w.end_l2 <= spec.B + 1e-12;
    if (!w.pass_sup || (w.has_end && !w.pass_end)) {
      report.all_pass = false;
      if (!report.violation) {
        const char* what = !w.pass_sup ? "sup l2 above 2B" : "window-end l2 above B";
        report.violation = EventRecord{EventKind::BootstrapViolation,
                                       w.t_end, std::string(what) +
                                           " in window " + std::to_string(k)};
      }
    }
    report.windows.push_back(w);
  }
  return report;
}

double decay_fit(const std::vector<DiagRecord>& records, double t_min,
                 double t_max, DecayQuantity quantity) {
  if (!(t_min > 0.0) || t_max < 10.0 * t_min * (1.0 - 1e-12))
    throw std::invalid_argument("decay_fit: window must span at least one decade");
  std::vector<std::pair<double, double>> xy;
  for (const DiagRecord& r : records) {
    if (r.t_original < t_min || r.t_original > t_max) continue;
    const double q = quantity == DecayQuantity::L2 ? r.l2 : r.linf;
    if (!(q > 0.0))
      throw std::runtime_error("decay_fit: non-positive values in range");
    xy.emplace_back(std::log(r.t_original), std::log(q));
  }
  if (xy.size() < 3) throw std::runtime_error("decay_fit: insufficient records");
  return ls_slope(xy);
}

double comparison_check(
    const std::vector<std::pair<double, ScalarField>>& nonlinear_snapshots,
    const std::vector<std::pair<double, ScalarField>>& passive_snapshots,
    double beta, double A) {
  if (nonlinear_snapshots.size() != passive_snapshots.size())
    throw std::invalid_argument("comparison_check: snapshot lists differ in length");
  double worst = -1e300;
  for (std::size_t s = 0; s < nonlinear_snapshots.size(); ++s) {
    const auto& [tn, n] = nonlinear_snapshots[s];
    const auto& [tp, rho] = passive_snapshots[s];
    if (std::abs(tn - tp) > 1e-9)
      throw std::invalid_argument("comparison_check: snapshot times do not match");
    const double growth = std::exp(beta * tn / A);
    double local = -1e300;
#pragma omp parallel for schedule(static) reduction(max : local)
    for (long long i = 0; i < static_cast<long long>(n.values.size()); ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      local = std::max(local, n.values[u] - growth * rho.values[u]);
    }
    worst = std::max(worst, local);
  }
  return worst;
}

}  // namespace fastspread::diag
