#pragma once

#include <array>
#include <string>
#include <vector>

#include "fastspread/evolve.hpp"

namespace fastspread::harness {

enum class ExperimentKind {
  Simulate,
  SuppressionThreshold,
  QuenchThreshold,
  DecayFit3D,
  ShearScaling,
  DissipationCurve,
  KernelCheck,
};

std::string to_string(ExperimentKind k);

/// Initial data recipe.
struct InitSpec {
  enum class Type { Gaussian, Bump, Zero };
  Type type = Type::Gaussian;
  double mass = 1.0;
  double sigma = 0.5;
  double height = 1.0;  // bump plateau height
  double width = 0.25;  // bump edge width
  std::array<double, 3> center = {0.0, 0.0, 0.0};

  ScalarField realize(const GridSpec& grid) const;
};

struct SearchSpec {
  double A_lo = 0.0;
  double A_hi = 1.0;
  double tolerance_rel = 0.25;
  int max_iters = 40;
};

struct FitSpec {
  double t_min = 0.0;
  double t_max = 0.0;
  diag::DecayQuantity quantity = diag::DecayQuantity::L2;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Simulate;
  evolve::SimConfig config;
  InitSpec init;
  SearchSpec search;
  FitSpec fit;
  std::vector<double> amplitudes;  // shear scaling / dissipation curve
  std::string out_dir = "out";
  std::string canonical_json;  // normalized config text, hashed into reports
};

/// Parse and validate a config file (single JSON document). Unknown keys are
/// rejected with their paths; value errors report the offending key.
ExperimentSpec parse_config(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text);

struct SearchVerdict {
  double A = 0.0;
  bool success = false;
  std::string note;
};

struct SearchResult {
  double A0_estimate = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<SearchVerdict> verdicts;  // every run, in evaluation order
};

/// Bisection for the smallest amplitude where the model-specific predicate
/// holds (suppression: survives to t_end with no blow-up and final l2 at or
/// below the initial; quenching: the quench event fires). The predicate must
/// fail at A_lo and hold at A_hi unless it already holds at A_lo, in which
/// case A_lo is returned unchanged.
SearchResult threshold_search(const ExperimentSpec& spec);

/// Execute the experiment recipe: write diagnostics CSVs, snapshots, and a
/// JSON summary into spec.out_dir. Returns a process exit code (0 success).
int run_experiment(const ExperimentSpec& spec);

void write_records_csv(const std::string& path,
                       const std::vector<diag::DiagRecord>& records);
std::vector<diag::DiagRecord> read_records_csv(const std::string& path);

/// FNV-1a 64-bit fingerprint of the canonical config text, as hex.
std::string config_hash(const std::string& canonical_json);

/// One row of the kernel verification sweep.
struct KernelCheckRow {
  double t = 0.0, A = 0.0;
  int dim = 2;
  double normalization_error = 0.0;  // |integral K dx' - 1|
  double envelope_ratio = 0.0;       // ||K_t f||_inf / (envelope ||f||_1)
  double semigroup_error = 0.0;      // rel Linf defect of K_{s+t} vs K_t K_s
};

std::vector<KernelCheckRow> kernel_check_sweep();

}  // namespace fastspread::harness
