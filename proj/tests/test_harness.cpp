#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fastspread/fieldmath.hpp"
#include "fastspread/harness.hpp"

using namespace fastspread;
namespace hn = fastspread::harness;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_config: minimal passive config gets the defaults") {
  const auto spec = hn::parse_config_text(R"({
    "grid": {"dim": 2, "n": [64, 64], "half_length": [8.0, 8.0]},
    "flow": {"kind": "hyperbolic", "amplitude": 1.0},
    "time": {"t_end": 0.5}
  })");
  CHECK(spec.kind == hn::ExperimentKind::Simulate);
  CHECK(spec.config.dealias == true);
  CHECK(spec.config.dt_policy.c_stab == 0.1);
  CHECK(spec.config.record_every == 1);
  CHECK(spec.config.frame == evolve::Frame::Original);
  CHECK(spec.config.model.kind == evolve::ModelSpec::Kind::PassiveScalar);
  CHECK(spec.init.type == hn::InitSpec::Type::Gaussian);
}

TEST_CASE("parse_config: value errors carry key paths") {
  // alpha outside (0,1)
  CHECK_THROWS_WITH_AS(hn::parse_config_text(R"({
      "grid": {"dim": 2, "n": [64, 64], "half_length": [8, 8]},
      "model": {"kind": "ignition", "alpha": 1.5}
    })"),
                       doctest::Contains("model.alpha"), std::invalid_argument);

  // A_lo >= A_hi
  CHECK_THROWS_WITH_AS(hn::parse_config_text(R"({
      "grid": {"dim": 2, "n": [64, 64], "half_length": [8, 8]},
      "search": {"A_lo": 2.0, "A_hi": 1.0}
    })"),
                       doctest::Contains("search"), std::invalid_argument);

  // unknown keys rejected with their path
  CHECK_THROWS_WITH_AS(hn::parse_config_text(R"({
      "grid": {"dim": 2, "n": [64, 64], "half_length": [8, 8], "spacing": 0.1}
    })"),
                       doctest::Contains("grid.spacing"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(hn::parse_config_text(R"({"grids": {}})"),
                       doctest::Contains("$.grids"), std::invalid_argument);
}

TEST_CASE("parse_config: shear channel with sampled profile") {
  const auto spec = hn::parse_config_text(R"({
    "grid": {"dim": 2, "n": [128, 64], "half_length": [16.0, 0.0], "topology": "channel"},
    "flow": {"kind": "shear", "amplitude": 8.0, "profile": {"type": "sin"}},
    "time": {"t_end": 1.0}
  })");
  CHECK(spec.config.flow.kind == FlowSpec::Kind::Shear);
  CHECK(spec.config.flow.profile.size() == 64);
  CHECK(spec.config.grid.half_length[1] == doctest::Approx(M_PI));
}

TEST_CASE("config_hash: stable fingerprint") {
  CHECK(hn::config_hash("abc") == hn::config_hash("abc"));
  CHECK(hn::config_hash("abc") != hn::config_hash("abd"));
  CHECK(hn::config_hash("{}").size() == 16);
}

TEST_CASE("records CSV round trip") {
  std::vector<diag::DiagRecord> records(3);
  for (int i = 0; i < 3; ++i) {
    records[i].step = i;
    records[i].t_original = 0.1 * i;
    records[i].t_rescaled = 0.4 * i;
    records[i].dt = 0.1;
    records[i].mass = 1.0 + i;
    records[i].l2 = 2.0 / (1 + i);
    records[i].linf = 3.0;
    records[i].second_moment = i == 2 ? std::nan("") : 5.0;
    records[i].min_value = -1e-12;
    records[i].tail_fraction = 1e-9;
  }
  const std::string path = "records_roundtrip.csv";
  hn::write_records_csv(path, records);
  const auto back = hn::read_records_csv(path);
  REQUIRE(back.size() == 3);
  CHECK(back[1].t_original == records[1].t_original);
  CHECK(back[1].mass == records[1].mass);
  CHECK(std::isnan(back[2].second_moment));
  std::remove(path.c_str());
}

TEST_CASE("init spec: bump mass approximates the request") {
  hn::InitSpec init;
  init.type = hn::InitSpec::Type::Bump;
  init.height = 1.0;
  init.mass = 10.0;
  const GridSpec g = GridSpec::square(256, 8.0);
  const ScalarField f = init.realize(g);
  CHECK(lp_norm(f, kInf) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(integrate(f) == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("threshold_search: quench with alpha above the peak is immediate") {
  hn::ExperimentSpec spec;
  spec.kind = hn::ExperimentKind::QuenchThreshold;
  spec.config.grid = GridSpec::square(64, 8.0);
  spec.config.flow = FlowSpec::hyperbolic(1.0);
  spec.config.model = evolve::ModelSpec::ignition(0.9);
  spec.config.t_end = 0.2;
  spec.init.type = hn::InitSpec::Type::Gaussian;
  spec.init.mass = 1.0;
  spec.init.sigma = 0.5;  // peak ~0.64 < alpha: quenched at t = 0
  spec.search = {0.5, 8.0, 0.25, 20};

  const auto res = hn::threshold_search(spec);
  CHECK(res.A0_estimate == 0.5);
  CHECK(res.bracket_lo == res.bracket_hi);
  REQUIRE(!res.verdicts.empty());
  CHECK(res.verdicts.front().success);
}

TEST_CASE("threshold_search: invalid bracket reported") {
  hn::ExperimentSpec spec;
  spec.kind = hn::ExperimentKind::SuppressionThreshold;
  spec.config.grid = GridSpec::square(64, 8.0);
  spec.config.flow = FlowSpec::hyperbolic(0.0);
  spec.config.model = evolve::ModelSpec::pks();
  spec.config.t_end = 2.0;
  spec.init.mass = 1.5 * 8.0 * M_PI;  // supercritical
  spec.init.sigma = 0.5;
  spec.search = {0.0, 0.05, 0.25, 20};  // A_hi far too weak to suppress

  CHECK_THROWS_AS(hn::threshold_search(spec), std::runtime_error);
}

TEST_CASE("run_experiment: simulate writes deterministic outputs") {
  const std::string cfg_text = R"({
    "grid": {"dim": 2, "n": [64, 64], "half_length": [8.0, 8.0]},
    "flow": {"kind": "hyperbolic", "amplitude": 2.0},
    "frame": "rescaled",
    "model": {"kind": "passive"},
    "init": {"type": "gaussian", "mass": 1.0, "sigma": 0.5},
    "time": {"t_end": 0.5, "dt_max": 0.05},
    "output": {"dir": "exp_out_a"}
  })";
  auto spec = hn::parse_config_text(cfg_text);
  CHECK(hn::run_experiment(spec) == 0);
  CHECK(std::filesystem::exists("exp_out_a/diagnostics.csv"));
  CHECK(std::filesystem::exists("exp_out_a/summary.json"));

  spec.out_dir = "exp_out_b";
  CHECK(hn::run_experiment(spec) == 0);
  CHECK(slurp("exp_out_a/diagnostics.csv") == slurp("exp_out_b/diagnostics.csv"));

  const std::string summary = slurp("exp_out_a/summary.json");
  CHECK(summary.find("config_hash") != std::string::npos);
  CHECK(summary.find("boundary_monitor_worst") != std::string::npos);

  std::filesystem::remove_all("exp_out_a");
  std::filesystem::remove_all("exp_out_b");
}

TEST_CASE("kernel sweep rows stay within contract bounds") {
  const auto rows = hn::kernel_check_sweep();
  REQUIRE(rows.size() == 24);
  for (const auto& r : rows) {
    CHECK(r.normalization_error < (r.dim == 2 ? 1e-8 : 1e-6));
    CHECK(r.envelope_ratio <= 1.0 + 1e-9);
  }
}
