#include <doctest.h>

#include <cmath>

#include "ttlab/config.hpp"
#include "ttlab/report.hpp"
#include "ttlab/runner.hpp"

using namespace ttlab;

namespace {

const char* kInlineFull3 = R"({
  "alphabet": 3,
  "transitions": [[1,1,1],[1,1,1],[1,1,1]],
  "measure": "parry",
  "lyapunov": 1.0986122886681098,
  "sided": "one"
})";

std::string z_extension_config() {
  return std::string(R"({
    "scenario": "z-extension",
    "seed": 424242,
    "x_shift": )") +
         kInlineFull3 +
         R"(,
    "cocycle": [-1, 0, 1],
    "radii_generations": [3],
    "trials": 300,
    "horizon_T": 1.0
  })";
}

}  // namespace

TEST_CASE("schema errors list every offending key") {
  try {
    parse_config(R"({"scenario": "nope"})", "");
    CHECK(false);
  } catch (const SchemaError& e) {
    CHECK(e.problems.size() >= 2);  // unknown scenario + missing seed
    bool has_seed = false;
    for (const auto& p : e.problems)
      has_seed |= p.find("seed") != std::string::npos;
    CHECK(has_seed);
  }

  // trials = 0 rejected for trial-driven scenarios.
  try {
    parse_config(std::string(R"({
      "scenario": "z-extension",
      "seed": 7,
      "x_shift": )") + kInlineFull3 +
                     R"(,
      "cocycle": [-1, 0, 1],
      "radii_generations": [3],
      "trials": 0
    })",
                 "");
    CHECK(false);
  } catch (const SchemaError& e) {
    bool has_trials = false;
    for (const auto& p : e.problems)
      has_trials |= p.find("trials") != std::string::npos;
    CHECK(has_trials);
  }
}

TEST_CASE("valid config parses with defaults") {
  const auto cfg = parse_config(z_extension_config(), "");
  CHECK(cfg.scenario == Scenario::z_extension);
  CHECK(cfg.seed == 424242);
  CHECK(cfg.x_shift.has_value());
  CHECK(cfg.mc.steps_per_unit == 100000);
  CHECK(cfg.cap_multiplier == 1000.0);
}

TEST_CASE("runner output is byte-identical across worker counts") {
  // One config; the worker count arrives from outside (CLI flag / env), so
  // the provenance hash must not change with it.
  std::string json1, json2, json8, csv1, csv2, csv8;
  for (int workers : {1, 2, 8}) {
    auto cfg = parse_config(z_extension_config(), "");
    cfg.workers = workers;
    const auto out = run_experiment(cfg);
    const std::string rep = report_to_json(out.report);
    if (workers == 1) {
      json1 = rep;
      csv1 = out.csv.text();
    } else if (workers == 2) {
      json2 = rep;
      csv2 = out.csv.text();
    } else {
      json8 = rep;
      csv8 = out.csv.text();
    }
  }
  CHECK(json1 == json2);
  CHECK(json1 == json8);
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv8);
  CHECK(!csv1.empty());
}

TEST_CASE("corollary-case scenario checks (L^{1-d}, 1) exactly") {
  const auto cfg = parse_config(R"({
    "scenario": "corollary-case",
    "seed": 1,
    "full_shift_L": 3,
    "full_shift_d": 2,
    "radii_generations": [1, 2, 3, 4, 6]
  })",
                                "");
  CsvSink csv;
  const auto report = scenario_corollary_case(cfg, csv);
  CHECK(report.rows.size() == 5);
  for (const auto& row : report.rows) {
    CHECK(row.pass);
    CHECK(row.theoretical == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("config hash is stable and content-sensitive") {
  CHECK(config_hash_hex("abc") == config_hash_hex("abc"));
  CHECK(config_hash_hex("abc") != config_hash_hex("abd"));
  CHECK(config_hash_hex("abc").size() == 16);
}

TEST_CASE("format_g17 round-trips doubles") {
  for (double x : {1.0 / 3.0, 1e-17, 123456.789, std::sqrt(2.0)}) {
    const double back = std::stod(format_g17(x));
    CHECK(back == x);
  }
}

TEST_CASE("moment_compare handles normal and degenerate specs") {
  // Synthetic standard-Poisson event series: counts against (0,1) targets.
  std::vector<EventSeries> samples(400);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Rng rng = Rng::derive(31337, 1, i);
    double t = rng.exponential();
    while (t <= 1.0) {
      samples[i].times.push_back(t);
      t += rng.exponential();
    }
    samples[i].horizon = 1.0;
  }
  McParams mc;
  const auto rows = moment_compare(samples, {0.5, 1.0}, {1, 1},
                                   {0.0, 1.0, 1.0}, mc, 3.0);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(row.pass);
  CHECK(rows[1].theoretical == doctest::Approx(0.5));
  CHECK(rows[2].theoretical == doctest::Approx(0.5));

  // Degenerate interval (t_2 = t_1): all counts and moments are zero.
  const auto degenerate = moment_compare(samples, {0.5, 0.5}, {1, 1},
                                         {0.0, 1.0, 1.0}, mc, 3.0);
  CHECK(degenerate[0].empirical == 0.0);
  CHECK(degenerate[0].theoretical == 0.0);
  CHECK(degenerate[0].pass);

  CHECK_THROWS_AS(moment_compare({samples[0]}, {1.0}, {1},
                                 {0.0, 1.0, 1.0}, mc, 3.0),
                  std::invalid_argument);
}

TEST_CASE("resource guard breaches flag the report INCOMPLETE") {
  auto cfg = parse_config(z_extension_config(), "");
  cfg.scenario = Scenario::llt;  // reuse parsed system
  cfg.llt_ns = {100000000};      // DP budget blown
  const auto out = run_experiment(cfg);
  CHECK(out.report.incomplete);
  CHECK(!out.report.all_pass());
  REQUIRE(!out.report.rows.empty());
  CHECK(out.report.rows.back().name == "INCOMPLETE");
}
