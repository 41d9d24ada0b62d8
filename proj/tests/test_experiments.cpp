#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "catk/experiments.hpp"

using namespace catk;

TEST_CASE("key=value configuration parsing") {
  const std::string text = R"(
# comment line
space.kappa = 2.0
space.dim = 2
ball.radius = 0.03        # trailing comment
map.kind = rotation
map.angle = 0.7
schedule.kind = sqrt
epsilons = 0.5, 0.25
g.kind = affine
g.a = 2
g.b = 3
seed = 99
bigcount.digit_budget = 5000
bigcount.log_estimate = true
)";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.kappa == 2.0);
  CHECK(cfg.radius == 0.03);
  CHECK(cfg.map_kind == "rotation");
  CHECK(cfg.angle == 0.7);
  CHECK(cfg.schedule_kind == "sqrt");
  CHECK(cfg.epsilons == std::vector<double>{0.5, 0.25});
  CHECK(cfg.g_kind == "affine");
  CHECK(cfg.g_a == 2);
  CHECK(cfg.g_b == 3);
  CHECK(cfg.seed == 99);
  CHECK(cfg.digit_budget == 5000);
  CHECK(cfg.log_estimate);

  CHECK_THROWS_AS(parse_config_text("nonsense line"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("space.kappa = abc"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("no.such.key = 1"), ConfigError);
}

TEST_CASE("JSON configuration parsing") {
  const std::string text = R"({
    "space": {"kappa": 4.0, "dim": 2},
    "ball": {"radius": 0.02},
    "map": {"kind": "pull", "rho": 0.25},
    "epsilons": [0.5, 0.125],
    "g": {"kind": "table", "values": [1, 2, 3], "beyond": 0},
    "seed": 7
  })";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.kappa == 4.0);
  CHECK(cfg.radius == 0.02);
  CHECK(cfg.rho == 0.25);
  CHECK(cfg.epsilons == std::vector<double>{0.5, 0.125});
  CHECK(cfg.g_kind == "table");
  CHECK(cfg.g_values == std::vector<std::int64_t>{1, 2, 3});
  CHECK(cfg.seed == 7);
  CHECK_THROWS_AS(parse_config_text("{ bad json"), ConfigError);
}

TEST_CASE("config materialization") {
  ExperimentConfig cfg;
  cfg.kappa = 1.0;
  cfg.radius = 0.05;
  const ConvexBall ball = make_ball(cfg);
  CHECK(ball.curv.kappa == 1.0);
  CHECK(ball.center.direction[2] == 1.0);

  const NonexpansiveMap pull = make_map(cfg);
  CHECK(pull.ball().contains(pull.fixed_point()));
  const ModelPoint u = make_start(cfg);
  CHECK(ball.contains(u));
  CHECK(distance(u, pull.fixed_point(), ball.curv) > 1e-3); // distinct start

  cfg.map_kind = "composition";
  CHECK((make_map(cfg).fixed_point().direction - ball.center.direction).norm() == 0.0);

  cfg.map_kind = "bogus";
  CHECK_THROWS_AS(make_map(cfg), ConfigError);

  cfg.map_kind = "pull";
  cfg.schedule_kind = "custom";
  cfg.lambda_kind = "inv_sqrt";
  cfg.theta_kind = "poly";
  const ModuliSchedule s = make_schedule(cfg);
  CHECK(s.lambda(3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.theta.exact(3) == 25);
}

TEST_CASE("asreg run respects bounds and is deterministic") {
  ExperimentConfig cfg;
  cfg.kappa = 1.0;
  cfg.radius = 0.05;
  cfg.map_kind = "pull";
  cfg.epsilons = {0.6, 0.3};
  cfg.horizon = 20'000;
  const AsregReport rep = run_asreg(cfg);
  CHECK(rep.exit_code() == kExitOk);
  CHECK(rep.recurrence_residual <= 1e-9);
  for (const auto& e : rep.entries) {
    CHECK(e.feasible);
    CHECK(e.respected);
  }
  const AsregReport rep2 = run_asreg(cfg);
  CHECK(rep.to_json().dump() == rep2.to_json().dump());
}

TEST_CASE("asreg rejects an infeasible grid") {
  ExperimentConfig cfg;
  cfg.epsilons = {1e-4};
  cfg.horizon = 1'000;
  CHECK_THROWS_AS(run_asreg(cfg), ConfigError);
}

TEST_CASE("meta run: estimate flag and window search") {
  ExperimentConfig cfg;
  cfg.kappa = 1.0;
  cfg.radius = 0.05;
  cfg.map_kind = "pull";
  cfg.epsilons = {0.02};
  cfg.g_kind = "affine";
  cfg.g_a = 1;
  cfg.g_b = 0;
  cfg.horizon = 20'000;
  const MetaReport rep = run_meta(cfg);
  REQUIRE(rep.entries.size() == 1);
  const MetaEntry& e = rep.entries[0];
  CHECK(e.window_found);
  CHECK_FALSE(e.sigma_exact); // harmonic tower is astronomically large
  CHECK(e.verdict == "estimate-flagged");
  CHECK(rep.exit_code() == kExitOk);
}

TEST_CASE("meta run: exact Sigma with the sqrt schedule at tiny M") {
  ExperimentConfig cfg;
  cfg.kappa = 1.0;
  cfg.radius = 0.0005; // M = 0.001
  cfg.map_kind = "pull";
  cfg.schedule_kind = "sqrt";
  cfg.epsilons = {1.9};
  cfg.horizon = 2'000;
  const MetaReport rep = run_meta(cfg);
  REQUIRE(rep.entries.size() == 1);
  const MetaEntry& e = rep.entries[0];
  CHECK(e.window_found);
  CHECK(e.n_emp == 0);
  CHECK(e.sigma_exact);
  CHECK(e.verdict == "respected");
  CHECK(rep.exit_code() == kExitOk);
}

TEST_CASE("browder run") {
  ExperimentConfig cfg;
  cfg.kappa = 1.0;
  cfg.radius = 0.05;
  cfg.map_kind = "pull";
  cfg.epsilons = {0.5};
  cfg.g_kind = "constant";
  cfg.g_c = 1;
  const BrowderReport rep = run_browder(cfg);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].k_bound.value() == 1);
  CHECK(rep.entries[0].k_emp <= 1);
  CHECK(rep.entries[0].respected);
  CHECK(rep.max_monotonicity_violation <= 2e-11);
  CHECK(rep.exit_code() == kExitOk);

  cfg.epsilons = {1.5};
  CHECK_THROWS_AS(run_browder(cfg), ConfigError);
}

TEST_CASE("fuzz suite wiring") {
  ExperimentConfig cfg;
  cfg.fuzz_accepted = 120;
  cfg.fuzz_kappas = {1.0};
  cfg.fuzz_msk = {0.8};
  cfg.fuzz_trace_steps = 300;
  cfg.oracles = {"sin_sum", "ratio_comparison"};
  const FuzzSuiteReport rep = run_fuzz(cfg);
  CHECK(rep.reports.size() == 2);
  CHECK_FALSE(rep.any_violation);
  CHECK(rep.exit_code() == kExitOk);

  cfg.oracles = {"selftest_flip"};
  const FuzzSuiteReport bad = run_fuzz(cfg);
  CHECK(bad.any_violation);
  CHECK(bad.exit_code() == kExitInequalityViolation);

  cfg.oracles = {"no_such_oracle"};
  CHECK_THROWS_AS(run_fuzz(cfg), ConfigError);

  cfg.oracles = {"product_identity"};
  const FuzzSuiteReport a = run_fuzz(cfg);
  const FuzzSuiteReport b = run_fuzz(cfg);
  CHECK(a.to_json().dump() == b.to_json().dump()); // byte-identical reports
}

TEST_CASE("rates document") {
  ExperimentConfig cfg;
  cfg.epsilons = {0.2};
  cfg.digit_budget = 4000;
  const RatesReport rep = run_rates(cfg);
  const auto& doc = rep.document;
  CHECK(doc["schedule"] == "harmonic");
  REQUIRE(doc["per_eps"].size() == 1);
  CHECK(doc["per_eps"][0]["phi_tilde"]["value"] == "1024");
  CHECK(doc["per_eps"][0]["phi"]["value"] == "16384");
  CHECK(doc["per_eps"][0]["psi"]["value"] ==
        BigInt(boost::multiprecision::pow(BigInt(4), 12)).str());
  CHECK(doc["per_eps"][0]["tower"]["sigma_exact"] == false);
}

TEST_CASE("atomic file output") {
  const std::string dir = "catk_test_out";
  write_file_atomic(dir + "/a.txt", "hello");
  std::ifstream in(dir + "/a.txt");
  std::string s;
  std::getline(in, s);
  CHECK(s == "hello");
  std::filesystem::remove_all(dir);
}
