#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catk/domain.hpp"
#include "catk/gfunction.hpp"
#include "catk/schedule.hpp"

namespace catk {

/// Experiment configuration. Parsed from either a flat key = value file with
/// dotted section names or an equivalent JSON document.
struct ExperimentConfig {
  // space
  double kappa = 1.0;
  int dim = 2;
  // ball
  std::vector<double> center; ///< ambient coordinates; default pole
  double radius = 0.05;
  // map: "pull" | "rotation" | "composition" (rotation then pull at the center)
  std::string map_kind = "pull";
  double rho = 0.5;
  double angle = 0.3;
  std::vector<double> anchor;      ///< pull anchor; default: inside, off-center
  std::vector<double> start;       ///< u; default: inside, off-center
  // schedule: "harmonic" | "sqrt" | "custom"
  std::string schedule_kind = "harmonic";
  std::string lambda_kind = "harmonic"; ///< custom: "harmonic" | "inv_sqrt" | "constant"
  double lambda_value = 1.0;            ///< for "constant"
  int alpha_power = 1;
  double alpha_scale = 1.0;
  int gamma_power = 1;
  double gamma_scale = 1.0;
  std::string theta_kind = "pow4"; ///< "pow4" | "identity" | "linear" | "poly"
  std::int64_t theta_a = 1, theta_b = 0;
  unsigned theta_exponent = 2, theta_shift = 2;
  // experiment grids
  std::vector<double> epsilons;
  std::string g_kind = "constant"; ///< "constant" | "affine" | "table"
  std::int64_t g_c = 0, g_a = 1, g_b = 0;
  std::vector<std::int64_t> g_values;
  std::int64_t g_beyond = 0;
  // run control
  std::uint64_t seed = 42;
  std::uint64_t horizon = 100'000;
  std::uint64_t fuzz_accepted = 10'000;
  std::vector<std::string> oracles;       ///< empty = all
  std::vector<double> fuzz_kappas;        ///< default {0.5, 1, 4}
  std::vector<double> fuzz_msk;           ///< default {0.2, 0.8, 1.4}
  std::uint64_t fuzz_trace_steps = 2'000;
  // bigcount
  std::int64_t digit_budget = 1'000'000;
  bool log_estimate = false;
  // browder
  double browder_tol_scale = 1e-10; ///< solver tol = scale * M
  std::uint64_t browder_imax = 32;
  // output
  std::string out_dir;
};

/// Parse a configuration file; `.json` (or a leading '{') selects JSON,
/// anything else the flat key = value format. '#' starts a comment.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Materialized pieces of a config.
Curvature make_curvature(const ExperimentConfig& cfg);
ConvexBall make_ball(const ExperimentConfig& cfg);
NonexpansiveMap make_map(const ExperimentConfig& cfg);
ModelPoint make_start(const ExperimentConfig& cfg);
ModuliSchedule make_schedule(const ExperimentConfig& cfg);
GFunction make_g(const ExperimentConfig& cfg);
EvalPolicy make_policy(const ExperimentConfig& cfg);

} // namespace catk
