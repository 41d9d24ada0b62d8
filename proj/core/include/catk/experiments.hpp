#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "catk/browder.hpp"
#include "catk/config.hpp"
#include "catk/halpern.hpp"
#include "catk/oracles.hpp"
#include "catk/rates.hpp"

namespace catk {

// Exit codes shared by all experiments (scriptable CI gating).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInequalityViolation = 3;
inline constexpr int kExitBoundViolation = 4;
inline constexpr int kExitInconclusive = 5;

nlohmann::json to_json(const BigCount& v);
nlohmann::json to_json(const FuzzReport& r);
nlohmann::json to_json(const RateTowerReport& r);

struct AsregEntry {
  double eps = 0.0;
  bool feasible = false;
  BigCount phi_tilde_bound, phi_bound;
  std::uint64_t step_index = 0, map_index = 0; ///< empirical first stable indices
  bool step_found = false, map_found = false;
  bool respected = false;
};

struct AsregReport {
  std::vector<AsregEntry> entries;
  std::uint64_t trace_length = 0;
  double recurrence_residual = 0.0;
  std::string csv_path;
  int exit_code() const;
  nlohmann::json to_json() const;
};
AsregReport run_asreg(const ExperimentConfig& cfg);

struct MetaEntry {
  double eps = 0.0;
  bool window_found = false;
  std::uint64_t n_emp = 0;
  BigCount sigma;
  bool sigma_exact = false;
  std::string verdict; ///< "respected" | "estimate-flagged" | "inconclusive" | "violated"
};

struct MetaReport {
  std::vector<MetaEntry> entries;
  std::vector<RateTowerReport> towers;
  int exit_code() const;
  nlohmann::json to_json() const;
};
MetaReport run_meta(const ExperimentConfig& cfg);

struct BrowderEntry {
  double eps = 0.0;
  BigCount k_bound;
  std::uint64_t k_emp = 0;
  bool k_found = false;
  bool respected = false;
};

struct BrowderReport {
  std::vector<BrowderEntry> entries;
  std::vector<double> dist_u_z; ///< d(u, z_i), the monotone column
  double max_monotonicity_violation = 0.0;
  std::string csv_path;
  int exit_code() const;
  nlohmann::json to_json() const;
};
BrowderReport run_browder(const ExperimentConfig& cfg);

struct FuzzSuiteReport {
  std::vector<FuzzReport> reports;
  bool any_violation = false;
  int exit_code() const;
  nlohmann::json to_json() const;
};
FuzzSuiteReport run_fuzz(const ExperimentConfig& cfg);

struct RatesReport {
  nlohmann::json document;
  int exit_code() const { return kExitOk; }
  nlohmann::json to_json() const { return document; }
};
RatesReport run_rates(const ExperimentConfig& cfg);

/// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace catk
