// Command-line front end: asymptotic-regularity runs, metastability windows,
// Browder families, inequality fuzzing, and rate evaluation, with reproducible
// CSV/JSON outputs.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "catk/experiments.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::int64_t> digit_budget;
  bool log_estimate = false;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--config", fl.config_path, "configuration file (key=value or JSON)");
  cmd->add_option("--seed", fl.seed, "override the experiment seed");
  cmd->add_option("--out", fl.out_dir, "output directory for CSV/JSON artifacts");
  cmd->add_option("--digit-budget", fl.digit_budget,
                  "decimal-digit budget for exact counter values");
  cmd->add_flag("--log-estimate", fl.log_estimate,
                "force logarithmic estimates for all counter values");
}

catk::ExperimentConfig load(const CommonFlags& fl) {
  catk::ExperimentConfig cfg;
  if (!fl.config_path.empty()) cfg = catk::parse_config_file(fl.config_path);
  if (fl.seed) cfg.seed = *fl.seed;
  if (fl.out_dir) cfg.out_dir = *fl.out_dir;
  if (fl.digit_budget) cfg.digit_budget = *fl.digit_budget;
  if (fl.log_estimate) cfg.log_estimate = true;
  return cfg;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const catk::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return catk::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Halpern iterations and certified rates on positively curved model spheres"};
  app.require_subcommand(1);

  CommonFlags fa, fm, fb, ff, fr;
  auto* asreg = app.add_subcommand("asreg", "asymptotic-regularity run vs certified rates");
  add_common(asreg, fa);
  auto* meta = app.add_subcommand("meta", "metastability windows vs the Sigma bound");
  add_common(meta, fm);
  auto* browder = app.add_subcommand("browder", "resolvent family vs the K bound");
  add_common(browder, fb);
  auto* fuzz = app.add_subcommand("fuzz", "randomized inequality oracles");
  add_common(fuzz, ff);
  auto* rates = app.add_subcommand("rates", "evaluate every explicit rate functional");
  add_common(rates, fr);

  CLI11_PARSE(app, argc, argv);

  if (asreg->parsed()) {
    return run_guarded([&] {
      const auto rep = catk::run_asreg(load(fa));
      for (const auto& e : rep.entries) {
        std::printf("eps=%-10g feasible=%d phi~=%s phi=%s step_idx=%s map_idx=%s %s\n",
                    e.eps, e.feasible ? 1 : 0, e.phi_tilde_bound.str().c_str(),
                    e.phi_bound.str().c_str(),
                    e.step_found ? std::to_string(e.step_index).c_str() : "-",
                    e.map_found ? std::to_string(e.map_index).c_str() : "-",
                    !e.feasible ? "skipped" : (e.respected ? "bound respected" : "BOUND VIOLATED"));
      }
      std::printf("recurrence residual: %.3g (trace length %llu)\n",
                  rep.recurrence_residual,
                  static_cast<unsigned long long>(rep.trace_length));
      return rep.exit_code();
    });
  }
  if (meta->parsed()) {
    return run_guarded([&] {
      const auto rep = catk::run_meta(load(fm));
      for (const auto& e : rep.entries)
        std::printf("eps=%-10g N_emp=%s Sigma=%s %s\n", e.eps,
                    e.window_found ? std::to_string(e.n_emp).c_str() : "-",
                    e.sigma.str().c_str(), e.verdict.c_str());
      return rep.exit_code();
    });
  }
  if (browder->parsed()) {
    return run_guarded([&] {
      const auto rep = catk::run_browder(load(fb));
      for (const auto& e : rep.entries)
        std::printf("eps=%-10g K=%s K_emp=%s %s\n", e.eps, e.k_bound.str().c_str(),
                    e.k_found ? std::to_string(e.k_emp).c_str() : "-",
                    e.respected ? "bound respected" : "BOUND VIOLATED");
      std::printf("monotonicity violation of d(u,z_i): %.3g\n",
                  rep.max_monotonicity_violation);
      return rep.exit_code();
    });
  }
  if (fuzz->parsed()) {
    return run_guarded([&] {
      const auto rep = catk::run_fuzz(load(ff));
      for (const auto& r : rep.reports)
        std::printf("%-16s accepted=%-8llu skipped=%-8llu max_residual=% .3e %s\n",
                    r.oracle.c_str(), static_cast<unsigned long long>(r.accepted),
                    static_cast<unsigned long long>(r.skipped), r.max_residual,
                    r.violated ? "VIOLATED" : "ok");
      return rep.exit_code();
    });
  }
  return run_guarded([&] {
    const auto rep = catk::run_rates(load(fr));
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.exit_code();
  });
}
