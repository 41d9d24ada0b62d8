#include "catk/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace catk {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

json to_json(const BigCount& v) {
  json j;
  switch (v.mode()) {
    case BigCount::Mode::exact:
      j["mode"] = "exact";
      j["value"] = v.value().str();
      break;
    case BigCount::Mode::log2_est:
      j["mode"] = "log2";
      j["log2"] = v.log2v();
      j["estimate"] = true;
      break;
    case BigCount::Mode::loglog_est:
      j["mode"] = "log2log2";
      j["log2log2"] = v.loglogv();
      j["estimate"] = true;
      break;
    case BigCount::Mode::tower_est:
      j["mode"] = "tower";
      j["height"] = v.tower_height().str();
      j["log2log2"] = v.loglogv();
      j["estimate"] = true;
      break;
  }
  return j;
}

json to_json(const FuzzReport& r) {
  json j;
  j["oracle"] = r.oracle;
  j["trials"] = r.trials;
  j["accepted"] = r.accepted;
  j["skipped"] = r.skipped;
  j["max_residual"] = r.max_residual;
  j["tol"] = r.tol;
  j["violated"] = r.violated;
  j["seed"] = r.seed;
  j["worst"]["points"] = r.worst.points;
  j["worst"]["params"] = r.worst.params;
  return j;
}

json to_json(const RateTowerReport& r) {
  json j;
  j["inputs"] = {{"eps", r.eps}, {"kappa", r.kappa}, {"M", r.M},
                 {"g", r.g_desc}, {"schedule", r.schedule_name}};
  j["eps0"] = r.eps0;
  j["ceil_inv_eps0"] = r.inv_eps0.str();
  j["B"] = r.B.str();
  j["S"] = r.S;
  j["T"] = r.T;
  j["standard_arg"] = r.standard_arg;
  j["chi_arg"] = r.chi_arg;
  j["L"] = {{"ceil_inv_at_min", to_json(r.L_inv_at_min)}};
  j["chi"] = {{"at_min", to_json(r.chi_at_min)}};
  j["chi_star"] = {{"at_min", to_json(r.chi_star_at_min)}};
  j["Theta"] = {{"at_min", to_json(r.Theta_at_min)}, {"at_hi", to_json(r.Theta_at_hi)}};
  j["Delta_star"] = {{"at_min", r.delta_star_at_min}};
  j["f"] = {{"at_min", to_json(r.f_at_min)}};
  json iters = json::array();
  for (const auto& it : r.iterates_head) iters.push_back(to_json(it));
  j["f_tilde_star_iterates"] = iters;
  j["K0_range"] = {{"lo", to_json(r.K0_lo)}, {"hi", to_json(r.K0_hi)}};
  j["Gamma"] = {{"at_end", to_json(r.Gamma_at_end)}};
  j["A"] = {{"at_end", to_json(r.A_at_end)}};
  j["Sigma"] = to_json(r.Sigma);
  j["sigma_exact"] = r.sigma_exact;
  j["downgraded"] = r.downgraded;
  j["extrapolated"] = r.extrapolated;
  j["guard_warnings"] = r.guard_warnings;
  j["N_form"] = r.n_form;
  return j;
}

namespace {

std::vector<double> default_eps_grid(const ExperimentConfig& cfg) {
  if (!cfg.epsilons.empty()) return cfg.epsilons;
  const double msk = 2.0 * cfg.radius * std::sqrt(cfg.kappa);
  return {0.5 * msk, 0.2 * msk, 0.1 * msk, 0.05 * msk};
}

std::uint64_t bound_as_u64(const BigCount& b) {
  return b.value().convert_to<std::uint64_t>();
}

bool bound_within(const BigCount& b, std::uint64_t horizon) {
  return b.is_exact() && b.value() <= BigInt(horizon);
}

} // namespace

// ---------------------------------------------------------------------------
// asreg
// ---------------------------------------------------------------------------

int AsregReport::exit_code() const {
  for (const auto& e : entries)
    if (e.feasible && !e.respected) return kExitBoundViolation;
  return kExitOk;
}

json AsregReport::to_json() const {
  json j;
  j["trace_length"] = trace_length;
  j["recurrence_residual"] = recurrence_residual;
  j["csv"] = csv_path;
  json es = json::array();
  for (const auto& e : entries) {
    json je;
    je["eps"] = e.eps;
    je["feasible"] = e.feasible;
    je["phi_tilde"] = catk::to_json(e.phi_tilde_bound);
    je["phi"] = catk::to_json(e.phi_bound);
    je["step_index"] = e.step_found ? json(e.step_index) : json(nullptr);
    je["map_index"] = e.map_found ? json(e.map_index) : json(nullptr);
    je["respected"] = e.respected;
    es.push_back(je);
  }
  j["entries"] = es;
  return j;
}

AsregReport run_asreg(const ExperimentConfig& cfg) {
  const NonexpansiveMap T = make_map(cfg);
  const ConvexBall& ball = T.ball();
  const ModuliSchedule sched = make_schedule(cfg);
  const ModelPoint u = make_start(cfg);
  const double M = ball.diameter_bound();
  EvalContext ctx;
  ctx.policy = make_policy(cfg);

  AsregReport rep;
  std::uint64_t needed = 0;
  bool any_feasible = false;
  BigCount smallest_phi;
  bool have_smallest = false;

  for (double eps : default_eps_grid(cfg)) {
    AsregEntry e;
    e.eps = eps;
    e.phi_tilde_bound = phi_tilde(eps, cfg.kappa, M, sched.gamma, sched.theta, ctx);
    e.phi_bound = phi(eps, cfg.kappa, M, sched.gamma, sched.theta, sched.alpha, ctx);
    if (!have_smallest || bc_cmp(e.phi_bound, smallest_phi) < 0) {
      smallest_phi = e.phi_bound;
      have_smallest = true;
    }
    e.feasible = bound_within(e.phi_bound, cfg.horizon) &&
                 bound_within(e.phi_tilde_bound, cfg.horizon);
    if (e.feasible) {
      any_feasible = true;
      needed = std::max(needed, std::max(bound_as_u64(e.phi_bound),
                                         bound_as_u64(e.phi_tilde_bound)));
    }
    rep.entries.push_back(std::move(e));
  }
  if (!any_feasible)
    throw ConfigError("no epsilon in the grid has a representable bound within the "
                      "horizon; smallest Phi = " + smallest_phi.str());

  IterateOptions opt;
  opt.store_points_cap = 0; // streaming: the scalar sequences suffice here
  const IterationTrace tr = iterate(u, T, sched, needed + 16, opt);
  rep.trace_length = tr.length();
  rep.recurrence_residual = check_recurrence(tr, sched, M, ball.curv);

  for (auto& e : rep.entries) {
    if (!e.feasible) continue;
    const auto si = first_stable_index(tr.step_dist, e.eps);
    const auto mi = first_stable_index(tr.map_dist, e.eps);
    e.step_found = si.has_value();
    e.map_found = mi.has_value();
    if (si) e.step_index = *si;
    if (mi) e.map_index = *mi;
    e.respected = si && mi && BigInt(*si) <= e.phi_tilde_bound.value() &&
                  BigInt(*mi) <= e.phi_bound.value();
  }

  if (!cfg.out_dir.empty()) {
    std::ostringstream os;
    write_trace_csv(os, tr);
    rep.csv_path = (fs::path(cfg.out_dir) / "asreg_trace.csv").string();
    write_file_atomic(rep.csv_path, os.str());
    write_file_atomic((fs::path(cfg.out_dir) / "asreg_report.json").string(),
                      rep.to_json().dump(2) + "\n");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// meta
// ---------------------------------------------------------------------------

int MetaReport::exit_code() const {
  bool inconclusive = false;
  for (const auto& e : entries) {
    if (e.verdict == "violated") return kExitBoundViolation;
    if (e.verdict == "inconclusive") inconclusive = true;
  }
  return inconclusive ? kExitInconclusive : kExitOk;
}

json MetaReport::to_json() const {
  json j;
  json es = json::array();
  for (const auto& e : entries) {
    json je;
    je["eps"] = e.eps;
    je["window_found"] = e.window_found;
    je["N_emp"] = e.window_found ? json(e.n_emp) : json(nullptr);
    je["Sigma"] = catk::to_json(e.sigma);
    je["sigma_exact"] = e.sigma_exact;
    je["verdict"] = e.verdict;
    es.push_back(je);
  }
  j["entries"] = es;
  json ts = json::array();
  for (const auto& t : towers) ts.push_back(catk::to_json(t));
  j["towers"] = ts;
  return j;
}

namespace {

/// Max pairwise distance in [lo, hi] is <= eps? Early-out scans; the radius
/// bound around the known fixed point gives a cheap accept.
bool window_ok(const IterationTrace& tr, std::uint64_t lo, std::uint64_t hi,
               double eps) {
  if (!tr.fix_dist.empty()) {
    double maxdev = 0.0;
    for (std::uint64_t k = lo; k <= hi; ++k) maxdev = std::max(maxdev, tr.fix_dist[k]);
    if (2.0 * maxdev <= eps) return true;
  }
  for (std::uint64_t k = lo; k <= hi; ++k)
    if (distance(tr.points[lo], tr.points[k], tr.curv) > eps) return false;
  for (std::uint64_t i = lo; i <= hi; ++i)
    for (std::uint64_t j = i + 1; j <= hi; ++j)
      if (distance(tr.points[i], tr.points[j], tr.curv) > eps) return false;
  return true;
}

} // namespace

MetaReport run_meta(const ExperimentConfig& cfg) {
  const NonexpansiveMap T = make_map(cfg);
  const ConvexBall& ball = T.ball();
  const ModuliSchedule sched = make_schedule(cfg);
  const ModelPoint u = make_start(cfg);
  const double M = ball.diameter_bound();
  const GFunction g = make_g(cfg);
  const EvalPolicy policy = make_policy(cfg);

  if (cfg.epsilons.empty()) throw ConfigError("meta runs need an epsilon grid");
  for (double eps : cfg.epsilons)
    if (!(eps > 0.0 && eps < 2.0))
      throw ConfigError("metastability eps must lie in (0,2)");

  IterateOptions opt; // full storage; windows need the points
  if (cfg.horizon + 1 > opt.store_points_cap)
    throw ConfigError("meta horizon exceeds the point-storage cap");
  const IterationTrace tr = iterate(u, T, sched, cfg.horizon, opt);

  MetaReport rep;
  for (double eps : cfg.epsilons) {
    MetaEntry e;
    e.eps = eps;
    const RateTowerReport tower = table1_tower(eps, g, cfg.kappa, M, sched, policy);
    e.sigma = tower.Sigma;
    e.sigma_exact = tower.sigma_exact;
    rep.towers.push_back(tower);

    for (std::uint64_t N = 0; N < tr.length(); ++N) {
      const BigInt gN = g(BigInt(N));
      if (BigInt(N) + gN >= BigInt(tr.length())) break; // window no longer fits
      const std::uint64_t hi = N + gN.convert_to<std::uint64_t>();
      if (window_ok(tr, N, hi, eps)) {
        e.window_found = true;
        e.n_emp = N;
        break;
      }
    }

    if (!e.window_found) {
      e.verdict = "inconclusive";
    } else if (e.sigma_exact) {
      e.verdict = (BigInt(e.n_emp) <= e.sigma.value()) ? "respected" : "violated";
    } else {
      // Estimates never produce violation verdicts; the flag itself is the
      // outcome, alongside the magnitude consistency N_emp <= Sigma.
      e.verdict = "estimate-flagged";
    }
    rep.entries.push_back(std::move(e));
  }

  if (!cfg.out_dir.empty())
    write_file_atomic((fs::path(cfg.out_dir) / "meta_report.json").string(),
                      rep.to_json().dump(2) + "\n");
  return rep;
}

// ---------------------------------------------------------------------------
// browder
// ---------------------------------------------------------------------------

int BrowderReport::exit_code() const {
  for (const auto& e : entries)
    if (!e.respected) return kExitBoundViolation;
  return kExitOk;
}

json BrowderReport::to_json() const {
  json j;
  json es = json::array();
  for (const auto& e : entries) {
    json je;
    je["eps"] = e.eps;
    je["K"] = catk::to_json(e.k_bound);
    je["K_emp"] = e.k_found ? json(e.k_emp) : json(nullptr);
    je["respected"] = e.respected;
    es.push_back(je);
  }
  j["entries"] = es;
  j["d_u_z"] = dist_u_z;
  j["max_monotonicity_violation"] = max_monotonicity_violation;
  j["csv"] = csv_path;
  return j;
}

BrowderReport run_browder(const ExperimentConfig& cfg) {
  const NonexpansiveMap T = make_map(cfg);
  const ConvexBall& ball = T.ball();
  const ModelPoint u = make_start(cfg);
  const double M = ball.diameter_bound();
  const GFunction g = make_g(cfg);
  const double tol = cfg.browder_tol_scale * M;
  EvalContext ctx;
  ctx.policy = make_policy(cfg);

  if (cfg.epsilons.empty()) throw ConfigError("browder runs need an epsilon grid");
  for (double eps : cfg.epsilons)
    if (!(eps > 0.0 && eps < 1.0))
      throw ConfigError("Browder eps must lie in (0,1)");

  std::vector<BrowderPoint> family = resolvent_family(u, T, cfg.browder_imax, tol);

  BrowderReport rep;
  for (double eps : cfg.epsilons) {
    BrowderEntry e;
    e.eps = eps;
    e.k_bound = browder_K(eps, g, M, cfg.kappa, ctx);
    for (;;) {
      try {
        e.k_emp = empirical_browder_metastability(family, eps, g, ball.curv, tol);
        e.k_found = true;
        break;
      } catch (const ExhaustedError&) {
        if (family.size() > 2048) throw;
        const std::uint64_t imax = 2 * family.size();
        family = resolvent_family(u, T, imax, tol);
      }
    }
    e.respected = e.k_found && e.k_bound.is_exact() &&
                  BigInt(e.k_emp) <= e.k_bound.value();
    rep.entries.push_back(std::move(e));
  }

  rep.dist_u_z.reserve(family.size());
  for (const auto& bp : family) rep.dist_u_z.push_back(distance(u, bp.z, ball.curv));
  for (std::size_t i = 0; i + 1 < rep.dist_u_z.size(); ++i)
    rep.max_monotonicity_violation = std::max(
        rep.max_monotonicity_violation, rep.dist_u_z[i] - rep.dist_u_z[i + 1]);

  if (!cfg.out_dir.empty()) {
    std::ostringstream os;
    write_family_csv(os, family, u, ball.curv);
    rep.csv_path = (fs::path(cfg.out_dir) / "browder_family.csv").string();
    write_file_atomic(rep.csv_path, os.str());
    write_file_atomic((fs::path(cfg.out_dir) / "browder_report.json").string(),
                      rep.to_json().dump(2) + "\n");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// fuzz
// ---------------------------------------------------------------------------

int FuzzSuiteReport::exit_code() const {
  return any_violation ? kExitInequalityViolation : kExitOk;
}

json FuzzSuiteReport::to_json() const {
  json j = json::array();
  for (const auto& r : reports) j.push_back(catk::to_json(r));
  return json{{"reports", j}, {"any_violation", any_violation}};
}

FuzzSuiteReport run_fuzz(const ExperimentConfig& cfg) {
  std::vector<OracleId> oracles;
  if (cfg.oracles.empty()) {
    oracles = default_oracles();
  } else {
    for (const auto& name : cfg.oracles) {
      const auto id = oracle_from_name(name);
      if (!id) throw ConfigError("unknown oracle: " + name);
      oracles.push_back(*id);
    }
  }
  std::vector<double> kappas = cfg.fuzz_kappas;
  if (kappas.empty()) kappas = {0.5, 1.0, 4.0};
  std::vector<double> msks = cfg.fuzz_msk;
  if (msks.empty()) msks = {0.2, 0.8, 1.4};

  FuzzSuiteReport rep;
  std::uint64_t cell = 0;
  for (OracleId id : oracles) {
    const bool trace_oracle = (id == OracleId::gamma_trace || id == OracleId::gamma_shift);
    for (double kappa : kappas) {
      for (double msk : msks) {
        CampaignParams p;
        p.kappa = kappa;
        p.m_sqrt_kappa = msk;
        p.accepted_target =
            std::max<std::uint64_t>(1, cfg.fuzz_accepted / msks.size());
        p.seed = cfg.seed + cell;
        p.tol = trace_oracle ? 1e-8 : 1e-9;
        p.trace_steps = cfg.fuzz_trace_steps;
        rep.reports.push_back(run_campaign(id, p));
        rep.any_violation |= rep.reports.back().violated;
        ++cell;
      }
    }
  }

  if (!cfg.out_dir.empty())
    write_file_atomic((fs::path(cfg.out_dir) / "fuzz_report.json").string(),
                      rep.to_json().dump(2) + "\n");
  return rep;
}

// ---------------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------------

RatesReport run_rates(const ExperimentConfig& cfg) {
  const ConvexBall ball = make_ball(cfg);
  const ModuliSchedule sched = make_schedule(cfg);
  const double M = ball.diameter_bound();
  const GFunction g = make_g(cfg);
  const EvalPolicy policy = make_policy(cfg);

  json doc;
  doc["schedule"] = sched.name;
  doc["M"] = M;
  doc["kappa"] = cfg.kappa;
  json per_eps = json::array();
  for (double eps : default_eps_grid(cfg)) {
    EvalContext ctx;
    ctx.policy = policy;
    json je;
    je["eps"] = eps;
    je["phi_tilde"] = to_json(phi_tilde(eps, cfg.kappa, M, sched.gamma, sched.theta, ctx));
    je["phi"] =
        to_json(phi(eps, cfg.kappa, M, sched.gamma, sched.theta, sched.alpha, ctx));
    if (sched.name == "harmonic")
      je["psi"] = to_json(psi_harmonic(eps, cfg.kappa, M, ctx));
    if (eps > 0.0 && eps < 1.0)
      je["browder_K"] = to_json(browder_K(eps, g, M, cfg.kappa, ctx));
    if (eps > 0.0 && eps < 2.0) {
      je["tower"] = to_json(table1_tower(eps, g, cfg.kappa, M, sched, policy));
      if (sched.name == "harmonic")
        je["tower_harmonic_closed_form"] =
            to_json(sigma_harmonic(eps, g, cfg.kappa, M, policy));
    }
    je["guard_warnings"] = ctx.guard_warnings;
    per_eps.push_back(je);
  }
  doc["per_eps"] = per_eps;

  RatesReport rep;
  rep.document = doc;
  if (!cfg.out_dir.empty())
    write_file_atomic((fs::path(cfg.out_dir) / "rates_report.json").string(),
                      doc.dump(2) + "\n");
  return rep;
}

} // namespace catk
