// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full configuration matrix at desk scale; total runtime is
// a few minutes on one core.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "catk/experiments.hpp"
#include "reference_tower.hpp"

using namespace catk;

namespace {

int g_failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

ConvexBall std_ball(double kappa, double radius) {
  Eigen::VectorXd pole(3);
  pole << 0, 0, 1;
  return ConvexBall(ModelPoint(pole), radius, Curvature(kappa, 2));
}

ModelPoint offset(const ConvexBall& ball, double geodesic_radius, double phase) {
  Eigen::VectorXd t(3);
  t << std::cos(phase), std::sin(phase), 0.0;
  const double a = geodesic_radius * ball.curv.sqrt_kappa();
  Eigen::VectorXd dir = std::cos(a) * ball.center.direction + std::sin(a) * t;
  return ModelPoint(dir / dir.norm());
}

// --------------------------------------------------------------------------
// 1. Golden rate values, recomputed by an independent slow reference first.
// --------------------------------------------------------------------------
void criterion1() {
  using boost::multiprecision::pow;
  const ModuliSchedule s = harmonic_schedule();
  EvalContext ctx;
  bool ok = true;
  std::string detail;

  // Independent reference arithmetic, spelled out digit by digit.
  {
    // phi~(0.2; kappa=1, M=0.1): ceil(1/cos(0.1)) = 2 (cos 0.1 < 1 < 2cos 0.1);
    // gamma(0.2/0.2) = ceil(1) = 1; ln(0.2/0.2) = 0 so the max clamps to 1;
    // theta(2*(1+1)) = 4^(4+1).
    const BigInt ref_phi_tilde = pow(BigInt(4), 5);
    // phi(0.2) = max{phi~(0.1), alpha(1)}: gamma(0.1/0.2) = ceil(2) = 2,
    // ceil(ln 2) = 1, theta(2*(2+1)) = 4^7; alpha(1) = 1.
    const BigInt ref_phi = pow(BigInt(4), 7);
    // psi(0.5): ceil(8*0.1/0.5 + 2) = ceil(3.6) = 4; 4^(2*4).
    const BigInt ref_psi = pow(BigInt(4), 8);
    // theta(1) = 4^2.
    const BigInt ref_theta1 = 16;
    // sequence-lemma rate at (eps=1, P=1): gamma(1/2) = 2, ceil(ln 2) = 1, theta(3)+1.
    const BigInt ref_sigma = pow(BigInt(4), 4) + 1;

    ok &= ref_phi_tilde == 1024;
    ok &= ref_phi == 16384;
    ok &= ref_psi == 65536;
    ok &= ref_theta1 == 16;
    ok &= ref_sigma == 257;

    ok &= phi_tilde(0.2, 1.0, 0.1, s.gamma, s.theta, ctx).value() == ref_phi_tilde;
    ok &= phi(0.2, 1.0, 0.1, s.gamma, s.theta, s.alpha, ctx).value() == ref_phi;
    ok &= psi_harmonic(0.5, 1.0, 0.1, ctx).value() == ref_psi;
    ok &= s.theta.exact(1) == ref_theta1;
    ok &= sigma_sequence(1.0, 1.0, s.gamma, s.theta, ctx).value() == ref_sigma;
  }
  report(1, "golden rate values (harmonic, kappa=1, M=0.1)", ok);
}

// --------------------------------------------------------------------------
// 2. Asymptotic-regularity domination, eps scaled by 3 so every Phi <= 1e6.
// --------------------------------------------------------------------------
void criterion2() {
  bool ok = true;
  std::string detail;
  for (const char* kind : {"pull", "rotation"}) {
    ExperimentConfig cfg;
    cfg.kappa = 1.0;
    cfg.radius = 0.05; // M = 0.1
    cfg.map_kind = kind;
    cfg.rho = 0.5;
    cfg.angle = 0.3;
    cfg.epsilons = {3 * 0.05, 3 * 0.1, 3 * 0.2};
    cfg.horizon = 1'000'000;
    const AsregReport rep = run_asreg(cfg);
    for (const auto& e : rep.entries) {
      ok &= e.feasible;
      ok &= e.respected;
      if (!e.feasible || !e.respected)
        detail += std::string(kind) + " eps=" + std::to_string(e.eps) + " failed; ";
    }
    ok &= rep.exit_code() == kExitOk;
  }
  report(2, "asymptotic-regularity indices dominated by Phi~/Phi", ok, detail);
}

// --------------------------------------------------------------------------
// 3. One-step recurrence on 1e3-step traces, both maps, two schedules.
// --------------------------------------------------------------------------
void criterion3() {
  const ConvexBall ball = std_ball(1.0, 0.05);
  const double M = ball.diameter_bound();
  const ModelPoint u = offset(ball, 0.045, 1.1);
  const std::vector<NonexpansiveMap> maps = {
      NonexpansiveMap::geodesic_pull(ball, offset(ball, 0.03, 0.0), 0.5),
      NonexpansiveMap::rotation(ball, 0.3)};
  const std::vector<ModuliSchedule> schedules = {harmonic_schedule(), sqrt_schedule()};
  double worst = -1e300;
  for (const auto& T : maps)
    for (const auto& s : schedules)
      worst = std::max(worst, check_recurrence(iterate(u, T, s, 1'000), s, M, ball.curv));
  report(3, "one-step recurrence residual <= 1e-9 on 1e3-step traces", worst <= 1e-9,
         "max residual " + std::to_string(worst));
}

// --------------------------------------------------------------------------
// 4. Inequality fuzz campaigns, 1e4 accepted per oracle per kappa.
// --------------------------------------------------------------------------
void criterion4() {
  bool ok = true;
  std::string detail;
  const std::vector<double> msks = {0.2, 0.8, 1.4};
  std::uint64_t cell = 0;
  for (OracleId id : default_oracles()) {
    if (id == OracleId::product_identity) continue; // criterion 5 covers it at 1e5
    for (double kappa : {0.5, 1.0, 4.0}) {
      std::uint64_t accepted = 0, skipped = 0;
      bool violated = false;
      double worst = -1e300;
      for (double msk : msks) {
        CampaignParams p;
        p.kappa = kappa;
        p.m_sqrt_kappa = msk;
        p.seed = 42 + 1000 * cell++;
        const bool trace_oracle = (id == OracleId::gamma_trace || id == OracleId::gamma_shift);
        p.tol = trace_oracle ? 1e-8 : 1e-9;
        p.accepted_target = 3'334;
        p.trace_steps = 3'400; // trace oracles count indices as configurations
        const FuzzReport rep = run_campaign(id, p);
        accepted += rep.accepted;
        skipped += rep.skipped;
        violated |= rep.violated;
        worst = std::max(worst, rep.max_residual);
      }
      const bool enough = accepted >= 10'000;
      if (violated || !enough) {
        ok = false;
        detail += std::string(oracle_name(id)) + "@kappa=" + std::to_string(kappa) +
                  (violated ? " violated" : " too few accepted") + "; ";
      }
      std::printf("       %-16s kappa=%-4g accepted=%-8llu skipped=%-8llu max_residual=% .3e\n",
                  oracle_name(id), kappa, static_cast<unsigned long long>(accepted),
                  static_cast<unsigned long long>(skipped), worst);
    }
  }
  report(4, "fuzz campaigns: zero violations, 1e4 accepted per oracle per kappa", ok,
         detail);
}

// --------------------------------------------------------------------------
// 5. The exact product identity, two-sided, 1e5 configurations.
// --------------------------------------------------------------------------
void criterion5() {
  CampaignParams p;
  p.kappa = 1.0;
  p.m_sqrt_kappa = 1.4;
  p.accepted_target = 100'000;
  p.seed = 43;
  p.tol = 1e-9;
  const FuzzReport rep = run_campaign(OracleId::product_identity, p);
  report(5, "product identity two-sided residual <= 1e-9 over 1e5 configurations",
         !rep.violated && rep.accepted >= 100'000,
         "max |residual| " + std::to_string(rep.max_residual));
}

// --------------------------------------------------------------------------
// 6. Browder bound: K = 1 at (kappa=1, M=0.1, eps=0.5, g=1), both maps, and
//    the closed-form iterate for g(n) = n+1.
// --------------------------------------------------------------------------
void criterion6() {
  bool ok = true;
  std::string detail;
  EvalContext ctx;
  const BigCount K = browder_K(0.5, GFunction::constant(1), 0.1, 1.0, ctx);
  ok &= K.is_exact() && K.value() == 1;

  for (const char* kind : {"pull", "rotation"}) {
    ExperimentConfig cfg;
    cfg.kappa = 1.0;
    cfg.radius = 0.05;
    cfg.map_kind = kind;
    cfg.epsilons = {0.5};
    cfg.g_kind = "constant";
    cfg.g_c = 1;
    const BrowderReport rep = run_browder(cfg);
    ok &= rep.entries[0].k_emp <= 1;
    ok &= rep.entries[0].respected;
    ok &= rep.exit_code() == kExitOk;
    if (!rep.entries[0].respected) detail += std::string(kind) + " violated; ";
  }

  const GFunction gaff = GFunction::affine(1, 1);
  for (unsigned k = 1; k <= 20; ++k) {
    EvalContext c2;
    if (gaff.iterate_tilde(BigInt(k), c2).value() != (BigInt(1) << k) - 1) {
      ok = false;
      detail += "iterate mismatch at k=" + std::to_string(k) + "; ";
    }
  }
  report(6, "Browder bound K=1 respected; gtilde iterates match 2^k-1", ok, detail);
}

// --------------------------------------------------------------------------
// 7. Bound-tower internal consistency and the slow-reference agreement.
// --------------------------------------------------------------------------
void criterion7() {
  bool ok = true;
  std::string detail;

  const ModuliSchedule stub = custom_schedule(
      "stub", [](std::uint64_t n) { return 1.0 / static_cast<double>(n + 1); },
      Modulus::ceil_inv_pow(1), Modulus::ceil_inv_pow(1), ThetaFn::identity());

  struct Toy {
    double eps, kappa, M;
    GFunction g;
    std::function<reftower::BigInt(const reftower::BigInt&)> gref;
  };
  const std::vector<Toy> toys = {
      {1.9, 1.0, 0.001, GFunction::constant(0),
       [](const reftower::BigInt&) { return reftower::BigInt(0); }},
      {1.5, 4.0, 0.005, GFunction::affine(1, 1),
       [](const reftower::BigInt& n) { return n + 1; }},
      {1.8, 0.25, 0.002, GFunction::table({5, 4, 3, 2, 1}, 0),
       [](const reftower::BigInt& n) {
         const reftower::BigInt tbl[] = {5, 4, 3, 2, 1};
         return n < 5 ? tbl[n.convert_to<std::size_t>()] : reftower::BigInt(0);
       }}};

  for (const auto& toy : toys) {
    const RateTowerReport rep = table1_tower(toy.eps, toy.g, toy.kappa, toy.M, stub);
    reftower::NaiveTower ref;
    ref.eps = toy.eps;
    ref.kappa = toy.kappa;
    ref.M = toy.M;
    ref.alpha = [](const reftower::Rational& e) { return reftower::rceil(1 / e); };
    ref.gamma = ref.alpha;
    ref.theta = [](const reftower::BigInt& v) { return v; };
    ref.g = toy.gref;

    bool one = rep.sigma_exact;
    one &= rep.eps0 > 0.0;
    one &= rep.inv_eps0 == ref.inv_eps0();
    one &= rep.B == ref.B();
    one &= rep.Sigma.value() == ref.Sigma();
    one &= rep.Sigma.value() < 1'000'000'000;
    one &= rep.Theta_at_min.value() == ref.Theta(ref.inv_eps0(), ref.std_arg());
    // Delta*_i > 0 and f~* strictly increasing along the evaluated orbit.
    Table1Tower tower(toy.eps, toy.g, toy.kappa, toy.M, stub);
    for (BigInt i = tower.inv_eps0(); i <= tower.inv_eps0() + 3; ++i)
      one &= tower.delta_star_std(i) > 0;
    BigInt prev = 0;
    bool first = true;
    for (const auto& it : rep.iterates_head) {
      one &= first || it.value() > prev;
      prev = it.value();
      first = false;
    }
    if (!one) detail += "toy eps=" + std::to_string(toy.eps) + " mismatch; ";
    ok &= one;
    std::printf("       toy (eps=%g kappa=%g M=%g): Sigma = %s, B = %s\n", toy.eps,
                toy.kappa, toy.M, rep.Sigma.str().c_str(), rep.B.str().c_str());
  }

  // Harmonic specialization agrees with the general tower field by field.
  {
    const RateTowerReport gen =
        table1_tower(1.9, GFunction::constant(0), 1.0, 0.001, harmonic_schedule());
    const RateTowerReport har = sigma_harmonic(1.9, GFunction::constant(0), 1.0, 0.001);
    bool agree = gen.inv_eps0 == har.inv_eps0 && gen.B == har.B && gen.S == har.S &&
                 gen.T == har.T &&
                 gen.chi_star_at_min.value() == har.chi_star_at_min.value() &&
                 bc_cmp(gen.Theta_at_min, har.Theta_at_min) == 0 &&
                 bc_cmp(gen.f_at_min, har.f_at_min) == 0 &&
                 bc_cmp(gen.K0_hi, har.K0_hi) == 0 &&
                 bc_cmp(gen.Sigma, har.Sigma) == 0 &&
                 gen.Sigma.mode() == har.Sigma.mode();
    const RateTowerReport gen2 =
        table1_tower(0.5, GFunction::affine(1, 0), 1.0, 0.1, harmonic_schedule());
    const RateTowerReport har2 = sigma_harmonic(0.5, GFunction::affine(1, 0), 1.0, 0.1);
    agree &= bc_cmp(gen2.Sigma, har2.Sigma) == 0 && gen2.Sigma.mode() == har2.Sigma.mode();
    if (!agree) detail += "harmonic specialization disagrees; ";
    ok &= agree;
  }
  report(7, "tower internal consistency + slow-reference agreement on 3 toys", ok,
         detail);
}

// --------------------------------------------------------------------------
// 8. Dual-path identity on a 5x5 grid, exact equality.
// --------------------------------------------------------------------------
void criterion8() {
  const ModuliSchedule s = harmonic_schedule();
  EvalContext ctx;
  const double kappa = 1.0, M = 0.1;
  const double cmsk = std::cos(M * std::sqrt(kappa));
  bool ok = true;
  for (double eps : {0.2, 0.5, 0.8, 1.0, 1.6})
    for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const BigCount lhs =
          limsup_rate(eps, kappa, M, t, s.gamma, s.theta, s.alpha, ctx);
      const Rational arg = rational_from(cmsk) * rational_from(t) *
                           rational_from(eps) / rational_from(std::sqrt(kappa));
      const BigCount rhs = phi(arg, kappa, M, s.gamma, s.theta, s.alpha, ctx);
      ok &= lhs.is_exact() && rhs.is_exact() && lhs.value() == rhs.value();
    }
  report(8, "limsup rate equals Phi at the rescaled argument on a 5x5 grid", ok);
}

// --------------------------------------------------------------------------
// 9. Window lemma end to end: synthetic decay and the Halpern-derived
//    instance assembled exactly as in the metastability proof.
// --------------------------------------------------------------------------
void criterion9() {
  bool ok = true;
  std::string detail;

  // Synthetic geometric decay for several (eps, g).
  {
    EvalContext ctx;
    const auto psi_one = [](const Rational&) { return BigInt(1); };
    for (double eps : {0.01, 0.002}) {
      for (const GFunction& g :
           {GFunction::constant(0), GFunction::constant(5), GFunction::affine(1, 2)}) {
        const double L = 0.06;
        const auto rates =
            window_rates(eps, L, ThetaFn::linear(BigInt(2), BigInt(0)), psi_one, g, ctx);
        if (!rates.Theta.is_exact() || rates.Theta.value() > 100'000) {
          ok = false;
          continue;
        }
        WindowInstance inst;
        const std::uint64_t hi =
            (rates.Theta.value() + g(rates.Theta.value())).convert_to<std::uint64_t>();
        const std::size_t n_max = hi + 8;
        inst.s.resize(n_max);
        inst.alpha.assign(n_max, 0.5);
        inst.t.assign(n_max, 0.0);
        inst.s[0] = L;
        for (std::size_t n = 1; n < n_max; ++n) inst.s[n] = 0.5 * inst.s[n - 1];
        inst.Delta = rates.Delta.convert_to<double>();
        inst.Theta = rates.Theta.value();
        inst.g = g;
        inst.eps = eps;
        const WindowVerdict v = check_window_recurrence(inst);
        ok &= v.recurrence_ok && v.window_ok;
        if (!v.window_ok) detail += "synthetic eps=" + std::to_string(eps) + " failed; ";
      }
    }
  }

  // Halpern-derived instance s_n = sin^2(d(x_n, z_J) rk / 2), assembled as in
  // the metastability proof. The anchor sits close to u, so gamma_n^J is
  // bounded a priori by sin^2(d(u,z_J) rk / 2) << eps_a/3 and psi == 1 is a
  // certified rate for the t_n hypothesis.
  {
    const double kappa = 0.25, M = 1.0, eps_meta = 1.9; // M rk = 0.5
    const ConvexBall ball = std_ball(kappa, M / 2.0);
    const Curvature& c = ball.curv;
    const double rk = c.sqrt_kappa();
    const double mrk = M * rk;
    const ModelPoint u = offset(ball, 0.4, 0.0);
    const ModelPoint anchor = offset(ball, 0.3, 0.0); // d(u, anchor) = 0.1
    const NonexpansiveMap T = NonexpansiveMap::geodesic_pull(ball, anchor, 0.5);
    const ModuliSchedule sched = harmonic_schedule();

    const double eps_a = std::pow(std::sin(eps_meta * rk / 4.0), 2);
    const double L = std::pow(std::sin(mrk / 2.0), 2);
    const GFunction g = GFunction::affine(1, 0);

    // alpha_n = mu_{n+1} diverges with rate theta~(n) = 4^(ceil(1/cos(M rk)) n + 1).
    EvalContext ctx;
    const BigInt cc = ceil_inv_cos(mrk, ctx);
    const ThetaFn pow4 = ThetaFn::pow_base(4, 1);
    const auto theta_tilde_fn = [&](const BigInt& n) { return pow4.exact(cc * n); };

    // Lemma rates with psi == 1: Theta = theta~(psi - 1 + max{ceil(ln(3L/eps_a)),1}) + 1,
    // Delta = eps_a / (3 g_eps(Theta - psi)), g_eps(n) = n + g(n + psi).
    const std::uint64_t n0 = 1;
    long long lt = static_cast<long long>(std::ceil(std::log(3.0 * L / eps_a)));
    if (lt < 1) lt = 1;
    const BigInt ThetaV = theta_tilde_fn(BigInt(n0) - 1 + lt) + 1;
    const BigInt gearg = ThetaV - BigInt(n0);
    const BigInt ge = gearg + g(gearg + BigInt(n0));
    const Rational DeltaV = rational_from(eps_a) / Rational(3 * ge);

    // J >= M rk / Delta makes the contraction tail term at t = 1/(J+1) fit Delta.
    const std::uint64_t J =
        ceil_rational(rational_from(mrk) / DeltaV).convert_to<std::uint64_t>();
    const double tol = 1e-11;
    const BrowderPoint zJ =
        solve_fixed_point(u, 1.0 / (static_cast<double>(J) + 1.0), T, tol);

    const std::uint64_t hiW = (ThetaV + g(ThetaV)).convert_to<std::uint64_t>();
    const std::uint64_t horizon = hiW + 8;
    bool fits = ThetaV <= 100'000;
    if (fits) {
      const IterationTrace tr = iterate(u, T, sched, horizon);
      const std::size_t n_max = hiW + 2;
      WindowInstance inst;
      inst.s.resize(n_max);
      inst.alpha.resize(n_max);
      inst.t.resize(n_max);
      const double cmsk = std::cos(mrk);
      for (std::size_t n = 1; n <= n_max; ++n) {
        const double dz = distance(tr.points[n], zJ.z, c) * rk;
        inst.s[n - 1] = std::pow(std::sin(dz / 2.0), 2);
        inst.alpha[n - 1] = mu(sched, n + 1, M, c);
        const double gn = gamma_nt(u, zJ.z, tr.points[n + 1], c);
        inst.t[n - 1] = std::max(gn / cmsk, 0.0);
      }
      inst.Delta = DeltaV.convert_to<double>();
      inst.Theta = ThetaV;
      inst.g = g;
      inst.eps = eps_a;

      // Certify the lemma's hypotheses on the fixture. The a-priori bound
      // gamma_n^J <= sin^2(d(u,z_J) rk/2) makes psi == 1 valid; assert the
      // measured t_n anyway, and the divergence clause where it is checkable.
      bool hyp = true;
      const double tbound =
          std::pow(std::sin(distance(u, zJ.z, c) * rk / 2.0), 2) / cmsk;
      hyp &= tbound <= eps_a / 3.0;
      for (std::size_t n = n0; n <= n_max; ++n)
        hyp &= inst.t[n - 1] <= eps_a / 3.0 + 1e-12;
      for (std::uint64_t n = 1; n <= 2; ++n) {
        const BigInt tt = theta_tilde_fn(BigInt(n));
        if (tt <= BigInt(n_max)) {
          double sum = 0.0;
          for (std::uint64_t k = 1; k <= tt.convert_to<std::uint64_t>(); ++k)
            sum += inst.alpha[k - 1];
          hyp &= sum >= static_cast<double>(n);
        }
      }

      const WindowVerdict v = check_window_recurrence(inst);
      ok &= hyp && v.recurrence_ok && v.window_ok;
      std::printf("       halpern-derived window: Theta=%s J=%llu max s on window=%.3g"
                  " (eps_a=%.3g)\n",
                  ThetaV.str().c_str(), static_cast<unsigned long long>(J),
                  v.max_window_value, eps_a);
      if (!(hyp && v.recurrence_ok && v.window_ok)) detail += "halpern instance failed; ";
    } else {
      ok = false;
      detail += "halpern window did not fit the horizon; ";
    }
  }
  report(9, "window lemma end-to-end (synthetic + Halpern-derived)", ok, detail);
}

// --------------------------------------------------------------------------
// 10. Theorem-level bound, qualified: exact Sigma branch via the sqrt
//     schedule, estimate branch flagged with finite N_emp.
// --------------------------------------------------------------------------
void criterion10() {
  bool ok = true;
  std::string detail;

  {
    ExperimentConfig cfg;
    cfg.kappa = 1.0;
    cfg.radius = 0.0005; // M = 0.001
    cfg.map_kind = "pull";
    cfg.schedule_kind = "sqrt";
    cfg.epsilons = {1.9};
    cfg.horizon = 2'000;
    const MetaReport rep = run_meta(cfg);
    const MetaEntry& e = rep.entries[0];
    ok &= e.sigma_exact && e.window_found && e.verdict == "respected";
    if (!e.sigma_exact) detail += "sqrt Sigma not exact; ";
    std::printf("       exact branch: Sigma has %zu digits, N_emp=%llu\n",
                e.sigma.is_exact() ? e.sigma.value().str().size() : 0,
                static_cast<unsigned long long>(e.n_emp));
  }
  {
    ExperimentConfig cfg;
    cfg.kappa = 1.0;
    cfg.radius = 0.05;
    cfg.map_kind = "pull";
    cfg.epsilons = {0.5, 0.02};
    cfg.g_kind = "affine";
    cfg.g_a = 1;
    cfg.g_b = 0;
    cfg.horizon = 20'000;
    const MetaReport rep = run_meta(cfg);
    for (const auto& e : rep.entries) {
      ok &= e.window_found;           // N_emp finite
      ok &= !e.sigma_exact;           // harmonic tower downgrades
      ok &= e.verdict == "estimate-flagged";
      const double lhs =
          e.n_emp == 0 ? 0.0 : std::log2(static_cast<double>(e.n_emp));
      ok &= lhs <= e.sigma.log2_lower(); // magnitude consistency
    }
    for (const auto& t : rep.towers) ok &= t.downgraded;
  }
  report(10, "Sigma bound: exact branch respected, estimate branch flagged", ok, detail);
}

} // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - t0);
  std::printf("%d criterion(s) failed; total runtime %llds\n", g_failures,
              static_cast<long long>(dt.count()));
  return g_failures == 0 ? 0 : 1;
}
