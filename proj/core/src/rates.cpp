#include "catk/rates.hpp"

#include <cmath>
#include <sstream>

#include "catk/errors.hpp"

namespace catk {

namespace {

void require_msk(double msk) {
  if (!(msk > 0.0 && msk < M_PI / 2.0))
    throw DomainError("rate formulas require 0 < M*sqrt(kappa) < pi/2");
}

BigCount theta_apply(const ThetaFn& theta, const BigInt& arg, EvalContext& ctx) {
  return theta(BigCount::exact(arg, ctx), ctx);
}

long long clamped_ll(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()))
    return std::numeric_limits<long long>::max();
  if (v < BigInt(std::numeric_limits<long long>::min()))
    return std::numeric_limits<long long>::min();
  return v.convert_to<long long>();
}

/// mod(k / (i+1)) for rational k > 0 and a counter i+1 in any mode.
BigCount modulus_of_ratio_impl(const Modulus& m, const Rational& k,
                               const BigCount& iplus1, EvalContext& ctx) {
  if (iplus1.is_exact()) return BigCount::exact(m(k / Rational(iplus1.value())), ctx);
  if (m.kind() == Modulus::Kind::constant) return BigCount::exact(m(Rational(1)), ctx);
  // ceil_inv_pow(p, scale) on k/(i+1): value ~ scale * ((i+1)/k)^p.
  const double p = static_cast<double>(m.power());
  const double scale_l2 = log2_of(m.scale());
  const double lk = log2_of(k);
  switch (iplus1.mode()) {
    case BigCount::Mode::log2_est:
      return BigCount::log2_estimate(scale_l2 + p * (iplus1.log2v() - lk), ctx);
    case BigCount::Mode::loglog_est:
      return BigCount::loglog_estimate(iplus1.loglogv() + std::log2(std::max(p, 1.0)));
    default:
      ctx.downgraded = true;
      return iplus1; // tower absorbs polynomial transforms
  }
}

/// max{ceil(ln((i+1)/k)), 1} in any mode.
BigCount ln_ceil_ratio_impl(const Rational& k, const BigCount& iplus1, EvalContext& ctx) {
  if (iplus1.is_exact()) {
    const Rational q = Rational(iplus1.value()) / k;
    BigInt v = q <= 0 ? BigInt(1) : ceil_log_guarded(q, ctx);
    if (v < 1) v = 1;
    return BigCount::exact(std::move(v), ctx);
  }
  switch (iplus1.mode()) {
    case BigCount::Mode::log2_est: {
      const double lnv = (iplus1.log2v() - log2_of(k)) * M_LN2;
      if (lnv <= 1.0) return BigCount(BigInt(1));
      if (lnv < 9e15) return BigCount(bigint_from_integral_double(std::ceil(lnv)));
      return BigCount::log2_estimate(std::log2(lnv), ctx);
    }
    case BigCount::Mode::loglog_est:
      // ln(value) = 2^ll * ln 2, so log2 of it is ll + log2(ln 2).
      return BigCount::log2_estimate(iplus1.loglogv() + std::log2(M_LN2), ctx);
    case BigCount::Mode::tower_est: {
      if (iplus1.tower_height() >= 1)
        return BigCount::tower_estimate(iplus1.loglogv(), iplus1.tower_height() - 1);
      return BigCount::loglog_estimate(iplus1.loglogv());
    }
    default:
      return iplus1;
  }
}

/// a - b when a is known to dominate; exact when both are exact.
BigCount sub_dominant(const BigCount& a, const BigCount& b, EvalContext& ctx) {
  if (a.is_exact() && b.is_exact()) {
    BigInt v = a.value() - b.value();
    if (v < 0) v = 0;
    return BigCount::exact(std::move(v), ctx);
  }
  return a;
}

} // namespace

BigInt ceil_inv_cos(double msk, EvalContext& ctx) {
  require_msk(msk);
  return ceil_guarded(1.0 / std::cos(msk), ctx);
}

BigCount phi_tilde(const Rational& eps, double kappa, double M, const Modulus& gamma,
                   const ThetaFn& theta, EvalContext& ctx) {
  if (eps <= 0) throw ContractError("eps must be positive");
  const double msk = M * std::sqrt(kappa);
  require_msk(msk);
  const BigInt c = ceil_inv_cos(msk, ctx);
  const Rational m2 = 2 * rational_from(M);
  BigInt lnterm = ceil_log_guarded(m2 / eps, ctx);
  if (lnterm < 1) lnterm = 1;
  const BigInt inner = gamma(eps / m2) + lnterm;
  return theta_apply(theta, c * inner, ctx);
}

BigCount phi_tilde(double eps, double kappa, double M, const Modulus& gamma,
                   const ThetaFn& theta, EvalContext& ctx) {
  return phi_tilde(rational_from(eps), kappa, M, gamma, theta, ctx);
}

BigCount phi(const Rational& eps, double kappa, double M, const Modulus& gamma,
             const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx) {
  if (eps <= 0) throw ContractError("eps must be positive");
  const Rational m2 = 2 * rational_from(M);
  const BigCount tilde = phi_tilde(eps / 2, kappa, M, gamma, theta, ctx);
  return bc_max(tilde, BigCount(alpha(eps / m2)));
}

BigCount phi(double eps, double kappa, double M, const Modulus& gamma,
             const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx) {
  return phi(rational_from(eps), kappa, M, gamma, theta, alpha, ctx);
}

BigCount psi_harmonic(double eps, double kappa, double M, EvalContext& ctx) {
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  const double msk = M * std::sqrt(kappa);
  require_msk(msk);
  const BigInt c = ceil_inv_cos(msk, ctx);
  const BigInt inner = ceil_rational(8 * rational_from(M) / rational_from(eps) + 2);
  const BigInt expo = c * inner;
  // exp(expo * ln 4) = 4^expo, exactly.
  const double digits = expo.convert_to<double>() * 2.0 * 0.30103 + 1.0;
  if (ctx.policy.force_estimate || digits > static_cast<double>(ctx.policy.digit_budget))
    return BigCount::log2_estimate(2.0 * expo.convert_to<double>(), ctx);
  return BigCount::exact(boost::multiprecision::pow(BigInt(4), expo.convert_to<unsigned>()),
                         ctx);
}

BigCount sigma_sequence(double eps, double P, const Modulus& gamma, const ThetaFn& theta,
                        EvalContext& ctx) {
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  if (!(P > 0.0)) throw ContractError("the sequence bound P must be positive");
  const Rational e = rational_from(eps);
  BigInt lnterm = ceil_log_guarded(2 * rational_from(P) / e, ctx);
  if (lnterm < 1) lnterm = 1;
  const BigInt inner = gamma(e / 2) + lnterm;
  return bc_add(theta_apply(theta, inner, ctx), BigCount(BigInt(1)), ctx);
}

BigCount limsup_rate(double eps, double kappa, double M, double t, const Modulus& gamma,
                     const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx) {
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  if (!(t > 0.0 && t < 1.0)) throw ContractError("t must lie in (0,1)");
  const double msk = M * std::sqrt(kappa);
  require_msk(msk);
  const BigInt c = ceil_inv_cos(msk, ctx);
  // L as an exact rational in the same factors used by phi's argument, so the
  // identity with phi(cos(M rk) t eps / rk) is bit-exact.
  const Rational r_msk = rational_from(M) * rational_from(std::sqrt(kappa));
  const Rational L = rational_from(std::cos(msk)) * rational_from(t) *
                     rational_from(eps) / (4 * r_msk);
  BigInt lnterm = ceil_log_guarded(1 / L, ctx);
  if (lnterm < 1) lnterm = 1;
  const BigInt inner = gamma(L) + lnterm;
  const BigCount branch1 = theta_apply(theta, c * inner, ctx);
  return bc_max(branch1, BigCount(alpha(2 * L)));
}

BigCount browder_K(double eps, const GFunction& g, double M, double kappa,
                   EvalContext& ctx) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("eps must lie in (0,1)");
  const double msk = M * std::sqrt(kappa);
  require_msk(msk);
  const BigInt k = ceil_guarded(msk * std::tan(msk) / (1.0 - std::cos(eps)), ctx);
  return g.iterate_tilde(k, ctx);
}

double h_delta(double delta, double M, double kappa) {
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("delta must lie in (0,1)");
  const double msk = M * std::sqrt(kappa);
  require_msk(msk);
  const double s1 = std::sin(delta / 2.0);
  const double s2 = std::sin(delta * msk / 2.0);
  return s1 * (s1 + 2.0 * std::sin(msk / 2.0)) + s2 * (s2 + 2.0);
}

WindowRates window_rates(double eps, double L, const ThetaFn& theta,
                               const std::function<BigInt(const Rational&)>& psi,
                               const GFunction& g, EvalContext& ctx) {
  if (!(eps > 0.0 && eps < 2.0)) throw ContractError("eps must lie in (0,2)");
  if (!(L > 0.0)) throw ContractError("the bound L must be positive");
  const Rational e = rational_from(eps);
  const BigInt p = psi(e / 3);
  if (p < 1) throw ContractError("psi must return positive integers");
  BigInt lnterm = ceil_log_guarded(3 * rational_from(L) / e, ctx);
  if (lnterm < 1) lnterm = 1;
  const BigCount Theta = bc_add(theta_apply(theta, p - 1 + lnterm, ctx),
                                BigCount(BigInt(1)), ctx);
  if (!Theta.is_exact())
    throw UnsupportedAnalysisError("window rates exceed the exact evaluation budget");
  // g_eps(n) = n + g(n + psi(eps/3)); Delta = eps / (3 g_eps(Theta - psi(eps/3))).
  const BigInt arg = Theta.value() - p;
  const BigInt ge = arg + g(arg + p);
  if (ge <= 0) throw ContractError("degenerate window denominator");
  WindowRates out;
  out.Theta = Theta;
  out.Delta = e / Rational(3 * ge);
  return out;
}

// ---------------------------------------------------------------------------
// Metastability bound tower
// ---------------------------------------------------------------------------

Table1Tower::Table1Tower(double eps, GFunction g, double kappa, double M,
                         ModuliSchedule s, const EvalPolicy& policy)
    : eps_(eps), kappa_(kappa), M_(M), g_(std::move(g)), sched_(std::move(s)) {
  if (!(eps > 0.0 && eps < 2.0)) throw ContractError("eps must lie in (0,2)");
  msk_ = M * std::sqrt(kappa);
  require_msk(msk_);
  ctx_.policy = policy;
  cos_msk_ = std::cos(msk_);
  r_msk_ = rational_from(M) * rational_from(std::sqrt(kappa));

  const double se = std::sin(eps * std::sqrt(kappa) / 4.0);
  std_arg_ = rational_from(se * se);
  eps0_ = cos_msk_ / 36.0 * (se * se);
  inv_eps0_ = ceil_rational(1 / rational_from(eps0_));
  b_ = ceil_guarded(msk_ * std::tan(msk_) / (1.0 - std::cos(eps0_)), ctx_);
  c_ = ceil_inv_cos(msk_, ctx_);

  const double sm4 = std::sin(msk_ / 4.0);
  const double sm2 = std::sin(msk_ / 2.0);
  s_raw_ = clamped_ll(ceil_guarded(std::log(3.0 * sm4 * sm4 / (se * se)), ctx_));
  t_raw_ = clamped_ll(ceil_guarded(std::log(3.0 * sm2 * sm2 / (se * se)), ctx_));
}

Rational Table1Tower::L_i(const BigInt& i, const Rational& eps_arg) const {
  return rational_from(cos_msk_) * eps_arg / (4 * r_msk_ * Rational(i + 1));
}

BigCount Table1Tower::modulus_of_ratio(const Modulus& m, const Rational& k,
                                       const BigCount& iplus1) {
  return modulus_of_ratio_impl(m, k, iplus1, ctx_);
}

BigCount Table1Tower::ln_ceil_ratio(const Rational& k, const BigCount& iplus1) {
  return ln_ceil_ratio_impl(k, iplus1, ctx_);
}

BigCount Table1Tower::chi(const BigInt& i, const Rational& eps_arg) {
  const Rational L = L_i(i, eps_arg);
  BigInt lnterm = ceil_log_guarded(1 / L, ctx_);
  if (lnterm < 1) lnterm = 1;
  const BigInt inner = sched_.gamma(L) + lnterm;
  const BigCount branch1 = theta_of(BigCount::exact(c_ * inner, ctx_));
  return bc_max(branch1, BigCount(sched_.alpha(2 * L)));
}

BigCount Table1Tower::chi_star(const BigInt& i, const Rational& eps_arg) {
  return chi(i, eps_arg * rational_from(cos_msk_) / 2);
}

BigCount Table1Tower::chi_star_std(const BigCount& i) {
  if (i.is_exact()) return chi_star(i.value(), std_arg_ / 3);
  // k such that L_i = k/(i+1) at the shared argument chi*_i(std/3).
  const Rational k = rational_from(cos_msk_) * (std_arg_ / 3) *
                     rational_from(cos_msk_) / (2 * 4 * r_msk_);
  const BigCount iplus1 = bc_add(i, BigCount(BigInt(1)), ctx_);
  const BigCount gammaL = modulus_of_ratio(sched_.gamma, k, iplus1);
  const BigCount lnterm = ln_ceil_ratio(k, iplus1);
  const BigCount inner = bc_add(gammaL, lnterm, ctx_);
  const BigCount branch1 = theta_of(bc_mul(BigCount(c_), inner, ctx_));
  const BigCount branch2 = modulus_of_ratio(sched_.alpha, k / 2, iplus1);
  return bc_max(branch1, branch2);
}

BigCount Table1Tower::Theta_std(const BigCount& i) {
  const BigCount chis = chi_star_std(i);
  const long long maxT = std::max<long long>(t_raw_, 1);
  const BigCount inner = bc_add(bc_sub_clamped(chis, 1, ctx_),
                                BigCount(BigInt(maxT)), ctx_);
  return bc_add(theta_of(bc_mul(BigCount(c_), inner, ctx_)), BigCount(BigInt(1)), ctx_);
}

Rational Table1Tower::delta_star_std(const BigInt& i) {
  const BigCount chis = chi_star_std(BigCount(i));
  const BigCount Theta = Theta_std(BigCount(i));
  if (!chis.is_exact() || !Theta.is_exact())
    throw UnsupportedAnalysisError("Delta* requires exact Theta and chi*");
  const BigInt denom =
      3 * (Theta.value() - chis.value() + g_(Theta.value()));
  if (denom <= 0) throw ContractError("nonpositive Delta* denominator");
  return std_arg_ / Rational(denom);
}

BigCount Table1Tower::f(const BigCount& i) {
  const BigCount chis = chi_star_std(i);
  const BigCount Theta = Theta_std(i);
  if (i.is_exact() && chis.is_exact() && Theta.is_exact()) {
    const BigInt D = Theta.value() - chis.value() + g_(Theta.value());
    const BigInt val = ceil_rational(r_msk_ * 3 * Rational(D) / std_arg_);
    BigInt out = (val > i.value() ? val : i.value()) - i.value();
    return BigCount::exact(std::move(out), ctx_);
  }
  const BigCount D = bc_add(sub_dominant(Theta, chis, ctx_), g_.eval(Theta, ctx_), ctx_);
  const BigCount val = bc_ceil_mul(r_msk_ * 3 / std_arg_, D, ctx_);
  return sub_dominant(bc_max(val, i), i, ctx_);
}

BigCount Table1Tower::f_star(const BigCount& i) {
  const BigCount shifted = bc_add(i, BigCount(inv_eps0_), ctx_);
  return bc_add(f(shifted), BigCount(inv_eps0_), ctx_);
}

BigCount Table1Tower::f_tilde_star(const BigCount& i) {
  return bc_add(i, f_star(i), ctx_);
}

BigCount Table1Tower::Gamma(const BigCount& n) {
  if (n.is_exact() && n.value() < inv_eps0_)
    throw ContractError("Gamma is evaluated only at arguments >= ceil(1/eps0)");
  const bool monotone = sched_.theta.nondecreasing() &&
                        sched_.alpha.nonincreasing() && sched_.gamma.nonincreasing();
  if (monotone) return chi_star_std(n);
  if (n.is_exact() &&
      n.value() - inv_eps0_ <= BigInt(ctx_.policy.enumeration_budget)) {
    BigCount best = chi_star_std(BigCount(inv_eps0_));
    for (BigInt i = inv_eps0_ + 1; i <= n.value(); ++i)
      best = bc_max(best, chi_star_std(BigCount(i)));
    return best;
  }
  // Non-monotone theta over an unenumerable range: flagged endpoint estimate.
  ctx_.extrapolated = true;
  BigCount r = chi_star_std(n);
  if (r.is_exact())
    return BigCount::log2_estimate(r.value() == 0 ? 0.0 : log2_of(r.value()), ctx_);
  return r;
}

BigCount Table1Tower::theta_plus(const BigCount& n) {
  if (sched_.theta.nondecreasing()) return theta_of(n);
  if (n.is_exact() && n.value() <= BigInt(ctx_.policy.enumeration_budget)) {
    BigCount best = theta_of(BigCount(BigInt(1)));
    for (BigInt i = 2; i <= n.value(); ++i)
      best = bc_max(best, theta_of(BigCount(i)));
    return best;
  }
  ctx_.extrapolated = true;
  BigCount r = theta_of(n);
  if (r.is_exact())
    return BigCount::log2_estimate(r.value() == 0 ? 0.0 : log2_of(r.value()), ctx_);
  return r;
}

BigCount Table1Tower::A(const BigCount& n) {
  const long long maxS = std::max<long long>(s_raw_, 1);
  const BigCount inner = bc_add(bc_sub_clamped(Gamma(n), 1, ctx_),
                                BigCount(BigInt(maxS)), ctx_);
  return bc_add(theta_plus(bc_mul(BigCount(c_), inner, ctx_)), BigCount(BigInt(1)),
                ctx_);
}

RateTowerReport Table1Tower::run() {
  RateTowerReport rep;
  rep.eps = eps_;
  rep.kappa = kappa_;
  rep.M = M_;
  rep.g_desc = g_.describe();
  rep.schedule_name = sched_.name;
  rep.eps0 = eps0_;
  rep.inv_eps0 = inv_eps0_;
  rep.B = b_;
  rep.S = s_raw_;
  rep.T = t_raw_;
  rep.standard_arg = std_arg_.convert_to<double>();
  rep.chi_arg = (std_arg_ / 3).convert_to<double>();

  // Samples at the low end of the K0 range.
  rep.L_inv_at_min = BigCount(
      ceil_rational(1 / L_i(inv_eps0_, (std_arg_ / 3) * rational_from(cos_msk_) / 2)));
  rep.chi_at_min = chi(inv_eps0_, std_arg_ / 3);
  rep.chi_star_at_min = chi_star_std(BigCount(inv_eps0_));
  rep.Theta_at_min = Theta_std(BigCount(inv_eps0_));
  try {
    const Rational d = delta_star_std(inv_eps0_);
    std::ostringstream os;
    os << d.convert_to<double>();
    rep.delta_star_at_min = os.str();
  } catch (const UnsupportedAnalysisError&) {
    rep.delta_star_at_min = "estimate";
  }
  rep.f_at_min = f(BigCount(inv_eps0_));

  // Iterate f~* from 0, B times.
  BigCount x(BigInt(0));
  BigInt k = 0;
  const BigInt total = b_;
  const BigInt step_budget(static_cast<long long>(ctx_.policy.iteration_budget));
  while (k < total) {
    if (k < step_budget) {
      x = f_tilde_star(x);
      ++k;
      if (rep.iterates_head.size() < 32) rep.iterates_head.push_back(x);
      continue;
    }
    // Budget exhausted: extrapolate the remaining applications, flagged.
    ctx_.extrapolated = true;
    const BigInt remaining = total - k;
    if (x.mode() == BigCount::Mode::tower_est) {
      const BigCount y = f_tilde_star(x);
      BigInt dh = y.tower_height() - x.tower_height();
      if (dh < 1) dh = 1;
      x = BigCount::tower_estimate(y.loglogv(), y.tower_height() + (remaining - 1) * dh);
      k = total;
    } else if (x.mode() == BigCount::Mode::loglog_est) {
      const BigCount y = f_tilde_star(x);
      if (y.mode() == BigCount::Mode::loglog_est) {
        const double d = std::max(y.loglogv() - x.loglogv(), 0.0);
        const double rem = (remaining - 1).convert_to<double>();
        x = BigCount::loglog_estimate(y.loglogv() + rem * d);
        k = total;
      } else {
        x = y;
        ++k;
      }
    } else {
      const double l2x = x.is_exact()
                             ? (x.value() == 0 ? 0.0 : log2_of(x.value()))
                             : x.log2v();
      const BigCount y = f_tilde_star(x);
      if (y.mode() == BigCount::Mode::loglog_est ||
          y.mode() == BigCount::Mode::tower_est) {
        x = y;
        ++k;
        continue;
      }
      const double l2y =
          y.is_exact() ? (y.value() == 0 ? 0.0 : log2_of(y.value())) : y.log2v();
      const double rem = (remaining - 1).convert_to<double>();
      if (l2x > 1.0 && l2y / std::max(l2x, 1.0) > 1.05) {
        // log2 grows geometrically (polynomial theta): extrapolate the exponent.
        const double ratio = l2y / l2x;
        const double final_ll = std::log2(l2y) + rem * std::log2(ratio);
        if (final_ll < 1000.0)
          x = BigCount::log2_estimate(std::exp2(final_ll), ctx_);
        else
          x = BigCount::loglog_estimate(final_ll);
      } else {
        const double d = std::max(l2y - l2x, 0.0);
        const double final_l2 = l2y + rem * d;
        x = BigCount::log2_estimate(final_l2, ctx_);
      }
      k = total;
    }
  }

  rep.K0_lo = BigCount(inv_eps0_);
  rep.K0_hi = bc_add(x, BigCount(inv_eps0_), ctx_);
  rep.Theta_at_hi = Theta_std(rep.K0_hi);
  rep.Gamma_at_end = Gamma(rep.K0_hi);
  rep.Sigma = A(rep.K0_hi);
  rep.A_at_end = rep.Sigma;
  rep.sigma_exact = rep.Sigma.is_exact();
  rep.downgraded = ctx_.downgraded;
  rep.extrapolated = ctx_.extrapolated;
  rep.guard_warnings = ctx_.guard_warnings;
  {
    std::ostringstream os;
    os << "N = Theta_K0(sin^2(eps*sqrt(kappa)/4)) = Theta_K0(" << rep.standard_arg
       << ") for some K0 with " << inv_eps0_.str() << " <= K0 <= " << rep.K0_hi.str();
    rep.n_form = os.str();
  }
  return rep;
}

RateTowerReport table1_tower(double eps, const GFunction& g, double kappa, double M,
                             const ModuliSchedule& s, const EvalPolicy& policy) {
  Table1Tower tower(eps, g, kappa, M, s, policy);
  return tower.run();
}

// ---------------------------------------------------------------------------
// Harmonic specialization: the closed exponential forms, with the alpha branch
// dropped and Gamma(n) = chi*_n (the family (chi*_i)_i is nondecreasing).
// ---------------------------------------------------------------------------

namespace {

class HarmonicTower {
public:
  HarmonicTower(double eps, GFunction g, double kappa, double M, const EvalPolicy& policy)
      : eps_(eps), kappa_(kappa), M_(M), g_(std::move(g)) {
    if (!(eps > 0.0 && eps < 2.0)) throw ContractError("eps must lie in (0,2)");
    msk_ = M * std::sqrt(kappa);
    require_msk(msk_);
    ctx_.policy = policy;
    cos_msk_ = std::cos(msk_);
    r_msk_ = rational_from(M) * rational_from(std::sqrt(kappa));
    pow4_ = ThetaFn::pow_base(4, 1);
    const double se = std::sin(eps * std::sqrt(kappa) / 4.0);
    std_arg_ = rational_from(se * se);
    eps0_ = cos_msk_ / 36.0 * (se * se);
    inv_eps0_ = ceil_rational(1 / rational_from(eps0_));
    b_ = ceil_guarded(msk_ * std::tan(msk_) / (1.0 - std::cos(eps0_)), ctx_);
    c_ = ceil_inv_cos(msk_, ctx_);
    const double sm4 = std::sin(msk_ / 4.0);
    const double sm2 = std::sin(msk_ / 2.0);
    s_raw_ = clamped_ll(ceil_guarded(std::log(3.0 * sm4 * sm4 / (se * se)), ctx_));
    t_raw_ = clamped_ll(ceil_guarded(std::log(3.0 * sm2 * sm2 / (se * se)), ctx_));
    k_chi_ = rational_from(cos_msk_) * (std_arg_ / 3) * rational_from(cos_msk_) /
             (2 * 4 * r_msk_);
  }

  // chi_i(eps) = 4^( c*(ceil(1/L_i) + max{ceil(ln(1/L_i)),1}) + 1 ), L_i over i+1.
  BigCount chi_star(const BigCount& i) {
    const BigCount iplus1 = bc_add(i, BigCount(BigInt(1)), ctx_);
    const Modulus ceil_inv = Modulus::ceil_inv_pow(1);
    const BigCount inv_l = modulus_of_ratio_impl(ceil_inv, k_chi_, iplus1, ctx_);
    const BigCount lnterm = ln_ceil_ratio_impl(k_chi_, iplus1, ctx_);
    const BigCount inner = bc_add(inv_l, lnterm, ctx_);
    return pow4_(bc_mul(BigCount(c_), inner, ctx_), ctx_);
  }

  BigCount Theta(const BigCount& i) {
    const BigCount chis = chi_star(i);
    const long long maxT = std::max<long long>(t_raw_, 1);
    const BigCount inner =
        bc_add(bc_sub_clamped(chis, 1, ctx_), BigCount(BigInt(maxT)), ctx_);
    return bc_add(pow4_(bc_mul(BigCount(c_), inner, ctx_), ctx_), BigCount(BigInt(1)),
                  ctx_);
  }

  BigCount f(const BigCount& i) {
    const BigCount chis = chi_star(i);
    const BigCount Th = Theta(i);
    if (i.is_exact() && chis.is_exact() && Th.is_exact()) {
      const BigInt D = Th.value() - chis.value() + g_(Th.value());
      const BigInt val = ceil_rational(r_msk_ * 3 * Rational(D) / std_arg_);
      BigInt out = (val > i.value() ? val : i.value()) - i.value();
      return BigCount::exact(std::move(out), ctx_);
    }
    const BigCount D = bc_add(sub_dominant(Th, chis, ctx_), g_.eval(Th, ctx_), ctx_);
    const BigCount val = bc_ceil_mul(r_msk_ * 3 / std_arg_, D, ctx_);
    return sub_dominant(bc_max(val, i), i, ctx_);
  }

  BigCount f_tilde_star(const BigCount& i) {
    const BigCount shifted = bc_add(i, BigCount(inv_eps0_), ctx_);
    const BigCount fs = bc_add(f(shifted), BigCount(inv_eps0_), ctx_);
    return bc_add(i, fs, ctx_);
  }

  BigCount A(const BigCount& n) {
    const long long maxS = std::max<long long>(s_raw_, 1);
    const BigCount inner =
        bc_add(bc_sub_clamped(chi_star(n), 1, ctx_), BigCount(BigInt(maxS)), ctx_);
    return bc_add(pow4_(bc_mul(BigCount(c_), inner, ctx_), ctx_), BigCount(BigInt(1)),
                  ctx_);
  }

  RateTowerReport run() {
    RateTowerReport rep;
    rep.eps = eps_;
    rep.kappa = kappa_;
    rep.M = M_;
    rep.g_desc = g_.describe();
    rep.schedule_name = "harmonic (closed form)";
    rep.eps0 = eps0_;
    rep.inv_eps0 = inv_eps0_;
    rep.B = b_;
    rep.S = s_raw_;
    rep.T = t_raw_;
    rep.standard_arg = std_arg_.convert_to<double>();
    rep.chi_arg = (std_arg_ / 3).convert_to<double>();

    const BigCount imin(inv_eps0_);
    {
      const BigCount iplus1 = bc_add(imin, BigCount(BigInt(1)), ctx_);
      rep.L_inv_at_min =
          modulus_of_ratio_impl(Modulus::ceil_inv_pow(1), k_chi_, iplus1, ctx_);
    }
    rep.chi_star_at_min = chi_star(imin);
    rep.chi_at_min = rep.chi_star_at_min;
    rep.Theta_at_min = Theta(imin);
    if (rep.Theta_at_min.is_exact() && rep.chi_star_at_min.is_exact()) {
      const BigInt D = Theta(imin).value() - rep.chi_star_at_min.value() +
                       g_(Theta(imin).value());
      std::ostringstream os;
      os << (std_arg_ / Rational(3 * D)).convert_to<double>();
      rep.delta_star_at_min = os.str();
    } else {
      rep.delta_star_at_min = "estimate";
    }
    rep.f_at_min = f(imin);

    BigCount x(BigInt(0));
    BigInt k = 0;
    const BigInt step_budget(static_cast<long long>(ctx_.policy.iteration_budget));
    while (k < b_) {
      if (k >= step_budget && x.mode() == BigCount::Mode::tower_est) {
        ctx_.extrapolated = true;
        const BigInt remaining = b_ - k;
        const BigCount y = f_tilde_star(x);
        BigInt dh = y.tower_height() - x.tower_height();
        if (dh < 1) dh = 1;
        x = BigCount::tower_estimate(y.loglogv(), y.tower_height() + (remaining - 1) * dh);
        break;
      }
      x = f_tilde_star(x);
      ++k;
      if (rep.iterates_head.size() < 32) rep.iterates_head.push_back(x);
    }

    rep.K0_lo = BigCount(inv_eps0_);
    rep.K0_hi = bc_add(x, BigCount(inv_eps0_), ctx_);
    rep.Theta_at_hi = Theta(rep.K0_hi);
    rep.Gamma_at_end = chi_star(rep.K0_hi);
    rep.Sigma = A(rep.K0_hi);
    rep.A_at_end = rep.Sigma;
    rep.sigma_exact = rep.Sigma.is_exact();
    rep.downgraded = ctx_.downgraded;
    rep.extrapolated = ctx_.extrapolated;
    rep.guard_warnings = ctx_.guard_warnings;
    std::ostringstream os;
    os << "N = Theta_K0(sin^2(eps*sqrt(kappa)/4)) = Theta_K0(" << rep.standard_arg
       << ") for some K0 with " << inv_eps0_.str() << " <= K0 <= " << rep.K0_hi.str();
    rep.n_form = os.str();
    return rep;
  }

private:
  double eps_, kappa_, M_, msk_ = 0.0, cos_msk_ = 0.0;
  GFunction g_;
  EvalContext ctx_;
  ThetaFn pow4_ = ThetaFn::pow_base(4, 1);
  Rational r_msk_, std_arg_, k_chi_;
  double eps0_ = 0.0;
  BigInt inv_eps0_, b_, c_;
  long long s_raw_ = 0, t_raw_ = 0;
};

} // namespace

RateTowerReport sigma_harmonic(double eps, const GFunction& g, double kappa, double M,
                               const EvalPolicy& policy) {
  HarmonicTower tower(eps, g, kappa, M, policy);
  return tower.run();
}

} // namespace catk
