#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "catk/bigcount.hpp"
#include "catk/gfunction.hpp"
#include "catk/schedule.hpp"

namespace catk {

/// ceil(1/cos(M sqrt kappa)), guarded; >= 2 whenever M sqrt kappa > 0.
BigInt ceil_inv_cos(double m_sqrt_kappa, EvalContext& ctx);

/// Rate of convergence of d(x_n, x_{n+1}) -> 0:
///   theta( ceil(1/cos(M rk)) * (gamma(eps/2M) + max{ceil(ln(2M/eps)), 1}) ).
BigCount phi_tilde(const Rational& eps, double kappa, double M, const Modulus& gamma,
                   const ThetaFn& theta, EvalContext& ctx);
BigCount phi_tilde(double eps, double kappa, double M, const Modulus& gamma,
                   const ThetaFn& theta, EvalContext& ctx);

/// Rate of asymptotic regularity: max{ phi_tilde(eps/2), alpha(eps/2M) }.
BigCount phi(const Rational& eps, double kappa, double M, const Modulus& gamma,
             const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx);
BigCount phi(double eps, double kappa, double M, const Modulus& gamma,
             const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx);

/// Common rate for the harmonic schedule:
///   4^( ceil(1/cos(M rk)) * ceil(8M/eps + 2) ).
BigCount psi_harmonic(double eps, double kappa, double M, EvalContext& ctx);

/// Real-sequence lemma rate: theta(gamma(eps/2) + max{ceil(ln(2P/eps)), 1}) + 1,
/// P an upper bound on the sequence.
BigCount sigma_sequence(double eps, double P, const Modulus& gamma, const ThetaFn& theta,
                        EvalContext& ctx);

/// Effective rate for limsup gamma_n^t <= 0:
///   max{ theta(ceil(1/cos(M rk)) * (gamma(L) + max{ceil(ln(1/L)),1})), alpha(2L) },
///   L = cos(M rk) t eps / (4 M rk).
/// Coincides exactly with phi(cos(M rk) t eps / rk, ...) by construction.
BigCount limsup_rate(double eps, double kappa, double M, double t, const Modulus& gamma,
                     const ThetaFn& theta, const Modulus& alpha, EvalContext& ctx);

/// Browder metastability bound: gtilde^(ceil(M rk tan(M rk)/(1-cos eps)))(0),
/// gtilde(n) = n + g(n). eps in (0,1).
BigCount browder_K(double eps, const GFunction& g, double M, double kappa,
                   EvalContext& ctx);

/// h(delta) = sin(d/2)(sin(d/2) + 2 sin(Mrk/2)) + sin(d Mrk/2)(sin(d Mrk/2) + 2),
/// always <= 6 delta.
double h_delta(double delta, double M, double kappa);

struct WindowRates {
  BigCount Theta;
  Rational Delta;
};

/// Real-sequence window rates:
///   Theta = theta(psi(eps/3) - 1 + max{ceil(ln(3L/eps)), 1}) + 1,
///   Delta = eps / (3 g_eps(Theta - psi(eps/3))), g_eps(n) = n + g(n + psi(eps/3)).
WindowRates window_rates(double eps, double L, const ThetaFn& theta,
                               const std::function<BigInt(const Rational&)>& psi,
                               const GFunction& g, EvalContext& ctx);

/// Serializable result of a full bound-tower evaluation.
struct RateTowerReport {
  double eps = 0.0, kappa = 0.0, M = 0.0;
  std::string g_desc, schedule_name;

  double eps0 = 0.0;
  BigInt inv_eps0;
  BigInt B;
  long long S = 0, T = 0;            ///< pre-clamp ceilings at the standard argument
  double standard_arg = 0.0;         ///< sin^2(eps sqrt kappa / 4)
  double chi_arg = 0.0;              ///< standard_arg / 3

  BigCount L_inv_at_min;             ///< 1/L_i at i = ceil(1/eps0) (ceiling of)
  BigCount chi_at_min, chi_star_at_min, Theta_at_min, f_at_min;
  std::string delta_star_at_min;     ///< decimal rendering of the exact rational
  std::vector<BigCount> iterates_head; ///< first iterates of f~* (at most 32)
  BigCount K0_lo, K0_hi;
  BigCount Theta_at_hi;              ///< N's defining form at the range's high end
  BigCount Gamma_at_end, A_at_end, Sigma;

  bool sigma_exact = false;
  bool downgraded = false;
  bool extrapolated = false;
  std::uint64_t guard_warnings = 0;
  std::string n_form; ///< the defining index form of N with the K0 range
};

/// Full bound-tower evaluation for arbitrary step-size moduli.
RateTowerReport table1_tower(double eps, const GFunction& g, double kappa, double M,
                             const ModuliSchedule& s, const EvalPolicy& policy = {});

/// Harmonic specialization (lambda_n = 1/(n+1)) via its closed exponential
/// forms; agrees with table1_tower at the harmonic moduli field by field.
RateTowerReport sigma_harmonic(double eps, const GFunction& g, double kappa, double M,
                               const EvalPolicy& policy = {});

/// Indexed tower functionals, exposed for tests and the experiment layer.
class Table1Tower {
public:
  Table1Tower(double eps, GFunction g, double kappa, double M, ModuliSchedule s,
              const EvalPolicy& policy = {});

  double eps0() const { return eps0_; }
  const BigInt& inv_eps0() const { return inv_eps0_; }
  const BigInt& B() const { return b_; }
  long long S_raw() const { return s_raw_; }
  long long T_raw() const { return t_raw_; }
  const Rational& standard_arg() const { return std_arg_; }

  Rational L_i(const BigInt& i, const Rational& eps_arg) const;
  BigCount chi(const BigInt& i, const Rational& eps_arg);
  BigCount chi_star(const BigInt& i, const Rational& eps_arg);
  BigCount chi_star_std(const BigCount& i); ///< at the shared argument std_arg/3
  BigCount Theta_std(const BigCount& i);    ///< Theta_i(standard_arg)
  Rational delta_star_std(const BigInt& i); ///< exact path only
  BigCount f(const BigCount& i);
  BigCount f_star(const BigCount& i);
  BigCount f_tilde_star(const BigCount& i);
  BigCount Gamma(const BigCount& n);
  BigCount theta_plus(const BigCount& n);
  BigCount A(const BigCount& n);

  RateTowerReport run();
  EvalContext& ctx() { return ctx_; }

private:
  BigCount theta_of(const BigCount& n) { return sched_.theta(n, ctx_); }
  BigCount modulus_of_ratio(const Modulus& m, const Rational& k, const BigCount& iplus1);
  BigCount ln_ceil_ratio(const Rational& k, const BigCount& iplus1);

  double eps_, kappa_, M_, msk_, cos_msk_;
  GFunction g_;
  ModuliSchedule sched_;
  EvalContext ctx_;
  Rational r_msk_;  ///< rational_from(M) * rational_from(sqrt(kappa))
  Rational std_arg_;
  double eps0_ = 0.0;
  BigInt inv_eps0_, b_, c_;
  long long s_raw_ = 0, t_raw_ = 0;
};

} // namespace catk
