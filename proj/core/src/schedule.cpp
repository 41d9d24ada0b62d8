#include "catk/schedule.hpp"

#include <cmath>

#include "catk/errors.hpp"

namespace catk {

Modulus Modulus::ceil_inv_pow(int power, double scale) {
  if (power < 1) throw ContractError("modulus power must be positive");
  if (!(scale > 0.0)) throw ContractError("modulus scale must be positive");
  Modulus m;
  m.kind_ = Kind::ceil_inv_pow;
  m.power_ = power;
  m.scale_ = rational_from(scale);
  return m;
}

Modulus Modulus::constant(BigInt v) {
  if (v < 1) throw ContractError("modulus values must be positive integers");
  Modulus m;
  m.kind_ = Kind::constant;
  m.value_ = std::move(v);
  return m;
}

BigInt Modulus::operator()(const Rational& eps) const {
  if (eps <= 0) throw ContractError("modulus argument must be positive");
  switch (kind_) {
    case Kind::constant:
      return value_;
    case Kind::ceil_inv_pow: {
      Rational p = eps;
      for (int i = 1; i < power_; ++i) p *= eps;
      BigInt r = ceil_rational(scale_ / p);
      return r < 1 ? BigInt(1) : r;
    }
  }
  return 1;
}

std::string Modulus::describe() const {
  if (kind_ == Kind::constant) return "const(" + value_.str() + ")";
  return "ceil(" + std::to_string(scale_.convert_to<double>()) + "/eps^" +
         std::to_string(power_) + ")";
}

ThetaFn ThetaFn::pow_base(unsigned base, unsigned shift) {
  if (base < 2) throw ContractError("theta base must be at least 2");
  ThetaFn t;
  t.kind_ = Kind::pow_base;
  t.base_ = base;
  t.shift_ = shift;
  return t;
}

ThetaFn ThetaFn::identity() {
  ThetaFn t;
  t.kind_ = Kind::identity;
  return t;
}

ThetaFn ThetaFn::linear(BigInt a, BigInt b) {
  if (a < 1 || b < 0) throw ContractError("linear theta needs a >= 1, b >= 0");
  ThetaFn t;
  t.kind_ = Kind::linear;
  t.a_ = std::move(a);
  t.b_ = std::move(b);
  return t;
}

ThetaFn ThetaFn::poly(unsigned exponent, unsigned shift) {
  if (exponent < 1) throw ContractError("poly theta needs exponent >= 1");
  ThetaFn t;
  t.kind_ = Kind::poly;
  t.exponent_ = exponent;
  t.shift_ = shift;
  return t;
}

BigInt ThetaFn::exact(const BigInt& n) const {
  if (n < 1) throw ContractError("theta is defined on Z+");
  switch (kind_) {
    case Kind::identity:
      return n;
    case Kind::linear:
      return a_ * n + b_;
    case Kind::poly:
      return boost::multiprecision::pow(BigInt(n + shift_), exponent_);
    case Kind::pow_base: {
      const BigInt arg = n + shift_;
      if (arg > 100'000'000)
        throw ContractError("exact theta evaluation too large");
      return boost::multiprecision::pow(BigInt(base_), arg.convert_to<unsigned>());
    }
  }
  return n;
}

BigCount ThetaFn::operator()(const BigCount& n, EvalContext& ctx) const {
  switch (kind_) {
    case Kind::identity:
      return n;
    case Kind::linear: {
      if (n.is_exact()) return BigCount::exact(a_ * n.value() + b_, ctx);
      EvalContext tmp = ctx;
      return bc_add(bc_mul(BigCount::exact(a_, tmp), n, ctx), BigCount(b_), ctx);
    }
    case Kind::poly: {
      const double e = static_cast<double>(exponent_);
      if (n.is_exact()) {
        const BigInt arg = n.value() + shift_;
        const double digits = (log2_of(arg) * e) * 0.30103 + 1.0;
        if (!ctx.policy.force_estimate &&
            digits <= static_cast<double>(ctx.policy.digit_budget))
          return BigCount::exact(boost::multiprecision::pow(arg, exponent_), ctx);
        return BigCount::log2_estimate(log2_of(arg) * e, ctx);
      }
      switch (n.mode()) {
        case BigCount::Mode::log2_est:
          return BigCount::log2_estimate(n.log2v() * e, ctx);
        case BigCount::Mode::loglog_est:
          return BigCount::loglog_estimate(n.loglogv() + std::log2(e));
        default:
          return n; // tower absorbs polynomial growth
      }
    }
    case Kind::pow_base: {
      const double lb = std::log2(static_cast<double>(base_));
      if (n.is_exact()) {
        const BigInt arg = n.value() + shift_;
        const double bits = arg.convert_to<double>() * lb;
        const double digits = bits * 0.30103 + 1.0;
        if (!ctx.policy.force_estimate &&
            digits <= static_cast<double>(ctx.policy.digit_budget) &&
            arg < BigInt(1) << 31)
          return BigCount::exact(
              boost::multiprecision::pow(BigInt(base_), arg.convert_to<unsigned>()),
              ctx);
        if (bits < 1e306) return BigCount::log2_estimate(bits, ctx);
        return BigCount::loglog_estimate(log2_of(arg) + std::log2(lb));
      }
      switch (n.mode()) {
        case BigCount::Mode::log2_est:
          // log2(theta(n)) = (n+shift)*log2(base) with n ~ 2^l2: overflows the
          // log2 tier whenever l2 is past ~1000, so promote.
          if (n.log2v() < 1000.0)
            return BigCount::log2_estimate(std::exp2(n.log2v()) * lb, ctx);
          return BigCount::loglog_estimate(n.log2v() + std::log2(lb));
        case BigCount::Mode::loglog_est:
          return BigCount::tower_estimate(n.loglogv(), 1);
        case BigCount::Mode::tower_est:
          return BigCount::tower_estimate(n.loglogv(), n.tower_height() + 1);
        default:
          break;
      }
      return n;
    }
  }
  return n;
}

std::string ThetaFn::describe() const {
  switch (kind_) {
    case Kind::identity:
      return "theta(n)=n";
    case Kind::linear:
      return "theta(n)=" + a_.str() + "*n+" + b_.str();
    case Kind::poly:
      return "theta(n)=(n+" + std::to_string(shift_) + ")^" + std::to_string(exponent_);
    case Kind::pow_base:
      return "theta(n)=" + std::to_string(base_) + "^(n+" + std::to_string(shift_) + ")";
  }
  return {};
}

ModuliSchedule harmonic_schedule() {
  ModuliSchedule s;
  s.name = "harmonic";
  s.lambda = [](std::uint64_t n) { return 1.0 / static_cast<double>(n + 1); };
  s.alpha = Modulus::ceil_inv_pow(1);
  s.gamma = Modulus::ceil_inv_pow(1);
  s.theta = ThetaFn::pow_base(4, 1);
  return s;
}

ModuliSchedule sqrt_schedule() {
  ModuliSchedule s;
  s.name = "sqrt";
  s.lambda = [](std::uint64_t n) { return 1.0 / std::sqrt(static_cast<double>(n + 1)); };
  s.alpha = Modulus::ceil_inv_pow(2);
  s.gamma = Modulus::ceil_inv_pow(2);
  s.theta = ThetaFn::poly(2, 2);
  return s;
}

ModuliSchedule constant_schedule(double value, ThetaFn theta) {
  if (!(value >= 0.0 && value <= 1.0)) throw ContractError("lambda must stay in [0,1]");
  ModuliSchedule s;
  s.name = "constant";
  s.lambda = [value](std::uint64_t) { return value; };
  s.alpha = Modulus::ceil_inv_pow(1);
  s.gamma = Modulus::ceil_inv_pow(1);
  s.theta = std::move(theta);
  return s;
}

ModuliSchedule custom_schedule(std::string name, std::function<double(std::uint64_t)> lambda,
                               Modulus alpha, Modulus gamma, ThetaFn theta) {
  ModuliSchedule s;
  s.name = std::move(name);
  s.lambda = std::move(lambda);
  s.alpha = std::move(alpha);
  s.gamma = std::move(gamma);
  s.theta = std::move(theta);
  return s;
}

double mu(const ModuliSchedule& s, std::uint64_t n, double M, const Curvature& c) {
  const double msk = M * c.sqrt_kappa();
  if (!(msk > 0.0 && msk < M_PI / 2.0))
    throw DomainError("mu requires 0 < M*sqrt(kappa) < pi/2");
  const double ln = s.lambda(n);
  if (!(ln > 0.0 && ln <= 1.0)) throw ContractError("mu requires lambda_n in (0,1]");
  return 1.0 - std::sin((1.0 - ln) * msk) / std::sin(msk);
}

BigCount theta_tilde(const ModuliSchedule& s, const BigCount& n, double M,
                     const Curvature& c, EvalContext& ctx) {
  const double msk = M * c.sqrt_kappa();
  if (!(msk > 0.0 && msk < M_PI / 2.0))
    throw DomainError("theta_tilde requires 0 < M*sqrt(kappa) < pi/2");
  if (n.is_exact() && n.value() < 1)
    throw ContractError("theta_tilde is defined on Z+");
  const BigInt cc = ceil_guarded(1.0 / std::cos(msk), ctx);
  EvalContext tmp = ctx;
  return s.theta(bc_mul(BigCount::exact(cc, tmp), n, ctx), ctx);
}

bool ModuliPrefixReport::all_passed() const {
  if (!theta_clause.passed) return false;
  for (const auto& pe : per_eps)
    if (!pe.alpha_clause.passed || !pe.gamma_clause.passed) return false;
  return true;
}

ModuliPrefixReport verify_moduli_prefix(const ModuliSchedule& s, std::uint64_t horizon,
                                        std::span<const double> eps_grid) {
  if (horizon < 2) throw ContractError("horizon too small");
  ModuliPrefixReport rep;

  for (double eps : eps_grid) {
    ModuliPrefixReport::PerEps pe;
    pe.eps = eps;

    // alpha clause: lambda_{n+1} <= eps for all n >= alpha(eps).
    const BigInt a = s.alpha(eps);
    if (a <= horizon) {
      pe.alpha_clause.checked = true;
      for (std::uint64_t n = a.convert_to<std::uint64_t>(); n <= horizon; ++n) {
        ++pe.alpha_clause.checks;
        if (s.lambda(n + 1) > eps) {
          pe.alpha_clause.passed = false;
          pe.alpha_clause.first_failure = n;
          break;
        }
      }
    }

    // gamma clause: sum_{i=gamma(eps)+1}^{gamma(eps)+n} |lambda_{i+1}-lambda_i| <= eps.
    const BigInt gm = s.gamma(eps);
    if (gm + 1 <= horizon) {
      pe.gamma_clause.checked = true;
      double tail = 0.0;
      const std::uint64_t g0 = gm.convert_to<std::uint64_t>();
      for (std::uint64_t i = g0 + 1; i + 1 <= horizon; ++i) {
        tail += std::abs(s.lambda(i + 1) - s.lambda(i));
        ++pe.gamma_clause.checks;
        if (tail > eps + 1e-12) {
          pe.gamma_clause.passed = false;
          pe.gamma_clause.first_failure = i;
          break;
        }
      }
    }
    rep.per_eps.push_back(std::move(pe));
  }

  // theta clause: sum_{k=1}^{theta(n)} lambda_{k+1} >= n for every n with
  // theta(n) <= horizon. Partial sums shared across n.
  std::vector<double> prefix(horizon + 1, 0.0);
  for (std::uint64_t k = 1; k <= horizon; ++k)
    prefix[k] = prefix[k - 1] + s.lambda(k + 1);
  for (std::uint64_t n = 1;; ++n) {
    BigInt t;
    try {
      t = s.theta.exact(BigInt(n));
    } catch (const std::exception&) {
      break;
    }
    if (t > horizon) {
      ++rep.theta_unchecked;
      // theta is nondecreasing for every built-in kind: nothing further fits.
      if (s.theta.nondecreasing() || rep.theta_unchecked > 64) break;
      continue;
    }
    rep.theta_clause.checked = true;
    ++rep.theta_clause.checks;
    if (prefix[t.convert_to<std::uint64_t>()] < static_cast<double>(n) - 1e-9) {
      rep.theta_clause.passed = false;
      rep.theta_clause.first_failure = n;
      break;
    }
  }
  return rep;
}

} // namespace catk
