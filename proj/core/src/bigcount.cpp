#include "catk/bigcount.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "catk/errors.hpp"

namespace catk {

namespace {

constexpr double kLog2OverflowGuard = 1e306;

double log2_add(double x, double y) {
  // log2(2^x + 2^y)
  if (x < y) std::swap(x, y);
  const double d = y - x;
  if (d < -60.0) return x;
  return x + std::log2(1.0 + std::exp2(d));
}

/// Approximate decimal digit count from the bit length.
std::int64_t approx_digits(const BigInt& v) {
  if (v == 0) return 1;
  const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(v)) + 1;
  return static_cast<std::int64_t>(static_cast<double>(bits) * 0.30103) + 1;
}

} // namespace

Rational rational_from(double x) {
  if (!std::isfinite(x)) throw ContractError("non-finite value in exact-rational context");
  int exp = 0;
  const double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
  const double scaled = std::ldexp(m, 53);
  BigInt mant = bigint_from_integral_double(scaled);
  const int e2 = exp - 53;
  Rational q(mant);
  if (e2 >= 0) {
    q *= Rational(BigInt(1) << e2);
  } else {
    q /= Rational(BigInt(1) << (-e2));
  }
  return q;
}

BigInt bigint_from_integral_double(double x) {
  if (!std::isfinite(x)) throw ContractError("non-finite value where integer expected");
  if (std::abs(x) < 9.007199254740992e15) return BigInt(static_cast<long long>(x));
  int exp = 0;
  const double m = std::frexp(x, &exp);
  const long long mant = static_cast<long long>(std::ldexp(m, 53));
  BigInt v(mant);
  const int e2 = exp - 53;
  if (e2 >= 0)
    v <<= e2;
  else
    v >>= -e2; // exact for integral doubles
  return v;
}

BigInt floor_rational(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt quot = n / d; // truncates toward zero
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

BigInt ceil_rational(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt quot = n / d;
  if (n > 0 && quot * d != n) ++quot;
  return quot;
}

double log2_of(const BigInt& n) {
  if (n <= 0) throw ContractError("log2 of a nonpositive integer");
  const unsigned b = boost::multiprecision::msb(n);
  if (b <= 52) return std::log2(n.convert_to<double>());
  const unsigned shift = b - 52;
  const double top = BigInt(n >> shift).convert_to<double>();
  return std::log2(top) + static_cast<double>(shift);
}

double log2_of(const Rational& q) {
  return log2_of(boost::multiprecision::numerator(q)) -
         log2_of(boost::multiprecision::denominator(q));
}

BigInt ceil_guarded(double x, EvalContext& ctx) {
  if (!std::isfinite(x)) throw ContractError("non-finite ceiling argument");
  const double c = std::ceil(x);
  const double frac = c - x; // in [0, 1)
  const double band = ctx.policy.guard_band;
  if (frac <= band || frac >= 1.0 - band) ++ctx.guard_warnings;
  return bigint_from_integral_double(c);
}

BigInt ceil_log_guarded(const Rational& q, EvalContext& ctx) {
  if (q <= 0) throw ContractError("logarithm of a nonpositive value");
  const double l = log2_of(q) * M_LN2;
  return ceil_guarded(l, ctx);
}

BigCount BigCount::exact(BigInt v, EvalContext& ctx) {
  if (v < 0) throw ContractError("BigCount cannot be negative");
  if (ctx.policy.force_estimate || approx_digits(v) > ctx.policy.digit_budget) {
    ctx.downgraded = true;
    return log2_estimate(v == 0 ? 0.0 : log2_of(v), ctx);
  }
  BigCount r;
  r.mode_ = Mode::exact;
  r.v_ = std::move(v);
  return r;
}

BigCount BigCount::log2_estimate(double l2, EvalContext& ctx) {
  ctx.downgraded = true;
  BigCount r;
  if (l2 > kLog2OverflowGuard) {
    r.mode_ = Mode::loglog_est;
    r.ll_ = std::log2(l2);
    return r;
  }
  r.mode_ = Mode::log2_est;
  r.l2_ = l2;
  return r;
}

BigCount BigCount::loglog_estimate(double ll) {
  BigCount r;
  r.mode_ = Mode::loglog_est;
  r.ll_ = ll;
  return r;
}

BigCount BigCount::tower_estimate(double ll, BigInt height) {
  BigCount r;
  r.mode_ = Mode::tower_est;
  r.ll_ = ll;
  r.height_ = std::move(height);
  return r;
}

const BigInt& BigCount::value() const {
  if (mode_ != Mode::exact) throw ContractError("value() on a non-exact BigCount");
  return v_;
}

double BigCount::log2_lower() const {
  switch (mode_) {
    case Mode::exact:
      return v_ == 0 ? -std::numeric_limits<double>::infinity() : log2_of(v_);
    case Mode::log2_est:
      return l2_ - std::abs(l2_) * 1e-9;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::string BigCount::str() const {
  std::ostringstream os;
  switch (mode_) {
    case Mode::exact:
      return v_.str();
    case Mode::log2_est:
      os << "~2^" << l2_;
      return os.str();
    case Mode::loglog_est:
      os << "~2^(2^" << ll_ << ")";
      return os.str();
    case Mode::tower_est:
      os << "~exp2 tower of height " << height_.str() << " over 2^(2^" << ll_ << ")";
      return os.str();
  }
  return {};
}

namespace {
int tier(const BigCount& x) {
  switch (x.mode()) {
    case BigCount::Mode::exact:
    case BigCount::Mode::log2_est:
      return 0;
    case BigCount::Mode::loglog_est:
      return 1;
    case BigCount::Mode::tower_est:
      return 2;
  }
  return 0;
}
} // namespace

int bc_cmp(const BigCount& a, const BigCount& b) {
  if (a.is_exact() && b.is_exact())
    return a.value() < b.value() ? -1 : (a.value() > b.value() ? 1 : 0);
  const int ta = tier(a), tb = tier(b);
  if (ta != tb) return ta < tb ? -1 : 1;
  if (ta == 2) {
    if (a.tower_height() != b.tower_height())
      return a.tower_height() < b.tower_height() ? -1 : 1;
    return a.loglogv() < b.loglogv() ? -1 : (a.loglogv() > b.loglogv() ? 1 : 0);
  }
  if (ta == 1)
    return a.loglogv() < b.loglogv() ? -1 : (a.loglogv() > b.loglogv() ? 1 : 0);
  const double ka = a.is_exact() ? a.log2_lower() : a.log2v();
  const double kb = b.is_exact() ? b.log2_lower() : b.log2v();
  return ka < kb ? -1 : (ka > kb ? 1 : 0);
}

BigCount bc_add(const BigCount& a, const BigCount& b, EvalContext& ctx) {
  if (a.is_exact() && b.is_exact()) return BigCount::exact(a.value() + b.value(), ctx);
  const BigCount& hi = bc_cmp(a, b) >= 0 ? a : b;
  const BigCount& lo = bc_cmp(a, b) >= 0 ? b : a;
  if (hi.mode() == BigCount::Mode::log2_est) {
    const double lo_l2 = lo.is_exact() ? lo.log2_lower() : lo.log2v();
    return BigCount::log2_estimate(log2_add(hi.log2v(), lo_l2), ctx);
  }
  ctx.downgraded = true;
  return hi; // loglog / tower absorb anything smaller
}

BigCount bc_sub_clamped(const BigCount& a, const BigInt& b, EvalContext& ctx) {
  if (a.is_exact()) {
    BigInt v = a.value() - b;
    if (v < 0) v = 0;
    return BigCount::exact(std::move(v), ctx);
  }
  return a; // estimates absorb small shifts
}

BigCount bc_mul(const BigCount& a, const BigCount& b, EvalContext& ctx) {
  if (a.is_exact() && b.is_exact()) return BigCount::exact(a.value() * b.value(), ctx);
  if ((a.is_exact() && a.value() == 0) || (b.is_exact() && b.value() == 0))
    return BigCount::exact(BigInt(0), ctx);
  const BigCount& hi = bc_cmp(a, b) >= 0 ? a : b;
  const BigCount& lo = bc_cmp(a, b) >= 0 ? b : a;
  if (hi.mode() == BigCount::Mode::log2_est) {
    const double lo_l2 = lo.is_exact() ? lo.log2_lower() : lo.log2v();
    return BigCount::log2_estimate(hi.log2v() + lo_l2, ctx);
  }
  if (hi.mode() == BigCount::Mode::loglog_est) {
    const double lo_l2 = lo.is_exact()                        ? lo.log2_lower()
                         : lo.mode() == BigCount::Mode::log2_est ? lo.log2v()
                                                                 : 0.0;
    if (lo.mode() == BigCount::Mode::loglog_est)
      return BigCount::loglog_estimate(log2_add(hi.loglogv(), lo.loglogv()));
    if (lo_l2 <= 0.0) return hi;
    return BigCount::loglog_estimate(log2_add(hi.loglogv(), std::log2(lo_l2)));
  }
  ctx.downgraded = true;
  return hi; // tower absorbs
}

BigCount bc_max(const BigCount& a, const BigCount& b) { return bc_cmp(a, b) >= 0 ? a : b; }

BigCount bc_ceil_mul(const Rational& q, const BigCount& a, EvalContext& ctx) {
  if (q <= 0) throw ContractError("bc_ceil_mul needs a positive factor");
  if (a.is_exact()) return BigCount::exact(ceil_rational(q * Rational(a.value())), ctx);
  const double lq = log2_of(q);
  switch (a.mode()) {
    case BigCount::Mode::log2_est:
      return BigCount::log2_estimate(a.log2v() + lq, ctx);
    case BigCount::Mode::loglog_est:
      if (lq > 0.0)
        return BigCount::loglog_estimate(log2_add(a.loglogv(), std::log2(lq)));
      return a;
    default:
      ctx.downgraded = true;
      return a;
  }
}

} // namespace catk
