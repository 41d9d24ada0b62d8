#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace catk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational of a finite double.
Rational rational_from(double x);
/// Exact integer value of a double with integral value (any magnitude).
BigInt bigint_from_integral_double(double x);

BigInt ceil_rational(const Rational& q);
BigInt floor_rational(const Rational& q);

/// log2 of a positive big integer / rational, accurate to ~1e-13 relative.
double log2_of(const BigInt& n);
double log2_of(const Rational& q);

struct EvalPolicy {
  /// Approximate decimal-digit cap for exact values; beyond it evaluation
  /// degrades to a flagged log estimate.
  std::int64_t digit_budget = 1'000'000;
  bool force_estimate = false;
  /// Cap on direct enumeration of range maxima for non-monotone theta.
  std::uint64_t enumeration_budget = 1u << 20;
  /// Explicit iteration steps before growth extrapolation takes over.
  std::uint64_t iteration_budget = 20'000;
  /// Ceilings of transcendental expressions landing this close to an integer
  /// are flagged in the context.
  double guard_band = 1e-12;
};

struct EvalContext {
  EvalPolicy policy;
  std::uint64_t guard_warnings = 0;
  bool downgraded = false;
  bool extrapolated = false;
};

/// ceil(x) for a transcendental-valued double, flagging near-integer landings.
BigInt ceil_guarded(double x, EvalContext& ctx);
/// ceil(ln q) for rational q > 0, evaluated through log2 with guard flagging.
BigInt ceil_log_guarded(const Rational& q, EvalContext& ctx);

/// Nonnegative counter for rate-functional values. Exact arbitrary-precision
/// integer while within the digit budget; beyond that a flagged magnitude
/// estimate: log2, then log2(log2), then an iterated-exponential tower
/// (`height` further exponentiations on top of the log2(log2) base).
class BigCount {
public:
  enum class Mode { exact, log2_est, loglog_est, tower_est };

  BigCount() : v_(0) {}
  BigCount(std::uint64_t v) : v_(v) {}
  BigCount(const BigInt& v) : v_(v) {}

  static BigCount exact(BigInt v, EvalContext& ctx);
  static BigCount log2_estimate(double l2, EvalContext& ctx);
  static BigCount loglog_estimate(double ll);
  static BigCount tower_estimate(double ll, BigInt height);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }
  bool is_estimate() const { return mode_ != Mode::exact; }
  const BigInt& value() const;
  double log2v() const { return l2_; }
  double loglogv() const { return ll_; }
  const BigInt& tower_height() const { return height_; }

  /// Conservative lower bound on log2 of the magnitude (inf for loglog/tower).
  double log2_lower() const;

  std::string str() const;

private:
  Mode mode_ = Mode::exact;
  BigInt v_;
  double l2_ = 0.0;
  double ll_ = 0.0;
  BigInt height_ = 0;
};

/// Magnitude comparison; exact-exact is exact, estimates compare by their
/// logarithmic keys. Returns -1, 0, +1.
int bc_cmp(const BigCount& a, const BigCount& b);

BigCount bc_add(const BigCount& a, const BigCount& b, EvalContext& ctx);
/// a - b for small exact b, clamped at zero; estimates absorb the subtraction.
BigCount bc_sub_clamped(const BigCount& a, const BigInt& b, EvalContext& ctx);
BigCount bc_mul(const BigCount& a, const BigCount& b, EvalContext& ctx);
BigCount bc_max(const BigCount& a, const BigCount& b);

/// ceil(q * a) for rational q > 0 (used for ratios like M*sqrt(kappa)/Delta*).
BigCount bc_ceil_mul(const Rational& q, const BigCount& a, EvalContext& ctx);

} // namespace catk
