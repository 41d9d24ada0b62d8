#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "catk/bigcount.hpp"
#include "catk/geometry.hpp"

namespace catk {

/// Closed-form modulus epsilon -> positive integer, usable on exact rationals
/// (the metastability tower feeds it reciprocals of astronomically large
/// indices, so a plain double interface would not do).
class Modulus {
public:
  enum class Kind { ceil_inv_pow, constant };

  /// eps -> ceil(scale / eps^power).
  static Modulus ceil_inv_pow(int power, double scale = 1.0);
  static Modulus constant(BigInt v);

  BigInt operator()(const Rational& eps) const;
  BigInt operator()(double eps) const { return (*this)(rational_from(eps)); }

  /// All supported kinds are nonincreasing in eps.
  bool nonincreasing() const { return true; }
  Kind kind() const { return kind_; }
  int power() const { return power_; }
  const Rational& scale() const { return scale_; }
  std::string describe() const;

private:
  Kind kind_ = Kind::constant;
  int power_ = 1;
  Rational scale_ = 1;
  BigInt value_ = 1;
};

/// Rate-of-divergence function theta: Z+ -> Z+, evaluated in counter arithmetic.
class ThetaFn {
public:
  enum class Kind { pow_base, identity, linear, poly };

  /// n -> base^(n+shift); exp((n+1) ln 4) is pow_base(4, 1).
  static ThetaFn pow_base(unsigned base, unsigned shift);
  static ThetaFn identity();
  /// n -> a*n + b.
  static ThetaFn linear(BigInt a, BigInt b);
  /// n -> (n+shift)^exponent.
  static ThetaFn poly(unsigned exponent, unsigned shift);

  BigCount operator()(const BigCount& n, EvalContext& ctx) const;
  /// Exact evaluation or throw; for tests and small arguments.
  BigInt exact(const BigInt& n) const;

  bool nondecreasing() const { return monotone_; }
  Kind kind() const { return kind_; }
  std::string describe() const;

private:
  Kind kind_ = Kind::identity;
  unsigned base_ = 4, shift_ = 1, exponent_ = 1;
  BigInt a_ = 1, b_ = 0;
  bool monotone_ = true;
};

/// The sequence (lambda_n), n >= 1, with its quantitative moduli:
///   - alpha: rate of convergence of lambda_{n+1} -> 0,
///   - gamma: Cauchy modulus of sum |lambda_{n+1} - lambda_n|,
///   - theta: rate of divergence of sum lambda_{n+1}.
struct ModuliSchedule {
  std::string name;
  std::function<double(std::uint64_t)> lambda;
  Modulus alpha, gamma;
  ThetaFn theta;
};

/// lambda_n = 1/(n+1); alpha(eps) = gamma(eps) = ceil(1/eps), theta(n) = 4^(n+1).
ModuliSchedule harmonic_schedule();
/// lambda_n = 1/sqrt(n+1); alpha(eps) = gamma(eps) = ceil(1/eps^2), theta(n) = (n+2)^2.
ModuliSchedule sqrt_schedule();
/// Adversarial fixture lambda_n = value with nominal moduli; used to exercise
/// failing clauses of the prefix validator.
ModuliSchedule constant_schedule(double value, ThetaFn theta);
/// Fully custom schedule.
ModuliSchedule custom_schedule(std::string name, std::function<double(std::uint64_t)> lambda,
                               Modulus alpha, Modulus gamma, ThetaFn theta);

/// mu_n = 1 - sin((1-lambda_n) M sqrt(kappa)) / sin(M sqrt(kappa)).
/// Requires 0 < M sqrt(kappa) < pi/2 and lambda_n in (0, 1].
double mu(const ModuliSchedule& s, std::uint64_t n, double M, const Curvature& c);

/// Rate of divergence for sum mu_{n+1}: theta(ceil(1/cos(M sqrt(kappa))) * n).
BigCount theta_tilde(const ModuliSchedule& s, const BigCount& n, double M,
                     const Curvature& c, EvalContext& ctx);

struct ClauseReport {
  bool checked = false;
  bool passed = true;
  std::uint64_t checks = 0;
  std::uint64_t first_failure = 0;
};

struct ModuliPrefixReport {
  struct PerEps {
    double eps = 0.0;
    ClauseReport alpha_clause, gamma_clause;
  };
  std::vector<PerEps> per_eps;
  ClauseReport theta_clause;
  std::uint64_t theta_unchecked = 0; ///< n skipped because theta(n) > horizon

  bool all_passed() const;
};

/// Finite-prefix validation of condition (*): the alpha-clause and gamma-clause
/// for each epsilon on the grid, the theta-clause for every n with
/// theta(n) <= horizon.
ModuliPrefixReport verify_moduli_prefix(const ModuliSchedule& s, std::uint64_t horizon,
                                        std::span<const double> eps_grid);

} // namespace catk
