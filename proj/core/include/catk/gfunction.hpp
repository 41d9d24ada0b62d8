#pragma once

#include <string>
#include <vector>

#include "catk/bigcount.hpp"

namespace catk {

/// Counterexample function g: N -> N with a finite representation.
class GFunction {
public:
  enum class Kind { constant, affine, table };

  static GFunction constant(BigInt c);
  /// g(n) = a*n + b with nonnegative integer coefficients.
  static GFunction affine(BigInt a, BigInt b);
  /// Explicit values for n = 0..values.size()-1, `beyond` afterwards.
  static GFunction table(std::vector<BigInt> values, BigInt beyond);

  BigInt operator()(const BigInt& n) const;
  BigCount eval(const BigCount& n, EvalContext& ctx) const;

  /// gtilde(n) = n + g(n) iterated k times from 0; closed forms for the
  /// constant and affine kinds, bounded stepping for tables.
  BigCount iterate_tilde(const BigInt& k, EvalContext& ctx) const;

  Kind kind() const { return kind_; }
  std::string describe() const;

private:
  Kind kind_ = Kind::constant;
  BigInt a_ = 0, b_ = 0;
  std::vector<BigInt> values_;
};

} // namespace catk
