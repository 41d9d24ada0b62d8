#include "catk/gfunction.hpp"

#include "catk/errors.hpp"

namespace catk {

GFunction GFunction::constant(BigInt c) {
  if (c < 0) throw ContractError("g must be nonnegative");
  GFunction g;
  g.kind_ = Kind::constant;
  g.b_ = std::move(c);
  return g;
}

GFunction GFunction::affine(BigInt a, BigInt b) {
  if (a < 0 || b < 0) throw ContractError("g must be nonnegative");
  GFunction g;
  g.kind_ = Kind::affine;
  g.a_ = std::move(a);
  g.b_ = std::move(b);
  return g;
}

GFunction GFunction::table(std::vector<BigInt> values, BigInt beyond) {
  for (const auto& v : values)
    if (v < 0) throw ContractError("g must be nonnegative");
  if (beyond < 0) throw ContractError("g must be nonnegative");
  GFunction g;
  g.kind_ = Kind::table;
  g.values_ = std::move(values);
  g.b_ = std::move(beyond);
  return g;
}

BigInt GFunction::operator()(const BigInt& n) const {
  if (n < 0) throw ContractError("g is defined on N");
  switch (kind_) {
    case Kind::constant:
      return b_;
    case Kind::affine:
      return a_ * n + b_;
    case Kind::table:
      if (n < BigInt(values_.size()))
        return values_[n.convert_to<std::size_t>()];
      return b_;
  }
  return 0;
}

BigCount GFunction::eval(const BigCount& n, EvalContext& ctx) const {
  if (n.is_exact()) return BigCount::exact((*this)(n.value()), ctx);
  switch (kind_) {
    case Kind::constant:
      return BigCount::exact(b_, ctx);
    case Kind::table:
      return BigCount::exact(b_, ctx); // estimates are beyond any finite table
    case Kind::affine: {
      if (a_ == 0) return BigCount::exact(b_, ctx);
      EvalContext tmp = ctx;
      BigCount factor = BigCount::exact(a_, tmp);
      BigCount r = bc_mul(factor, n, ctx);
      return bc_add(r, BigCount(b_), ctx);
    }
  }
  return BigCount();
}

BigCount GFunction::iterate_tilde(const BigInt& k, EvalContext& ctx) const {
  if (k < 0) throw ContractError("iteration count must be nonnegative");
  switch (kind_) {
    case Kind::constant: {
      // gtilde(n) = n + c, so gtilde^k(0) = k*c.
      return BigCount::exact(k * b_, ctx);
    }
    case Kind::affine: {
      // gtilde(n) = (1+a)n + b.
      if (a_ == 0) return BigCount::exact(k * b_, ctx);
      // gtilde^k(0) = b*((1+a)^k - 1)/a; guard the size before computing.
      const double bits = static_cast<double>(k.convert_to<double>()) *
                          log2_of(BigInt(a_ + 1));
      const double digits = bits * 0.30103 + 1.0;
      if (ctx.policy.force_estimate ||
          digits > static_cast<double>(ctx.policy.digit_budget)) {
        const double l2 = k.convert_to<double>() * log2_of(BigInt(a_ + 1)) +
                          (b_ > 0 ? log2_of(b_) : 0.0) - log2_of(a_);
        return BigCount::log2_estimate(l2, ctx);
      }
      const BigInt base = a_ + 1;
      BigInt p = boost::multiprecision::pow(base, k.convert_to<unsigned>());
      return BigCount::exact(b_ * (p - 1) / a_, ctx);
    }
    case Kind::table: {
      // Step until the iterate leaves the table, then the tail is constant.
      BigInt n = 0;
      BigInt steps = 0;
      const BigInt table_len(values_.size());
      while (steps < k && n < table_len) {
        const BigInt gn = (*this)(n);
        if (gn == 0) return BigCount::exact(std::move(n), ctx); // fixed point
        n += gn;
        ++steps;
      }
      if (steps < k) {
        if (b_ == 0) return BigCount::exact(std::move(n), ctx); // fixed point
        n += (k - steps) * b_; // beyond the table g is constant
      }
      return BigCount::exact(std::move(n), ctx);
    }
  }
  return BigCount();
}

std::string GFunction::describe() const {
  switch (kind_) {
    case Kind::constant:
      return "g(n)=" + b_.str();
    case Kind::affine:
      return "g(n)=" + a_.str() + "*n+" + b_.str();
    case Kind::table: {
      std::string s = "g=table[";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ",";
        s += values_[i].str();
      }
      return s + "];" + b_.str();
    }
  }
  return {};
}

} // namespace catk
