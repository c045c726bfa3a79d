#pragma once

#include "a2fg/polynomial.hpp"
#include "a2fg/rational.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace a2fg {

/// Element of Q(t) in lowest terms: numerator / monic denominator, coprime.
/// Valued by the t-adic valuation with |t| = e^{-1}, so log|x| = -ord_t(x).
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(long c) : num_(c) {}  // NOLINT(implicit)
  RatFunc(const Rational& c) : num_(c) {}  // NOLINT(implicit)
  RatFunc(Poly num) : num_(std::move(num)) {}  // NOLINT(implicit)
  RatFunc(Poly num, Poly den);

  /// unit * t^{-log_abs}, i.e. the element with log|x| = log_abs.
  static RatFunc monomial(long log_abs, const Rational& unit);
  static RatFunc t() { return RatFunc(Poly::monomial(Rational(1), 1)); }

  /// Parses Laurent expressions like "2*t^-3 + 1/2*t - 5" or "t^-1+1".
  static RatFunc parse(std::string_view s);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// t-adic valuation ord(num) - ord(den). Requires nonzero.
  long valuation() const;
  /// Coefficient of the lowest-order term of the Laurent expansion at t = 0.
  Rational leading_unit() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string str() const;

 private:
  void normalize();
  Poly num_;
  Poly den_{1};
};

std::ostream& operator<<(std::ostream& os, const RatFunc& x);

}  // namespace a2fg
