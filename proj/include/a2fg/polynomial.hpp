#pragma once

#include "a2fg/rational.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace a2fg {

/// Dense univariate polynomial over Q in the variable t, coefficients stored
/// from degree 0 upwards. Always trimmed: the zero polynomial has no
/// coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(implicit)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(implicit)
  explicit Poly(std::vector<Rational> coeffs);

  static Poly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == Rational(1); }
  bool is_constant() const { return c_.size() <= 1; }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  /// t-adic order: index of the lowest nonzero coefficient. Requires nonzero.
  long order() const;
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic gcd (zero only if both inputs are zero).
  static Poly gcd(Poly a, Poly b);
  /// Exact division; throws if b does not divide a.
  static Poly exact_div(const Poly& a, const Poly& b);

  Poly monic() const;
  /// Divides out t^k (k <= order()).
  Poly shift_down(std::size_t k) const;
  Poly shift_up(std::size_t k) const;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace a2fg
