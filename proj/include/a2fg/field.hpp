#pragma once

#include "a2fg/bigfloat.hpp"
#include "a2fg/rational.hpp"
#include "a2fg/ratfunc.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace a2fg {

/// Per-backend capabilities used by the generic geometry code.
///   exact        equality is decidable
///   ultrametric  |x+y| <= max(|x|,|y|)
///   log_abs      natural log of |x|; -inf (or nullopt) for zero
///   dominates    |a| > |b|, used for pivoting and normalization
template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static constexpr bool ultrametric = false;
  using Log = double;
  using Tol = double;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational from_rational(const Rational& q) { return q; }
  static Log log_abs(const Rational& x) { return log_abs_double(x); }
  static bool dominates(const Rational& a, const Rational& b) { return !a.is_zero() && b.is_zero(); }
  static bool close(const Rational& a, const Rational& b, double) { return a == b; }
};

template <>
struct Field<RatFunc> {
  static constexpr bool exact = true;
  static constexpr bool ultrametric = true;
  /// Exact log|x| = -val(x); nullopt stands for -inf.
  using Log = std::optional<Rational>;
  using Tol = double;
  static bool is_zero(const RatFunc& x) { return x.is_zero(); }
  static RatFunc from_rational(const Rational& q) { return RatFunc(q); }
  static Log log_abs(const RatFunc& x) {
    if (x.is_zero()) return std::nullopt;
    return Rational(-x.valuation());
  }
  static bool dominates(const RatFunc& a, const RatFunc& b) { return !a.is_zero() && b.is_zero(); }
  static bool close(const RatFunc& a, const RatFunc& b, double) { return a == b; }
};

template <>
struct Field<BigFloat> {
  static constexpr bool exact = false;
  static constexpr bool ultrametric = false;
  using Log = BigFloat;
  /// Big-float tolerances go far below the double range.
  using Tol = BigFloat;
  static bool is_zero(const BigFloat& x) { return x == 0; }
  static BigFloat from_rational(const Rational& q) {
    return BigFloat(q.num().get_str()) / BigFloat(q.den().get_str());
  }
  static Log log_abs(const BigFloat& x) {
    if (x == 0) return -std::numeric_limits<BigFloat>::infinity();
    return log(abs(x));
  }
  static bool dominates(const BigFloat& a, const BigFloat& b) { return abs(a) > abs(b); }
  static bool close(const BigFloat& a, const BigFloat& b, const Tol& tol) {
    const BigFloat scale = std::max(BigFloat(1), std::max(abs(a), abs(b)));
    return abs(a - b) <= tol * scale;
  }
};

template <>
struct Field<BigComplex> {
  static constexpr bool exact = false;
  static constexpr bool ultrametric = false;
  using Log = BigFloat;
  using Tol = BigFloat;
  static bool is_zero(const BigComplex& x) { return x.is_zero(); }
  static BigComplex from_rational(const Rational& q) { return BigComplex(Field<BigFloat>::from_rational(q)); }
  static Log log_abs(const BigComplex& x) {
    if (x.is_zero()) return -std::numeric_limits<BigFloat>::infinity();
    return log(x.modulus());
  }
  static bool dominates(const BigComplex& a, const BigComplex& b) { return a.modulus() > b.modulus(); }
  static bool close(const BigComplex& a, const BigComplex& b, const Tol& tol) {
    const BigFloat scale = std::max(BigFloat(1), std::max(a.modulus(), b.modulus()));
    return (a - b).modulus() <= tol * scale;
  }
};

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static constexpr bool ultrametric = false;
  using Log = double;
  using Tol = double;
  static bool is_zero(double x) { return x == 0.0; }
  static double from_rational(const Rational& q) { return q.to_double(); }
  static Log log_abs(double x) { return std::log(std::abs(x)); }
  static bool dominates(double a, double b) { return std::abs(a) > std::abs(b); }
  static bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  }
};

template <class T>
bool is_zero(const T& x) {
  return Field<T>::is_zero(x);
}

template <class T>
typename Field<T>::Log log_abs(const T& x) {
  return Field<T>::log_abs(x);
}

/// Logs of the absolute values of the roots of sum_i c_i x^i over Q(t),
/// read from the lower convex hull of {(i, val c_i)}: a hull edge of slope
/// sigma and width w contributes w roots of log-modulus sigma. Returned in
/// ascending order. The leading and constant coefficients must be nonzero.
std::vector<Rational> newton_polygon_root_logs(const std::vector<RatFunc>& coeffs);

}  // namespace a2fg
