#pragma once

#include "a2fg/model_flat.hpp"
#include "a2fg/ratfunc.hpp"
#include "a2fg/rational.hpp"

#include <random>

namespace gen {

using a2fg::Rational;
using a2fg::RatFunc;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long range = 9, long den = 6) {
    return Rational(integer(-range, range), integer(1, den));
  }
  Rational nonzero_rational(long range = 9, long den = 6) {
    for (;;) {
      Rational r = rational(range, den);
      if (!r.is_zero()) return r;
    }
  }
  /// Random Laurent polynomial with up to three terms, exponents in [-3,3].
  RatFunc laurent() {
    RatFunc acc;
    const long terms = integer(1, 3);
    for (long k = 0; k < terms; ++k) acc += RatFunc::monomial(integer(-3, 3), nonzero_rational(5, 3));
    return acc;
  }
  RatFunc nonzero_ratfunc() {
    for (;;) {
      RatFunc num = laurent();
      if (num.is_zero()) continue;
      if (coin()) return num;
      RatFunc den = laurent();
      if (den.is_zero()) continue;
      return num / den;
    }
  }
  a2fg::AVec<Rational> avec(long range = 6) { return {rational(range), rational(range)}; }
  a2fg::AVec<double> avec_double(double range = 5.0) {
    std::uniform_real_distribution<double> d(-range, range);
    return {d(eng), d(eng)};
  }
};

}  // namespace gen
