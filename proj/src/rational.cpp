#include "a2fg/rational.hpp"

#include "a2fg/errors.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace a2fg {

Rational::Rational(long num, long den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidInput("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view s) {
  std::string t;
  for (char c : s) {
    if (c != ' ' && c != '\t') t.push_back(c);
  }
  if (t.empty()) throw InvalidInput("empty rational literal");
  if (t.front() == '+') t.erase(t.begin());
  const auto dot = t.find('.');
  if (dot != std::string::npos) {
    // Finite decimal: shift the point out.
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    const std::size_t frac = t.size() - dot - 1;
    if (digits.empty() || digits == "-") throw InvalidInput("bad decimal literal: " + t);
    mpz_class n;
    if (n.set_str(digits, 10) != 0) throw InvalidInput("bad decimal literal: " + t);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac);
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw InvalidInput("bad rational literal: " + t);
  if (q.get_den() == 0) throw InvalidInput("rational with zero denominator: " + t);
  q.canonicalize();
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_.get_str(); }

double log_abs_double(const Rational& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.raw().get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.raw().get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace a2fg
