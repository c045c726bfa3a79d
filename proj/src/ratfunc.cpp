#include "a2fg/ratfunc.hpp"

#include "a2fg/errors.hpp"

#include <cctype>
#include <ostream>

namespace a2fg {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= Rational(1) / den_.lead();
      den_ = Poly(1);
    }
    return;
  }
  const Poly g = Poly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = Poly::exact_div(num_, g);
    den_ = Poly::exact_div(den_, g);
  }
  const Rational l = den_.lead();
  if (l != Rational(1)) {
    const Rational inv = Rational(1) / l;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::monomial(long log_abs, const Rational& unit) {
  if (unit.is_zero()) throw InvalidInput("monomial with zero unit");
  if (log_abs <= 0) return RatFunc(Poly::monomial(unit, static_cast<std::size_t>(-log_abs)));
  RatFunc r;
  r.num_ = Poly(unit);
  r.den_ = Poly::monomial(Rational(1), static_cast<std::size_t>(log_abs));
  return r;
}

long RatFunc::valuation() const {
  if (is_zero()) throw InvalidInput("valuation of zero");
  return num_.order() - den_.order();
}

Rational RatFunc::leading_unit() const {
  if (is_zero()) throw InvalidInput("leading unit of zero");
  return num_.coeff(static_cast<std::size_t>(num_.order())) /
         den_.coeff(static_cast<std::size_t>(den_.order()));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw InvalidInput("division by zero in Q(t)");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

namespace {

// Parses one term "c", "c*t", "c*t^k", "t^k", "-t" (sign handled by caller).
RatFunc parse_term(const std::string& term) {
  if (term.empty()) throw InvalidInput("empty term in Q(t) literal");
  const auto tpos = term.find('t');
  if (tpos == std::string::npos) return RatFunc(Rational::parse(term));
  std::string coeff = term.substr(0, tpos);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  const Rational c = coeff.empty() ? Rational(1) : Rational::parse(coeff);
  long k = 1;
  const std::string rest = term.substr(tpos + 1);
  if (!rest.empty()) {
    if (rest[0] != '^') throw InvalidInput("bad Q(t) term: " + term);
    try {
      std::size_t used = 0;
      k = std::stol(rest.substr(1), &used);
      if (used != rest.size() - 1) throw InvalidInput("bad exponent in Q(t) term: " + term);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad exponent in Q(t) term: " + term);
    }
  }
  return RatFunc::monomial(-k, c);
}

}  // namespace

RatFunc RatFunc::parse(std::string_view s) {
  std::string t;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw InvalidInput("empty Q(t) literal");
  RatFunc acc;
  std::string cur;
  int sign = 1;
  auto flush = [&]() {
    if (cur.empty()) return;
    RatFunc v = parse_term(cur);
    acc += sign > 0 ? v : -v;
    cur.clear();
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    const bool after_exp = i > 0 && t[i - 1] == '^';
    if ((c == '+' || c == '-') && !after_exp) {
      if (cur.empty() && i == 0) {
        sign = c == '-' ? -1 : 1;
        continue;
      }
      if (cur.empty()) throw InvalidInput("bad Q(t) literal: " + t);
      flush();
      sign = c == '-' ? -1 : 1;
      continue;
    }
    cur.push_back(c);
  }
  flush();
  return acc;
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& x) { return os << x.str(); }

}  // namespace a2fg
