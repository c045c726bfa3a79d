#include "a2fg/polynomial.hpp"

#include "a2fg/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace a2fg {

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  Poly p;
  if (c.is_zero()) return p;
  p.c_.assign(degree + 1, Rational(0));
  p.c_[degree] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long Poly::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<long>(i);
  }
  throw InvalidInput("order of the zero polynomial");
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1, Rational(0));
  const Rational inv_lead = Rational(1) / b.lead();
  for (long k = static_cast<long>(quo.size()) - 1; k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k) + b.c_.size() - 1] * inv_lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= q * b.c_[j];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  r *= Rational(1) / lead();
  return r;
}

Poly Poly::gcd(Poly a, Poly b) {
  // Pull out common powers of t first; most values in this project are
  // Laurent monomials times small polynomials.
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const long k = std::min(a.order(), b.order());
  a = a.shift_down(static_cast<std::size_t>(a.order()));
  b = b.shift_down(static_cast<std::size_t>(b.order()));
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic().shift_up(static_cast<std::size_t>(k));
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ConsistencyError("inexact polynomial division");
  return q;
}

Poly Poly::shift_down(std::size_t k) const {
  if (is_zero()) return *this;
  if (static_cast<long>(k) > order()) throw InvalidInput("shift_down below order");
  return Poly(std::vector<Rational>(c_.begin() + static_cast<long>(k), c_.end()));
}

Poly Poly::shift_up(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Rational> r(k, Rational(0));
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(std::move(r));
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    Rational c = c_[i];
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c.sign() < 0 && i > 0 && c == Rational(-1)) {
      os << '-';
      c = Rational(1);
    }
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != Rational(1)) os << c << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace a2fg
