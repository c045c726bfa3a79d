#include "a2fg/bigfloat.hpp"

#include "a2fg/errors.hpp"

#include <cmath>
#include <ostream>

namespace a2fg {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(BigFloat::default_precision()) {
  if (bits < 16) throw InvalidInput("precision must be at least 16 bits");
  BigFloat::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

BigFloat parse_bigfloat(std::string_view s) {
  try {
    return BigFloat(std::string(s));
  } catch (const std::exception&) {
    throw InvalidInput("bad float literal: " + std::string(s));
  }
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  const BigFloat d = o.re * o.re + o.im * o.im;
  if (d == 0) throw InvalidInput("division by zero complex");
  BigFloat r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

BigFloat BigComplex::modulus() const { return boost::multiprecision::hypot(re, im); }

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << '(' << z.re << ',' << z.im << ')';
}

}  // namespace a2fg
