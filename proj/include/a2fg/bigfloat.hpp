#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace a2fg {

/// Real big float with runtime precision (MPFR).
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

constexpr unsigned kDefaultPrecisionBits = 512;

/// Sets the default MPFR precision (in bits) for newly created BigFloats on
/// this thread, restoring the previous value on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned bits_to_digits10(unsigned bits);

BigFloat parse_bigfloat(std::string_view s);

/// Complex big float. Only what the field interface needs.
struct BigComplex {
  BigFloat re{0};
  BigFloat im{0};

  BigComplex() = default;
  BigComplex(long r) : re(r), im(0) {}  // NOLINT(implicit)
  BigComplex(BigFloat r, BigFloat i = BigFloat(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o) {
    BigFloat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re, -a.im); }
  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }

  bool is_zero() const { return re == 0 && im == 0; }
  BigFloat modulus() const;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

}  // namespace a2fg
