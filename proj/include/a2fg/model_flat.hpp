#pragma once

#include "a2fg/rational.hpp"

#include <array>
#include <cmath>
#include <iosfwd>
#include <optional>
#include <ostream>
#include <vector>

namespace a2fg {

/// Scalar policy for the model flat: exact rationals or doubles.
template <class T>
struct FlatScalar;

template <>
struct FlatScalar<Rational> {
  static bool nonneg(const Rational& x) { return x.sign() >= 0; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool positive(const Rational& x) { return x.sign() > 0; }
  static double to_double(const Rational& x) { return x.to_double(); }
};

/// Wall tolerance for floating-point chamber membership.
inline constexpr double kWallTol = 1e-12;

template <>
struct FlatScalar<double> {
  static bool nonneg(double x) { return x >= -kWallTol; }
  static bool is_zero(double x) { return std::abs(x) <= kWallTol; }
  static bool positive(double x) { return x > kWallTol; }
  static double to_double(double x) { return x; }
};

/// Vector of the model flat A in simple-root coordinates a = alpha_1(v),
/// b = alpha_2(v). Triple coordinates v = ((2a+b)/3, (b-a)/3, -(a+2b)/3).
template <class T>
struct AVec {
  T a{0};
  T b{0};

  AVec() = default;
  AVec(T a_, T b_) : a(std::move(a_)), b(std::move(b_)) {}

  static AVec from_triple(const T& v1, const T& v2, const T& v3) {
    (void)v3;
    return AVec(v1 - v2, v2 - v3);
  }
  std::array<T, 3> triple() const {
    return {(T(2) * a + b) / T(3), (b - a) / T(3), -(a + T(2) * b) / T(3)};
  }
  /// v_i - v_j, exact in root coordinates.
  T diff(int i, int j) const {
    if (i == j) return T(0);
    if (i > j) return -diff(j, i);
    if (i == 0 && j == 1) return a;
    if (i == 1 && j == 2) return b;
    return a + b;
  }
  /// alpha_3 = -alpha_1 - alpha_2.
  T alpha3() const { return -(a + b); }

  AVec& operator+=(const AVec& o) { a = a + o.a; b = b + o.b; return *this; }
  AVec& operator-=(const AVec& o) { a = a - o.a; b = b - o.b; return *this; }
  friend AVec operator+(AVec x, const AVec& y) { return x += y; }
  friend AVec operator-(AVec x, const AVec& y) { return x -= y; }
  friend AVec operator-(const AVec& x) { return AVec(-x.a, -x.b); }
  friend AVec operator*(const T& s, const AVec& x) { return AVec(s * x.a, s * x.b); }
  friend bool operator==(const AVec& x, const AVec& y) { return x.a == y.a && x.b == y.b; }

  bool is_zero() const { return FlatScalar<T>::is_zero(a) && FlatScalar<T>::is_zero(b); }
  /// Membership in the closed fundamental chamber (a >= 0, b >= 0).
  bool in_closed_chamber() const { return FlatScalar<T>::nonneg(a) && FlatScalar<T>::nonneg(b); }
};

template <class T>
std::ostream& operator<<(std::ostream& os, const AVec<T>& v) {
  return os << '(' << v.a << ", " << v.b << ')';
}

inline AVec<double> to_double(const AVec<Rational>& v) { return {v.a.to_double(), v.b.to_double()}; }
inline AVec<double> to_double(const AVec<double>& v) { return v; }

/// Element of the Weyl group S_3 acting on triple coordinates by
/// (w.v)[p[i]] = v[i].
class WeylElem {
 public:
  WeylElem() = default;
  explicit WeylElem(std::array<int, 3> p);

  static WeylElem identity() { return {}; }
  /// Longest element: (v1,v2,v3) -> (v3,v2,v1), i.e. (a,b) -> (-b,-a).
  static WeylElem longest() { return WeylElem({2, 1, 0}); }
  /// All six elements, identity first.
  static const std::array<WeylElem, 6>& all();

  const std::array<int, 3>& perm() const { return p_; }
  /// Integer matrix of the action in root coordinates (row-major).
  const std::array<int, 4>& root_matrix() const { return m_; }

  WeylElem operator*(const WeylElem& o) const;
  WeylElem inverse() const;
  bool operator==(const WeylElem& o) const { return p_ == o.p_; }
  bool is_identity() const { return p_ == std::array<int, 3>{0, 1, 2}; }

  template <class T>
  AVec<T> apply(const AVec<T>& v) const {
    return AVec<T>(T(m_[0]) * v.a + T(m_[1]) * v.b, T(m_[2]) * v.a + T(m_[3]) * v.b);
  }

 private:
  std::array<int, 3> p_{0, 1, 2};
  std::array<int, 4> m_{1, 0, 0, 1};
};

std::ostream& operator<<(std::ostream& os, const WeylElem& w);

/// x -> w.x + t.
template <class T>
struct AffineWMap {
  WeylElem linear;
  AVec<T> translate;

  static AffineWMap identity() { return {}; }
  AVec<T> operator()(const AVec<T>& x) const { return linear.apply(x) + translate; }
  AffineWMap operator*(const AffineWMap& o) const {
    return {linear * o.linear, linear.apply(o.translate) + translate};
  }
  AffineWMap inverse() const {
    const WeylElem li = linear.inverse();
    return {li, -li.apply(translate)};
  }
  bool operator==(const AffineWMap& o) const { return linear == o.linear && translate == o.translate; }
};

enum class DirectionType { zero, regular, singular_p, singular_d };

const char* to_string(DirectionType t);

/// Representative of the W-orbit of v in the closed chamber (descending sort
/// of the triple coordinates). Exact for rationals, no division involved.
template <class T>
AVec<T> cabs(const AVec<T>& v) {
  std::array<int, 3> idx{0, 1, 2};
  auto greater = [&](int i, int j) { return FlatScalar<T>::positive(v.diff(i, j)); };
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k + 1 < 3; ++k) {
      if (greater(idx[k + 1], idx[k])) std::swap(idx[k], idx[k + 1]);
    }
  }
  return AVec<T>(v.diff(idx[0], idx[1]), v.diff(idx[1], idx[2]));
}

/// Opposition involution v -> (-v3,-v2,-v1), i.e. (a,b) -> (b,a).
template <class T>
AVec<T> opp(const AVec<T>& v) {
  return AVec<T>(v.b, v.a);
}

template <class T>
DirectionType direction_type(const AVec<T>& v) {
  const AVec<T> c = cabs(v);
  const bool za = FlatScalar<T>::is_zero(c.a);
  const bool zb = FlatScalar<T>::is_zero(c.b);
  if (za && zb) return DirectionType::zero;
  if (zb) return DirectionType::singular_p;
  if (za) return DirectionType::singular_d;
  return DirectionType::regular;
}

/// Euclidean norm normalized so that simple roots have unit norm:
/// sqrt((4/3)(a^2 + ab + b^2)).
template <class T>
double norm_euc(const AVec<T>& v) {
  const double a = FlatScalar<T>::to_double(v.a);
  const double b = FlatScalar<T>::to_double(v.b);
  return std::sqrt((4.0 / 3.0) * (a * a + a * b + b * b));
}

/// Hexagonal norm max_i v_i - min_i v_i (= a+b on the closed chamber).
template <class T>
T norm_hex(const AVec<T>& v) {
  const AVec<T> c = cabs(v);
  return c.a + c.b;
}

/// C-distance Cd(x,y) = cabs(y - x).
template <class T>
AVec<T> c_distance_flat(const AVec<T>& x, const AVec<T>& y) {
  return cabs(y - x);
}

/// A w in W with every consecutive difference of the path in w(C-bar), or
/// nullopt when no single closed chamber contains all of them.
template <class T>
std::optional<WeylElem> is_c_geodesic_in_A(const std::vector<AVec<T>>& path) {
  for (const WeylElem& w : WeylElem::all()) {
    const WeylElem wi = w.inverse();
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < path.size(); ++i) {
      ok = wi.apply(path[i + 1] - path[i]).in_closed_chamber();
    }
    if (ok) return w;
  }
  return std::nullopt;
}

/// True iff x-y and z-y lie in opposite closed chambers.
template <class T>
bool three_point_local_criterion(const AVec<T>& x, const AVec<T>& y, const AVec<T>& z) {
  const AVec<T> u = x - y;
  const AVec<T> v = z - y;
  for (const WeylElem& w : WeylElem::all()) {
    const WeylElem wi = w.inverse();
    if ((-wi.apply(u)).in_closed_chamber() && wi.apply(v).in_closed_chamber()) return true;
  }
  return false;
}

}  // namespace a2fg
