#pragma once

#include "a2fg/errors.hpp"
#include "a2fg/field.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>

namespace a2fg {

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
Vec3<T> cross(const Vec3<T>& u, const Vec3<T>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

template <class T>
T dot(const Vec3<T>& u, const Vec3<T>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

template <class T>
bool is_null(const Vec3<T>& v) {
  return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]);
}

template <class T>
Vec3<T> scale(const T& s, const Vec3<T>& v) {
  return {s * v[0], s * v[1], s * v[2]};
}

template <class T>
Vec3<T> add(const Vec3<T>& u, const Vec3<T>& v) {
  return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

/// Tolerance used by the re-verification of constructions.
template <class T>
typename Field<T>::Tol verify_tolerance() {
  if constexpr (Field<T>::exact) {
    return 0.0;
  } else if constexpr (std::is_same_v<T, double>) {
    return 1e-9;
  } else {
    const long digits = static_cast<long>(BigFloat::default_precision());
    return pow(BigFloat(10), -digits / 4);
  }
}

/// Absolute tolerance for incidence of normalized points and lines. Much
/// tighter than verify_tolerance: genuinely tiny incidences (e^-200) occur
/// in degeneration sweeps and must not be mistaken for zero.
template <class T>
typename Field<T>::Tol incidence_tolerance() {
  if constexpr (Field<T>::exact) {
    return 0.0;
  } else if constexpr (std::is_same_v<T, double>) {
    return 1e-12;
  } else {
    const long digits = static_cast<long>(BigFloat::default_precision());
    return pow(BigFloat(10), -(3 * digits) / 4);
  }
}

/// Index of the coordinate used as normalization pivot: first nonzero for
/// exact fields, largest modulus otherwise.
template <class T>
int pivot_index(const Vec3<T>& v) {
  int best = -1;
  for (int i = 0; i < 3; ++i) {
    if (is_zero(v[i])) continue;
    if (best < 0) {
      best = i;
      if constexpr (Field<T>::exact) break;
    } else if (Field<T>::dominates(v[i], v[best])) {
      best = i;
    }
  }
  return best;
}

template <class T>
Vec3<T> normalized(const Vec3<T>& v) {
  const int k = pivot_index(v);
  if (k < 0) throw InvalidInput("zero homogeneous vector");
  const T inv = T(1) / v[k];
  Vec3<T> out = scale(inv, v);
  out[k] = T(1);
  return out;
}

/// Proportionality of homogeneous vectors (exact or to tolerance).
template <class T>
bool proportional(const Vec3<T>& u, const Vec3<T>& v, typename Field<T>::Tol tol = -1) {
  if constexpr (Field<T>::exact) {
    return is_null(cross(u, v));
  } else {
    if (tol < 0) tol = verify_tolerance<T>();
    const Vec3<T> a = normalized(u);
    const Vec3<T> b = normalized(v);
    const Vec3<T> bm = scale(T(-1), b);
    for (int i = 0; i < 3; ++i) {
      if (!Field<T>::close(a[i], b[i], tol) && !Field<T>::close(a[i], bm[i], tol)) return false;
    }
    // Sign must be consistent across coordinates.
    bool plus = true;
    bool minus = true;
    for (int i = 0; i < 3; ++i) {
      plus = plus && Field<T>::close(a[i], b[i], tol);
      minus = minus && Field<T>::close(a[i], bm[i], tol);
    }
    return plus || minus;
  }
}

/// Point of P^2(K) in homogeneous coordinates.
template <class T>
struct PPoint {
  Vec3<T> c;
  PPoint() = default;
  explicit PPoint(Vec3<T> v) : c(normalized(v)) {}
  PPoint(T x, T y, T z) : PPoint(Vec3<T>{std::move(x), std::move(y), std::move(z)}) {}
  bool operator==(const PPoint& o) const { return proportional(c, o.c); }
};

/// Line of P^2(K), coordinates of the dual plane.
template <class T>
struct PLine {
  Vec3<T> c;
  PLine() = default;
  explicit PLine(Vec3<T> v) : c(normalized(v)) {}
  PLine(T x, T y, T z) : PLine(Vec3<T>{std::move(x), std::move(y), std::move(z)}) {}
  bool operator==(const PLine& o) const { return proportional(c, o.c); }
};

template <class T>
T incidence(const PPoint<T>& p, const PLine<T>& d) {
  return dot(p.c, d.c);
}

template <class T>
bool on(const PPoint<T>& p, const PLine<T>& d) {
  if constexpr (Field<T>::exact) {
    return is_zero(incidence(p, d));
  } else {
    return Field<T>::close(incidence(p, d), T(0), incidence_tolerance<T>());
  }
}

template <class T>
PLine<T> join(const PPoint<T>& p, const PPoint<T>& q) {
  const Vec3<T> v = cross(p.c, q.c);
  if (is_null(v)) throw InvalidInput("join of equal points");
  return PLine<T>(v);
}

template <class T>
PPoint<T> meet(const PLine<T>& d, const PLine<T>& e) {
  const Vec3<T> v = cross(d.c, e.c);
  if (is_null(v)) throw InvalidInput("meet of equal lines");
  return PPoint<T>(v);
}

template <class T>
struct Flag {
  PPoint<T> p;
  PLine<T> D;
  Flag() = default;
  Flag(PPoint<T> p_, PLine<T> D_) : p(std::move(p_)), D(std::move(D_)) {
    if (!on(p, D)) throw InvalidInput("flag point not on flag line");
  }
};

/// Value in K or infinity (nullopt).
template <class T>
using ProjValue = std::optional<T>;

namespace detail {

// Four vectors in a 2-dimensional subspace (collinear points or concurrent
// lines). Returns the coordinate m used for det(u,v) := (u x v)_m.
template <class T>
int common_span_coordinate(const std::array<const Vec3<T>*, 4>& v) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const Vec3<T> n = cross(*v[i], *v[j]);
      const int m = pivot_index(n);
      if (m < 0) continue;
      if constexpr (Field<T>::exact) {
        for (int k = 0; k < 4; ++k) {
          if (!is_zero(dot(n, *v[k]))) throw InvalidInput("cross ratio of non-aligned quadruple");
        }
      }
      return m;
    }
  }
  throw InvalidInput("cross ratio of a quadruple with a single point");
}

template <class T>
ProjValue<T> bir_vectors(const Vec3<T>& v1, const Vec3<T>& v2, const Vec3<T>& v3, const Vec3<T>& v4) {
  const int m = common_span_coordinate<T>({&v1, &v2, &v3, &v4});
  auto det = [m](const Vec3<T>& u, const Vec3<T>& v) { return cross(u, v)[m]; };
  const T num = det(v1, v2) * det(v3, v4);
  const T den = det(v1, v4) * det(v2, v3);
  if (is_zero(den)) {
    if (is_zero(num)) throw InvalidInput("degenerate quadruple: cross ratio undefined");
    return std::nullopt;
  }
  return num / den;
}

// v4 with Bir(v1,v2,v3,v4) = x, in the pencil spanned by v1 and v3.
template <class T>
Vec3<T> solve_fourth(const Vec3<T>& v1, const Vec3<T>& v2, const Vec3<T>& v3, const T& x) {
  const Vec3<T> n = cross(v1, v3);
  const int m = pivot_index(n);
  if (m < 0) throw InvalidInput("solve_fourth: first and third elements coincide");
  auto det = [m](const Vec3<T>& u, const Vec3<T>& v) { return cross(u, v)[m]; };
  return add(scale(x * det(v2, v3), v1), scale(T(-1) * det(v1, v2), v3));
}

}  // namespace detail

/// Cross ratio (x1-x2)(x3-x4) / ((x1-x4)(x2-x3)) of four collinear points,
/// normalized so that Bir(inf,-1,0,a) = a. nullopt means infinity.
template <class T>
ProjValue<T> cross_ratio(const PPoint<T>& x1, const PPoint<T>& x2, const PPoint<T>& x3, const PPoint<T>& x4) {
  return detail::bir_vectors(x1.c, x2.c, x3.c, x4.c);
}

/// Cross ratio of four concurrent lines (dual formula).
template <class T>
ProjValue<T> cross_ratio_lines(const PLine<T>& d1, const PLine<T>& d2, const PLine<T>& d3, const PLine<T>& d4) {
  return detail::bir_vectors(d1.c, d2.c, d3.c, d4.c);
}

/// Point x4 on the line through x1, x3 with Bir(x1,x2,x3,x4) = x.
template <class T>
PPoint<T> point_with_cross_ratio(const PPoint<T>& x1, const PPoint<T>& x2, const PPoint<T>& x3, const T& x) {
  return PPoint<T>(detail::solve_fourth(x1.c, x2.c, x3.c, x));
}

/// Line d4 through the common point of d1, d3 with Bir(d1,d2,d3,d4) = x.
template <class T>
PLine<T> line_with_cross_ratio(const PLine<T>& d1, const PLine<T>& d2, const PLine<T>& d3, const T& x) {
  return PLine<T>(detail::solve_fourth(d1.c, d2.c, d3.c, x));
}

/// Flags pairwise opposite, points not collinear, lines not concurrent.
template <class T>
bool is_generic_triple(const Flag<T>& f1, const Flag<T>& f2, const Flag<T>& f3) {
  const std::array<const Flag<T>*, 3> f{&f1, &f2, &f3};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && on(f[i]->p, f[j]->D)) return false;
    }
  }
  auto det3 = [](const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) { return dot(a, cross(b, c)); };
  if (is_zero(det3(f1.p.c, f2.p.c, f3.p.c))) return false;
  if (is_zero(det3(f1.D.c, f2.D.c, f3.D.c))) return false;
  return true;
}

/// D1(p2) D2(p3) D3(p1) / (D1(p3) D2(p1) D3(p2)); nullopt means infinity.
template <class T>
ProjValue<T> triple_ratio(const Flag<T>& f1, const Flag<T>& f2, const Flag<T>& f3) {
  const T num = incidence(f2.p, f1.D) * incidence(f3.p, f2.D) * incidence(f1.p, f3.D);
  const T den = incidence(f3.p, f1.D) * incidence(f1.p, f2.D) * incidence(f2.p, f3.D);
  if (is_zero(den)) {
    if (is_zero(num)) throw InvalidInput("degenerate flag triple: triple ratio undefined");
    return std::nullopt;
  }
  return num / den;
}

template <class T>
bool value_matches(const ProjValue<T>& got, const T& want) {
  if (!got) return false;
  if constexpr (Field<T>::exact) {
    return *got == want;
  } else {
    return Field<T>::close(*got, want, verify_tolerance<T>());
  }
}

/// The line D3 through p3 making (F1, F2, (p3, D3)) generic with triple
/// ratio z. D3 is solved in the pencil spanned by p3(D1 n D2) and p3 p1.
template <class T>
Flag<T> flag_from_triple_ratio(const Flag<T>& f1, const Flag<T>& f2, const PPoint<T>& p3, const T& z) {
  if (is_zero(z) || is_zero(z + T(1))) throw InvalidInput("triple ratio must avoid 0 and -1");
  if (on(p3, f1.D) || on(p3, f2.D) || on(f1.p, f2.D) || on(f2.p, f1.D)) {
    throw InvalidInput("flag_from_triple_ratio: input not in generic position");
  }
  const PPoint<T> p12 = meet(f1.D, f2.D);
  const PLine<T> l1 = join(p3, p12);
  const PLine<T> l2 = join(p3, f1.p);
  if (on(f2.p, l2)) throw InvalidInput("flag_from_triple_ratio: p1, p2, p3 collinear");
  const T k = incidence(f2.p, f1.D) * incidence(p3, f2.D) / (incidence(p3, f1.D) * incidence(f1.p, f2.D));
  const T alpha = z * incidence(f2.p, l2);
  const T beta = k * incidence(f1.p, l1) - z * incidence(f2.p, l1);
  Flag<T> f3(p3, PLine<T>(add(scale(alpha, l1.c), scale(beta, l2.c))));
  if (!is_generic_triple(f1, f2, f3) || !value_matches(triple_ratio(f1, f2, f3), z)) {
    throw ConsistencyError("flag_from_triple_ratio: verification failed");
  }
  return f3;
}

/// The unique flag F4 with
///   E  = Bir(D1, p1p2, p1p3, p1(D3 n D4)),
///   E' = Bir(D3, p3p4, p3p1, p3(D2 n D1)),
/// and (F1, F3, F4) generic with triple ratio Z'.
template <class T>
Flag<T> next_flag(const Flag<T>& f1, const Flag<T>& f2, const Flag<T>& f3, const T& e, const T& e_prime,
                  const T& z_prime) {
  if (is_zero(e) || is_zero(e_prime)) throw InvalidInput("edge invariants must be nonzero");
  if (is_zero(z_prime) || is_zero(z_prime + T(1))) throw InvalidInput("triple ratio must avoid 0 and -1");
  if (!is_generic_triple(f1, f2, f3)) throw InvalidInput("next_flag: triple not generic");
  const PPoint<T>& p1 = f1.p;
  const PPoint<T>& p2 = f2.p;
  const PPoint<T>& p3 = f3.p;
  const PPoint<T> p31 = meet(f3.D, f1.D);
  const PPoint<T> p12 = meet(f1.D, f2.D);
  const PPoint<T> q = meet(f3.D, join(p1, p2));
  const PPoint<T> p = point_with_cross_ratio(p31, q, p3, e);
  const PLine<T> l31 = join(p3, p1);
  const PLine<T> l312 = join(p3, p12);
  const PLine<T> delta = line_with_cross_ratio(l31, l312, f3.D, e_prime);
  const PLine<T> delta_prime = line_with_cross_ratio(f1.D, join(p1, p3), join(p1, p), z_prime);
  if (proportional(delta.c, delta_prime.c, incidence_tolerance<T>()))
    throw ConsistencyError("next_flag: coincident auxiliary lines");
  const PPoint<T> p4 = meet(delta, delta_prime);
  if (proportional(p4.c, p.c, incidence_tolerance<T>())) throw ConsistencyError("next_flag: degenerate fourth point");
  Flag<T> f4(p4, join(p4, p));

  const bool ok = is_generic_triple(f1, f3, f4) &&
                  value_matches(cross_ratio_lines(f1.D, join(p1, p2), join(p1, p3), join(p1, meet(f3.D, f4.D))), e) &&
                  value_matches(cross_ratio_lines(f3.D, join(p3, p4), l31, l312), e_prime) &&
                  value_matches(triple_ratio(f1, f3, f4), z_prime);
  if (!ok) throw ConsistencyError("next_flag: verification failed");
  return f4;
}

/// 3x3 matrix up to scalar.
template <class T>
struct ProjMap {
  std::array<std::array<T, 3>, 3> m;

  static ProjMap identity() {
    ProjMap r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = T(i == j ? 1 : 0);
    return r;
  }

  ProjMap operator*(const ProjMap& o) const {
    ProjMap r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        T s = m[i][0] * o.m[0][j];
        s = s + m[i][1] * o.m[1][j];
        s = s + m[i][2] * o.m[2][j];
        r.m[i][j] = std::move(s);
      }
    }
    return r;
  }

  T det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  /// Adjugate; represents the inverse projectively.
  ProjMap adjugate() const {
    ProjMap r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r.m[i][j] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
      }
    }
    return r;
  }

  ProjMap inverse() const {
    if (is_zero(det())) throw InvalidInput("singular projective map");
    return adjugate();
  }

  ProjMap transpose() const {
    ProjMap r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  Vec3<T> apply(const Vec3<T>& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2], m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
  }
  PPoint<T> operator()(const PPoint<T>& p) const { return PPoint<T>(apply(p.c)); }
  /// Lines transform by the inverse transpose.
  PLine<T> operator()(const PLine<T>& d) const { return PLine<T>(adjugate().transpose().apply(d.c)); }
  Flag<T> operator()(const Flag<T>& f) const { return Flag<T>((*this)(f.p), (*this)(f.D)); }

  /// Scaled so the pivot entry (first nonzero, or largest for floats) is 1.
  ProjMap normalized() const {
    int bi = -1, bj = -1;
    for (int i = 0; i < 3 && (bi < 0 || !Field<T>::exact); ++i) {
      for (int j = 0; j < 3; ++j) {
        if (is_zero(m[i][j])) continue;
        if (bi < 0 || (!Field<T>::exact && Field<T>::dominates(m[i][j], m[bi][bj]))) {
          bi = i;
          bj = j;
          if constexpr (Field<T>::exact) break;
        }
      }
    }
    if (bi < 0) throw InvalidInput("zero matrix");
    const T inv = T(1) / m[bi][bj];
    ProjMap r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * inv;
    r.m[bi][bj] = T(1);
    return r;
  }

  T trace() const { return m[0][0] + m[1][1] + m[2][2]; }
  /// Trace of the second exterior power (sum of principal 2x2 minors).
  T trace_wedge2() const {
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
           (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  }
};

/// Equality up to a nonzero scalar (exact, or to a relative tolerance).
template <class T>
bool projectively_equal(const ProjMap<T>& a, const ProjMap<T>& b, typename Field<T>::Tol tol = -1) {
  if constexpr (Field<T>::exact) {
    // a ~ b iff all 2x2 "cross" products a_ij b_kl - a_kl b_ij vanish.
    for (int p = 0; p < 9; ++p) {
      for (int q = p + 1; q < 9; ++q) {
        const T& a1 = a.m[p / 3][p % 3];
        const T& a2 = a.m[q / 3][q % 3];
        const T& b1 = b.m[p / 3][p % 3];
        const T& b2 = b.m[q / 3][q % 3];
        if (!is_zero(a1 * b2 - a2 * b1)) return false;
      }
    }
    bool az = true, bz = true;
    for (int p = 0; p < 9; ++p) {
      az = az && is_zero(a.m[p / 3][p % 3]);
      bz = bz && is_zero(b.m[p / 3][p % 3]);
    }
    return az == bz;
  } else {
    if (tol < 0) tol = verify_tolerance<T>();
    // Scale b to match a on a's largest entry, then compare entrywise.
    int bi = 0, bj = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (Field<T>::dominates(a.m[i][j], a.m[bi][bj])) bi = i, bj = j;
    if (is_zero(b.m[bi][bj])) return false;
    const T s = a.m[bi][bj] / b.m[bi][bj];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!Field<T>::close(a.m[i][j] / a.m[bi][bj], s * b.m[i][j] / a.m[bi][bj], tol)) return false;
    return true;
  }
}

/// Four points, no three collinear.
template <class T>
using Frame = std::array<PPoint<T>, 4>;

template <class T>
bool is_frame(const Frame<T>& f) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (is_zero(dot(f[i].c, cross(f[j].c, f[k].c)))) return false;
  return true;
}

namespace detail {

// Matrix sending the standard frame e1, e2, e3, e1+e2+e3 to f.
template <class T>
ProjMap<T> standard_to_frame(const Frame<T>& f) {
  ProjMap<T> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.m[i][j] = f[j].c[i];
  const Vec3<T> lam = a.adjugate().apply(f[3].c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.m[i][j] = a.m[i][j] * lam[j];
  return a;
}

}  // namespace detail

/// Unique projective map sending src[i] to dst[i], i = 0..3.
template <class T>
ProjMap<T> proj_map_from_frames(const Frame<T>& src, const Frame<T>& dst) {
  if (!is_frame(src) || !is_frame(dst)) throw InvalidInput("proj_map_from_frames: not a projective frame");
  return detail::standard_to_frame(dst) * detail::standard_to_frame(src).adjugate();
}

/// Frame (p1, p2, p3, D1 n D2) of a generic flag triple.
template <class T>
Frame<T> frame_of(const Flag<T>& f1, const Flag<T>& f2, const Flag<T>& f3) {
  return {f1.p, f2.p, f3.p, meet(f1.D, f2.D)};
}

template <class T>
std::ostream& operator<<(std::ostream& os, const PPoint<T>& p) {
  return os << '[' << p.c[0] << ':' << p.c[1] << ':' << p.c[2] << ']';
}

template <class T>
std::ostream& operator<<(std::ostream& os, const PLine<T>& d) {
  return os << '<' << d.c[0] << ':' << d.c[1] << ':' << d.c[2] << '>';
}

}  // namespace a2fg
