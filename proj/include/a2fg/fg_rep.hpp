#pragma once

#include "a2fg/errors.hpp"
#include "a2fg/field.hpp"
#include "a2fg/model_flat.hpp"
#include "a2fg/projective.hpp"
#include "a2fg/triangulation.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace a2fg {

/// Algebraic FG-parameter: Z per triangle (not 0, -1), E per oriented edge
/// (not 0), indexed like the triangulation.
template <class T>
struct FGParam {
  std::vector<T> Z;
  std::vector<T> E;

  void validate(const IdealTriangulation& tri) const {
    if (static_cast<int>(Z.size()) != tri.num_triangles() || static_cast<int>(E.size()) != tri.num_oriented_edges()) {
      throw InvalidInput("FG-parameter does not match the triangulation");
    }
    for (std::size_t t = 0; t < Z.size(); ++t) {
      if (is_zero(Z[t]) || is_zero(Z[t] + T(1))) {
        throw InvalidInput("triangle invariant of " + tri.triangle_label(static_cast<int>(t)) + " is 0 or -1");
      }
    }
    for (std::size_t e = 0; e < E.size(); ++e) {
      if (is_zero(E[e])) throw InvalidInput("edge invariant of " + tri.edge_label(static_cast<int>(e)) + " is 0");
    }
  }
};

/// Flags at the three vertex slots of one developed triangle.
template <class T>
using FlagTriple = std::array<Flag<T>, 3>;

/// Canonical base triple: p1 = [1:0:0], p2 = [0:1:0], D1 n D2 = [0:0:1],
/// p3 = [1:1:1], D3 fixed by the triple ratio z.
template <class T>
FlagTriple<T> canonical_triple(const T& z) {
  const Flag<T> f1(PPoint<T>(1, 0, 0), PLine<T>(0, 1, 0));
  const Flag<T> f2(PPoint<T>(0, 1, 0), PLine<T>(1, 0, 0));
  return {f1, f2, flag_from_triple_ratio(f1, f2, PPoint<T>(1, 1, 1), z)};
}

/// Flags of the triangle reached by crossing oriented edge oe from the
/// triangle whose slot flags are `cur`.
template <class T>
FlagTriple<T> cross_edge(const IdealTriangulation& tri, const FGParam<T>& prm, const FlagTriple<T>& cur, int oe) {
  const int m = tri.slot(oe);
  const int mm = tri.slot(reverse_edge(oe));
  const int tau2 = tri.right(oe);
  const Flag<T>& fk = cur[m];
  const Flag<T>& fi = cur[(m + 1) % 3];
  const Flag<T>& fj = cur[(m + 2) % 3];
  const Flag<T> fl = next_flag(fi, fj, fk, prm.E[oe], prm.E[reverse_edge(oe)], prm.Z[tau2]);
  FlagTriple<T> out;
  out[mm] = fi;
  out[(mm + 1) % 3] = fk;
  out[(mm + 2) % 3] = fl;
  return out;
}

/// Developed flag triples along a dual path starting from `start` at the
/// path's base triangle (the canonical triple when omitted and the path
/// starts at triangle 0). Entry 0 is the start, entry k the triple after k
/// crossings.
template <class T>
std::vector<FlagTriple<T>> develop_flags(const IdealTriangulation& tri, const FGParam<T>& prm, const DualPath& path,
                                         const FlagTriple<T>* start = nullptr) {
  std::vector<FlagTriple<T>> out;
  out.reserve(path.moves.size() + 1);
  out.push_back(start ? *start : canonical_triple(prm.Z[path.base]));
  int cur = path.base;
  for (int oe : path.moves) {
    if (tri.left(oe) != cur) throw InvalidInput("dual path is not composable");
    out.push_back(cross_edge(tri, prm, out.back(), oe));
    cur = tri.right(oe);
  }
  return out;
}

/// Scale representative with small entries: polynomial entries with trivial
/// content over Q(t), integer entries over Q, unit largest entry over floats.
ProjMap<RatFunc> tidy(const ProjMap<RatFunc>& g);
ProjMap<Rational> tidy(const ProjMap<Rational>& g);
ProjMap<BigFloat> tidy(const ProjMap<BigFloat>& g);

/// Map sending the slot frame of `from` to that of `to`.
template <class T>
ProjMap<T> frame_map(const FlagTriple<T>& from, const FlagTriple<T>& to) {
  return proj_map_from_frames(frame_of(from[0], from[1], from[2]), frame_of(to[0], to[1], to[2]));
}

/// Change of frame across oe: sends the canonical triple of right(oe) to
/// its developed position seen from the canonical triple of left(oe).
template <class T>
ProjMap<T> crossing_map(const IdealTriangulation& tri, const FGParam<T>& prm, int oe) {
  const FlagTriple<T> here = canonical_triple(prm.Z[tri.left(oe)]);
  return tidy(frame_map(canonical_triple(prm.Z[tri.right(oe)]), cross_edge(tri, prm, here, oe)));
}

/// Holonomy of a closed dual path at the base triangle: the product of the
/// crossing maps. Each factor is built from well-separated canonical flags,
/// so no precision is lost to flags that crowd together along the path.
template <class T>
ProjMap<T> holonomy_of_path(const IdealTriangulation& tri, const FGParam<T>& prm, const DualPath& path) {
  if (!path.is_closed(tri)) throw InvalidInput("holonomy needs a closed dual path");
  if (tri.num_triangles() == 0) throw InvalidInput("empty triangulation");
  ProjMap<T> acc = ProjMap<T>::identity();
  int cur = path.base;
  for (int oe : path.moves) {
    if (tri.left(oe) != cur) throw InvalidInput("dual path is not composable");
    acc = tidy(acc * crossing_map(tri, prm, oe));
    cur = tri.right(oe);
  }
  return acc;
}

/// rho: Gamma -> PGL_3(K) with generator table and a word cache.
template <class T>
class Representation {
 public:
  Representation(const IdealTriangulation& tri, FGParam<T> prm) : tri_(tri), graph_(tri_), prm_(std::move(prm)) {
    prm_.validate(tri_);
    for (int g = 1; g <= graph_.rank(); ++g) {
      gens_.push_back(holonomy_of_path(tri_, prm_, graph_.generator_path(g)));
      gens_inv_.push_back(gens_.back().adjugate());
      gen_det_.push_back(gens_.back().det());
      // adj(adj G) = det(G) G.
      ProjMap<T> aa = gens_.back();
      for (auto& row : aa.m)
        for (auto& x : row) x = x * gen_det_.back();
      adj_of_inv_.push_back(std::move(aa));
    }
  }
  Representation(const Representation&) = delete;
  Representation& operator=(const Representation&) = delete;

  const IdealTriangulation& triangulation() const { return tri_; }
  const DualGraph& graph() const { return graph_; }
  const FGParam<T>& param() const { return prm_; }
  int rank() const { return graph_.rank(); }

  const ProjMap<T>& generator(int g) const { return gens_.at(g - 1); }

  /// rho(w) as a product of generator images (cached by reduced word).
  ProjMap<T> operator()(const GroupWord& word) const {
    const GroupWord w = reduce_word(word);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(w);
      if (it != cache_.end()) return it->second;
    }
    ProjMap<T> acc = ProjMap<T>::identity();
    for (int x : w) {
      acc = acc * (x > 0 ? gens_[x - 1] : gens_inv_[-x - 1]);
      if constexpr (Field<T>::exact) acc = tidy(acc);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(w, acc).first->second;
  }

  /// Coefficients (c2, c1, c0) of the characteristic polynomial
  /// x^3 + c2 x^2 + c1 x + c0 of the lift of rho(w) given by the product of
  /// generator lifts. The second coefficient is the trace of the adjugate,
  /// accumulated as the reversed product of generator adjugates so that no
  /// 2x2 minor of the (possibly huge) product is ever formed.
  std::array<T, 3> char_poly(const GroupWord& word) const {
    const GroupWord w = reduce_word(word);
    ProjMap<T> m = ProjMap<T>::identity();
    ProjMap<T> adj = ProjMap<T>::identity();
    T det(1);
    for (int x : w) {
      const std::size_t g = static_cast<std::size_t>(std::abs(x) - 1);
      if (x > 0) {
        m = m * gens_[g];
        adj = gens_inv_[g] * adj;
        det = det * gen_det_[g];
      } else {
        m = m * gens_inv_[g];
        adj = adj_of_inv_[g] * adj;
        det = det * gen_det_[g] * gen_det_[g];
      }
    }
    return {-m.trace(), adj.trace(), -det};
  }

  /// rho(w) computed directly by developing flags along the dual path.
  ProjMap<T> by_development(const GroupWord& word) const {
    return holonomy_of_path(tri_, prm_, graph_.word_to_dual_path(word));
  }

 private:
  IdealTriangulation tri_;
  DualGraph graph_;
  FGParam<T> prm_;
  std::vector<ProjMap<T>> gens_;
  std::vector<ProjMap<T>> gens_inv_;  // adjugates: lifts of the inverses
  std::vector<ProjMap<T>> adj_of_inv_;
  std::vector<T> gen_det_;
  mutable std::mutex mu_;
  mutable std::map<GroupWord, ProjMap<T>> cache_;
};

/// Descending log-moduli of the eigenvalues (mean subtracted) and the
/// corresponding chamber vector in root coordinates.
template <class L>
struct CLength {
  std::array<L, 3> logs;  // descending, sum zero
  AVec<L> vec;            // (logs[0]-logs[1], logs[1]-logs[2])
};

/// Exact over Q(t): Newton polygon of the characteristic polynomial.
CLength<Rational> c_length(const ProjMap<RatFunc>& g);
/// Floating point (BigFloat), also used for rational matrices.
CLength<BigFloat> c_length(const ProjMap<BigFloat>& g);
CLength<BigFloat> c_length(const ProjMap<Rational>& g);

/// C-length of rho(w) from the accurate characteristic polynomial.
CLength<Rational> c_length(const Representation<RatFunc>& rho, const GroupWord& w);
CLength<BigFloat> c_length(const Representation<BigFloat>& rho, const GroupWord& w);
CLength<BigFloat> c_length(const Representation<Rational>& rho, const GroupWord& w);

/// Log-moduli (descending) of the roots of x^3 + c2 x^2 + c1 x + c0 by
/// Graeffe root squaring read through the tropical (upper) hull.
std::array<BigFloat, 3> cubic_root_log_moduli(const BigFloat& c2, const BigFloat& c1, const BigFloat& c0,
                                              int squarings = 40);

/// Real roots of the monic cubic near the given moduli, polished by Newton.
/// Returns false unless the cubic has three distinct positive real roots.
bool cubic_roots_real_positive_distinct(const BigFloat& c2, const BigFloat& c1, const BigFloat& c0,
                                        std::array<BigFloat, 3>* roots = nullptr);

/// Eigenvalue positivity check for a float matrix.
bool eigenvalues_real_positive_distinct(const ProjMap<BigFloat>& g);

template <class L>
L hilbert_length(const CLength<L>& c) {
  return c.logs[0] - c.logs[2];
}

inline double euclid_length(const CLength<Rational>& c) { return norm_euc(c.vec); }
inline double euclid_length(const CLength<BigFloat>& c) {
  return norm_euc(AVec<double>(c.vec.a.convert_to<double>(), c.vec.b.convert_to<double>()));
}

/// Usual FG edge invariants: Z_e = E_e (1 + Z_tau'), Z*_e = E_ebar (1 + 1/Z_tau'),
/// tau' the triangle to the right of e.
template <class T>
struct ConvertedInvariants {
  std::vector<T> Z_edge;
  std::vector<T> Z_star_edge;
};

template <class T>
ConvertedInvariants<T> convert_invariants(const IdealTriangulation& tri, const FGParam<T>& prm) {
  ConvertedInvariants<T> out;
  for (int oe = 0; oe < tri.num_oriented_edges(); ++oe) {
    const T& zr = prm.Z[tri.right(oe)];
    out.Z_edge.push_back(prm.E[oe] * (T(1) + zr));
    out.Z_star_edge.push_back(prm.E[reverse_edge(oe)] * (T(1) + T(1) / zr));
  }
  return out;
}

/// (log|X|, -log|1+X|, log|1+1/X|) per triangle and per oriented edge.
template <class L>
struct GeomInvariants {
  std::vector<std::array<L, 3>> triangle;
  std::vector<std::array<L, 3>> edge;
};

namespace detail {

inline Rational finite_log(const std::optional<Rational>& x) {
  if (!x) throw InvalidInput("log of zero");
  return *x;
}
inline BigFloat finite_log(const BigFloat& x) { return x; }
inline double finite_log(double x) { return x; }

template <class T>
auto log_triple(const T& x) {
  auto l = [](const T& y) { return finite_log(log_abs(y)); };
  using L = decltype(l(x));
  return std::array<L, 3>{l(x), -l(T(1) + x), l(T(1) + T(1) / x)};
}

}  // namespace detail

template <class T>
auto geometric_invariants(const FGParam<T>& prm) {
  using L = decltype(detail::finite_log(log_abs(std::declval<T>())));
  GeomInvariants<L> g;
  for (const T& z : prm.Z) g.triangle.push_back(detail::log_triple(z));
  for (const T& e : prm.E) g.edge.push_back(detail::log_triple(e));
  return g;
}

/// (H_Delta): |Z+1| >= 1 per triangle; (H_H): |E+1| >= 1 per oriented edge.
struct HypothesisReport {
  std::vector<bool> flat_triangles;
  std::vector<bool> edges;
  bool all_flat_triangles() const;
  bool all_edges() const;
  bool all() const { return all_flat_triangles() && all_edges(); }
  std::vector<std::string> failures(const IdealTriangulation& tri) const;
};

namespace detail {

inline bool log_nonneg(const std::optional<Rational>& x) { return x && x->sign() >= 0; }
inline bool log_nonneg(const BigFloat& x) { return x >= 0; }
inline bool log_nonneg(double x) { return x >= 0; }

}  // namespace detail

template <class T>
HypothesisReport check_hypotheses(const FGParam<T>& prm) {
  HypothesisReport r;
  for (const T& z : prm.Z) r.flat_triangles.push_back(detail::log_nonneg(log_abs(z + T(1))));
  for (const T& e : prm.E) r.edges.push_back(detail::log_nonneg(log_abs(e + T(1))));
  return r;
}

/// Parses {"Z": {"t0": ...}, "E": {"e0+": ...}} with literals of the backend.
FGParam<Rational> parse_fg_rational(const IdealTriangulation& tri, const std::string& json_text);
FGParam<RatFunc> parse_fg_ratfunc(const IdealTriangulation& tri, const std::string& json_text);
FGParam<BigFloat> parse_fg_bigfloat(const IdealTriangulation& tri, const std::string& json_text);

}  // namespace a2fg
