#pragma once

#include "gen.hpp"

#include "a2fg/a2_complex.hpp"

namespace gen {

inline a2fg::GeomFGParam geom(std::vector<long> z, std::vector<long> s) {
  a2fg::GeomFGParam p;
  for (long x : z) p.z.emplace_back(x);
  for (long x : s) p.s.emplace_back(x);
  return p;
}

enum class Shape { any, tree, tree_of_triangles, surface };

/// Random integer geometric parameter that is left-shifting and
/// edge-separating and, when requested, of the given special shape.
inline a2fg::GeomFGParam random_geom(Rng& rng, const a2fg::IdealTriangulation& tri, Shape shape) {
  for (;;) {
    a2fg::GeomFGParam p;
    for (int t = 0; t < tri.num_triangles(); ++t) p.z.emplace_back(shape == Shape::tree ? 0 : rng.integer(-4, 4));
    for (int e = 0; e < tri.num_oriented_edges(); ++e) {
      switch (shape) {
        case Shape::tree: p.s.emplace_back(rng.integer(1, 5)); break;
        case Shape::tree_of_triangles: p.s.emplace_back(rng.integer(0, 5)); break;
        default: p.s.emplace_back(rng.integer(-3, 5)); break;
      }
    }
    const a2fg::ClassifyReport r = classify(tri, p);
    if (!r.leftshifting || !r.edgeseparating) continue;
    if (shape == Shape::surface && !r.surface) continue;
    if (shape == Shape::tree_of_triangles && (!r.tree_of_triangles || r.tree)) continue;
    return p;
  }
}

/// Random reduced dual path of the given length from triangle 0.
inline a2fg::DualPath random_walk(Rng& rng, const a2fg::IdealTriangulation& tri, int len) {
  a2fg::DualPath p;
  int cur = 0;
  for (int k = 0; k < len; ++k) {
    int oe;
    do {
      oe = tri.triangle(cur)[rng.integer(0, 2)];
    } while (!p.moves.empty() && oe == a2fg::reverse_edge(p.moves.back()));
    p.moves.push_back(oe);
    cur = tri.right(oe);
  }
  return p;
}

/// Random rational convex combination of a cell's vertices.
inline a2fg::QVec random_point_in(Rng& rng, const std::vector<a2fg::QVec>& poly) {
  std::vector<Rational> w;
  Rational sum;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    w.emplace_back(rng.integer(0, 6));
    sum += w.back();
  }
  if (sum.is_zero()) return poly[0];
  a2fg::QVec x;
  for (std::size_t i = 0; i < poly.size(); ++i) x += (w[i] / sum) * poly[i];
  return x;
}

}  // namespace gen
