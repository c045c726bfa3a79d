#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace a2fg {

/// Oriented edge id: unoriented edge k has orientations 2k ("+") and
/// 2k+1 ("-"); reversal is id ^ 1.
inline int reverse_edge(int oe) { return oe ^ 1; }
inline int edge_of(int oe) { return oe >> 1; }

/// Ideal triangulation with ribbon structure. Each triangle lists its three
/// oriented edges counterclockwise. Edge slot m of a triangle runs from
/// vertex slot m to vertex slot m+1 (mod 3), so the triangle lies to the
/// left of each of its own oriented edges.
class IdealTriangulation {
 public:
  IdealTriangulation(std::string name, std::vector<std::array<int, 3>> triangles,
                     std::vector<std::string> edge_names);

  /// Parses {"name": ..., "triangles": [["e0+","e1+","e2+"], ...]}.
  static IdealTriangulation from_json(std::string_view text);
  static IdealTriangulation load(const std::string& path);
  std::string to_json() const;

  static IdealTriangulation punctured_torus();
  static IdealTriangulation pair_of_pants();
  /// Sphere with n >= 3 punctures: the fan triangulation of an n-gon doubled
  /// along its boundary.
  static IdealTriangulation punctured_sphere(int n);
  /// Built-in by name: "punctured_torus", "pair_of_pants", "sphere_<n>".
  static IdealTriangulation builtin(const std::string& name);

  const std::string& name() const { return name_; }
  int num_triangles() const { return static_cast<int>(tri_.size()); }
  int num_edges() const { return static_cast<int>(edge_names_.size()); }
  int num_oriented_edges() const { return 2 * num_edges(); }
  const std::array<int, 3>& triangle(int t) const { return tri_[t]; }

  /// Triangle to the left of oriented edge oe (the one containing it).
  int left(int oe) const { return where_[oe].first; }
  int right(int oe) const { return where_[oe ^ 1].first; }
  /// Slot of oe inside left(oe).
  int slot(int oe) const { return where_[oe].second; }

  std::string triangle_label(int t) const { return "t" + std::to_string(t); }
  std::string edge_label(int oe) const { return edge_names_[edge_of(oe)] + ((oe & 1) ? "-" : "+"); }
  int triangle_index(const std::string& label) const;
  int oriented_edge_index(const std::string& label) const;

  /// chi(S) = F - E (the punctures are removed vertices).
  int euler_characteristic() const { return num_triangles() - num_edges(); }
  int num_punctures() const { return static_cast<int>(punctures_.size()); }
  /// Corners (triangle, vertex slot) around each puncture, in counterclockwise
  /// order around the puncture.
  const std::vector<std::vector<std::pair<int, int>>>& punctures() const { return punctures_; }
  /// True iff adjacent triangles can be given distinct colours out of two.
  bool two_colourable() const;

 private:
  void validate_and_index();

  std::string name_;
  std::vector<std::array<int, 3>> tri_;
  std::vector<std::string> edge_names_;
  std::vector<std::pair<int, int>> where_;
  std::vector<std::vector<std::pair<int, int>>> punctures_;
};

/// Closed or open path in the dual graph: a base triangle and the sequence
/// of oriented edges crossed, each crossed from its left triangle to its
/// right triangle.
struct DualPath {
  int base = 0;
  std::vector<int> moves;

  bool operator==(const DualPath&) const = default;
  int end(const IdealTriangulation& tri) const { return moves.empty() ? base : tri.right(moves.back()); }
  bool is_closed(const IdealTriangulation& tri) const { return end(tri) == base; }
  DualPath inverse(const IdealTriangulation& tri) const;
  std::size_t size() const { return moves.size(); }
};

/// Vertex-slot correspondence across a crossing of oriented edge e from
/// tau = left(e) to tau' = right(e): slots m (= k) and m+1 (= i) of tau are
/// slots m'+1 and m' of tau'; slot m+2 (= j) is replaced by slot m'+2 (= l).
struct MarkingTransport {
  std::array<int, 3> to_next;  // tau slot -> tau' slot (the j slot maps to l)
  static MarkingTransport across(const IdealTriangulation& tri, int oe);
};

/// Word in free generators: letter +g (g >= 1) is generator g, -g its
/// inverse.
using GroupWord = std::vector<int>;

class DualGraph {
 public:
  explicit DualGraph(const IdealTriangulation& tri);

  const IdealTriangulation& triangulation() const { return *tri_; }
  int base() const { return 0; }
  int rank() const { return static_cast<int>(generators_.size()); }
  /// Unoriented edge behind generator g (1-based).
  int generator_edge(int g) const { return generators_.at(g - 1); }
  bool is_tree_edge(int edge) const { return tree_edge_[edge]; }
  /// Neighbours of triangle t in slot order (the ribbon cyclic order).
  std::array<int, 3> neighbours(int t) const;

  /// Path in the spanning tree from the base to triangle t.
  DualPath tree_path(int t) const;
  DualPath generator_path(int g) const;

  DualPath word_to_dual_path(const GroupWord& w) const;
  /// Reads a closed path based at the base triangle back as a reduced word.
  GroupWord dual_path_to_word(const DualPath& p) const;
  /// Dual loop circling puncture i once counterclockwise, based at the base
  /// triangle (conjugated in through the spanning tree).
  DualPath puncture_path(int i) const;
  GroupWord puncture_word(int i) const { return dual_path_to_word(puncture_path(i)); }

 private:
  const IdealTriangulation* tri_;
  std::vector<bool> tree_edge_;
  std::vector<int> parent_move_;  // oriented edge crossed to reach t from its parent; -1 at base
  std::vector<int> generators_;
};

/// Cancels backtracks (e followed by its reverse).
DualPath reduce(const DualPath& p);

/// Splits a reduced closed path into conjugator c and cyclically reduced
/// core q with p = c q c^-1. The core is based at the end of c.
struct CyclicSplit {
  DualPath conjugator;
  DualPath core;
};
CyclicSplit cyclic_reduce(const IdealTriangulation& tri, const DualPath& p);

GroupWord reduce_word(const GroupWord& w);
GroupWord invert_word(const GroupWord& w);
GroupWord cyclic_reduce_word(const GroupWord& w);
std::string word_to_string(const GroupWord& w);
/// Parses "g1 g2^-1 g1" or "a B" style strings: g<k>, g<k>^-1, or letters
/// a..z (a = g1) with upper case for inverses. Empty string or "1" is the
/// identity.
GroupWord parse_word(std::string_view s);

/// All nonempty cyclically reduced words of length <= max_len in the given
/// rank, one representative per class under rotation and inversion
/// (the lexicographically least), sorted by length then lexicographically.
std::vector<GroupWord> cyclic_word_classes(int rank, int max_len);

}  // namespace a2fg
