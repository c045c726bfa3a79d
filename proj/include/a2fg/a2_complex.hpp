#pragma once

#include "a2fg/model_flat.hpp"
#include "a2fg/rational.hpp"
#include "a2fg/triangulation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace a2fg {

using QVec = AVec<Rational>;
using DVec = AVec<double>;
using QMap = AffineWMap<Rational>;

/// Real logs (z, s) of a triangulation's FG-parameter: z per triangle, s per
/// oriented edge.
struct GeomFGParam {
  std::vector<Rational> z;
  std::vector<Rational> s;

  Rational zplus(int t) const { return z[t].sign() > 0 ? z[t] : Rational(0); }
  Rational zminus(int t) const { return z[t].sign() < 0 ? -z[t] : Rational(0); }

  void validate(const IdealTriangulation& tri) const;
  GeomFGParam scaled(const Rational& lambda) const;

  /// {"z": {"t0": "0", ...}, "s": {"e0+": "1", ...}} with rational strings
  /// or numbers.
  static GeomFGParam from_json(const IdealTriangulation& tri, std::string_view text);
  static GeomFGParam load(const IdealTriangulation& tri, const std::string& path);
  std::string to_json(const IdealTriangulation& tri) const;
};

struct ClassifyReport {
  bool leftshifting = true;
  bool edgeseparating = true;
  bool tree = true;
  bool tree_of_triangles = true;
  bool surface = true;
  /// Per oriented edge: 1 (s_e, s_ebar > 0), 2 (s_e <= 0), 3 (s_ebar <= 0),
  /// or 0 when the edge is not left-shifting.
  std::vector<int> edge_case;
  std::vector<std::string> leftshift_witnesses;
  std::vector<std::string> edgesep_witnesses;
  std::vector<std::string> tree_witnesses;
  std::vector<std::string> tree_of_triangles_witnesses;
  std::vector<std::string> surface_witnesses;
};

ClassifyReport classify(const IdealTriangulation& tri, const GeomFGParam& prm);

struct QSegment {
  QVec p, q;
  bool degenerate() const { return p == q; }
};

enum class CellKind { triangle, segment, rectangle };

const char* to_string(CellKind k);

/// A model polygon of A in root coordinates. Triangles are in the chart of
/// their canonical marking (slot 0 at the origin), edge cells in the chart of
/// the "+" orientation.
struct CellTemplate {
  CellKind kind = CellKind::triangle;
  /// Boundary vertices in cyclic order (triangles include the gate
  /// endpoints on their sides). A degenerate triangle has one vertex.
  std::vector<QVec> vertices;
  std::vector<std::pair<std::string, QSegment>> loci;

  bool degenerate() const { return vertices.size() == 1 || (kind == CellKind::segment && vertices[0] == vertices[1]); }
  bool two_dimensional() const { return vertices.size() >= 3; }
};

struct VertexLink {
  int germs = 0;
  double total_angle = 0;
  /// Shortest injective loop in the link, +inf when the link is a forest.
  double min_loop;
  /// Link is a single circle.
  bool interior = false;
  /// For interior vertices: the chart transitions around the vertex compose
  /// to the identity.
  bool holonomy_trivial = true;
};

struct CellStructure {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler_characteristic() const { return vertices - edges + faces; }
  std::vector<VertexLink> links;
};

class A2Complex {
 public:
  /// Builds K_(z,s). Throws InvalidInput naming the violating edge when the
  /// parameter is not left-shifting.
  A2Complex(const IdealTriangulation& tri, GeomFGParam prm);

  const IdealTriangulation& triangulation() const { return tri_; }
  const GeomFGParam& param() const { return prm_; }
  const ClassifyReport& report() const { return report_; }

  int num_cells() const { return tri_.num_triangles() + tri_.num_edges(); }
  int edge_cell_id(int oe) const { return tri_.num_triangles() + edge_of(oe); }
  const CellTemplate& cell(int id) const { return cells_[id]; }
  std::string cell_label(int id) const;

  /// Vertex x_slot of a triangle marked so that slot r sits at the origin.
  QVec marked_vertex(int t, int r, int slot) const;
  /// Canonical chart of a triangle -> chart of that triangle marked at r.
  const QMap& remark(int t, int r) const { return remark_[3 * t + r]; }
  /// Canonical chart of left(oe) -> chart of the edge cell seen from oe.
  const QMap& to_edge_chart(int oe) const { return to_chart_[oe]; }
  /// w_{e,ebar}: chart of oe -> chart of reverse(oe).
  QMap flip(int oe) const;
  /// Edge-cell chart of oe -> the stored "+" chart.
  QMap edge_chart_to_cell(int oe) const;
  /// Gluing locus [b, x_i] between left(oe) and the edge cell, chart of oe.
  QSegment gate_in(int oe) const;
  /// Gluing locus between the edge cell and right(oe), chart of oe.
  QSegment gate_out(int oe) const;
  /// Canonical chart of left(oe) -> canonical chart of right(oe) across oe.
  QMap crossing(int oe) const;
  /// The C-length of the segment edge cell crossed along oe; nullopt for
  /// rectangles.
  std::optional<QVec> segment_c_length(int oe) const;

  CellStructure cell_structure() const;

 private:
  IdealTriangulation tri_;
  GeomFGParam prm_;
  ClassifyReport report_;
  std::vector<CellTemplate> cells_;
  std::vector<QMap> remark_;
  std::vector<QMap> to_chart_;
};

A2Complex build_complex(const IdealTriangulation& tri, const GeomFGParam& prm);

/// Euclidean chart of A used for metric computations: a u1 + b u2 with
/// u1 = (2/sqrt3, 0), u2 = (1/sqrt3, 1).
struct Planar {
  double x = 0, y = 0;
};
Planar to_planar(const DVec& v);
Planar to_planar(const QVec& v);

/// Sleeve developed into A: cells glued along gates in sequence.
struct Corridor {
  struct Cell {
    int id;
    QMap chart;  // cell chart -> development
    std::vector<QVec> polygon;
  };
  struct Portal {
    QVec left, right;
  };
  DualPath path;
  int periods = 0;
  std::vector<Cell> cells;
  /// gates[g] separates cells[g] and cells[g+1], oriented left/right for a
  /// traveller moving forward.
  std::vector<Portal> gates;
  /// Triangle chart transitions, one per crossing.
  std::vector<QMap> steps;
  /// Composition of the steps over one period (closed corridors only).
  QMap holonomy;
  int gates_per_period() const { return 2 * static_cast<int>(path.size()); }
};

/// Development along an open dual path: triangle, edge, triangle, ...
Corridor develop_path(const A2Complex& cx, const DualPath& path);
/// Development of `periods` copies of a closed cyclically reduced path.
Corridor develop_corridor(const A2Complex& cx, const DualPath& closed, int periods);
/// Cyclically reduced closed dual path of a group word; empty for trivial
/// classes.
DualPath cyclic_core(const IdealTriangulation& tri, const GroupWord& w);
Corridor develop_corridor(const A2Complex& cx, const GroupWord& w, int periods);

/// Polyline result with exact vertices.
struct QPath {
  std::vector<QVec> vertices;
  /// Portal index of each vertex (0 = start, gates from 1, last = end).
  std::vector<int> portal;
  QVec c_length() const;
  double euclid() const;
};

/// Shortest path through a sequence of portals (exact funnel).
QPath funnel(const QVec& start, const std::vector<Corridor::Portal>& portals, const QVec& end);

struct PeriodicSolution {
  std::vector<DVec> points;  // one per gate of the first period
  double length = 0;         // Euclidean length per period
  int sweeps = 0;
  bool converged = false;
};

/// Block coordinate descent for the shortest periodic polyline with one
/// point per gate and p_{i+G} = h(p_i).
PeriodicSolution solve_periodic(const std::vector<Corridor::Portal>& gates, const QMap& h, double tol = 1e-12,
                                int max_sweeps = 400000);

struct AxisCLength {
  std::optional<QVec> exact;  // certified by an exact periodic funnel
  DVec value;
  double euclid = 0;          // solver length per period
  int gates = 0;
  int sweeps = 0;
  std::vector<DVec> polyline;  // one period of the axis, developed
  bool certified() const { return exact.has_value(); }
};

/// C-length of the axis of gamma. Throws InvalidInput for trivial classes.
AxisCLength axis_c_length(const A2Complex& cx, const GroupWord& w);
AxisCLength axis_c_length(const A2Complex& cx, const DualPath& closed);

/// Point addressed by its position in a developed corridor and local
/// coordinates in that cell's own chart.
struct CellPoint {
  int cell = 0;
  QVec local;
};

struct CDistance {
  QVec c;
  double euclid = 0;
  QPath path;  // developed
};

/// C-distance between points of the cells of develop_path(cx, path), with
/// x.cell <= y.cell.
CDistance c_distance(const A2Complex& cx, const DualPath& path, const CellPoint& x, const CellPoint& y);

struct MeshPath {
  double length = 0;
  std::vector<DVec> polyline;
};

/// Brute-force shortest polyline with one sampled vertex per gate (dynamic
/// programming over consecutive gates, min-plus kernel).
MeshPath dijkstra_mesh_oracle(const DVec& start, const std::vector<Corridor::Portal>& gates, const DVec& end,
                              int resolution);
/// Periodic variant: minimum over closed sampled polylines with
/// p_{i+G} = h(p_i); gate 0 is sampled and its image under h is used.
MeshPath dijkstra_mesh_oracle_periodic(const std::vector<Corridor::Portal>& gates, const QMap& h, int resolution);

std::string export_svg(const A2Complex& cx);
std::string export_svg(const Corridor& cor);

}  // namespace a2fg
