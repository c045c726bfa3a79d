#include "a2fg/a2_complex.hpp"

#include "a2fg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace a2fg {

namespace {

Rational orient(const QVec& a, const QVec& b, const QVec& c) {
  return (b.a - a.a) * (c.b - a.b) - (b.b - a.b) * (c.a - a.a);
}

QVec centroid(const std::vector<QVec>& poly) {
  QVec c;
  for (const auto& v : poly) c += v;
  return Rational(1, static_cast<long>(poly.size())) * c;
}

std::vector<QVec> mapped(const QMap& m, const std::vector<QVec>& poly) {
  std::vector<QVec> out;
  out.reserve(poly.size());
  for (const auto& v : poly) out.push_back(m(v));
  return out;
}

/// Orients gate [p, q] between cells `before` and `after`.
Corridor::Portal make_portal(const QVec& p, const QVec& q, const Corridor::Cell& before, const Corridor::Cell& after) {
  if (p == q) return {p, p};
  int side;
  QVec c;
  if (after.polygon.size() >= 3) {
    c = centroid(after.polygon);
    side = 1;
  } else if (before.polygon.size() >= 3) {
    c = centroid(before.polygon);
    side = -1;
  } else {
    throw ConsistencyError("proper gate between degenerate cells");
  }
  const int o = orient(p, q, c).sign() * side;
  if (o == 0) throw ConsistencyError("gate collinear with adjacent cell");
  return o > 0 ? Corridor::Portal{p, q} : Corridor::Portal{q, p};
}

void append_crossing(const A2Complex& cx, Corridor& cor, QMap& D, int oe) {
  const IdealTriangulation& tri = cx.triangulation();
  const QMap E = D * cx.to_edge_chart(oe).inverse();
  const QMap Ecell = E * cx.edge_chart_to_cell(oe).inverse();
  const int ec = cx.edge_cell_id(oe);
  cor.cells.push_back({ec, Ecell, mapped(Ecell, cx.cell(ec).vertices)});
  const QMap S = cx.crossing(oe);
  D = D * S;
  cor.steps.push_back(S);
  const int t = tri.right(oe);
  cor.cells.push_back({t, D, mapped(D, cx.cell(t).vertices)});
  const std::size_t n = cor.cells.size();
  const QSegment g1 = cx.gate_in(oe), g2 = cx.gate_out(oe);
  cor.gates.push_back(make_portal(E(g1.p), E(g1.q), cor.cells[n - 3], cor.cells[n - 2]));
  cor.gates.push_back(make_portal(E(g2.p), E(g2.q), cor.cells[n - 2], cor.cells[n - 1]));
}

Corridor start_corridor(const A2Complex& cx, const DualPath& path) {
  Corridor cor;
  cor.path = path;
  const int t = path.base;
  if (t < 0 || t >= cx.triangulation().num_triangles()) throw InvalidInput("dual path base out of range");
  cor.cells.push_back({t, QMap::identity(), cx.cell(t).vertices});
  return cor;
}

void check_move(const IdealTriangulation& tri, int at, int oe) {
  if (oe < 0 || oe >= tri.num_oriented_edges() || tri.left(oe) != at)
    throw InvalidInput("dual path move " + std::to_string(oe) + " does not leave triangle " + std::to_string(at));
}

}  // namespace

Corridor develop_path(const A2Complex& cx, const DualPath& path) {
  Corridor cor = start_corridor(cx, path);
  QMap D = QMap::identity();
  int at = path.base;
  for (int oe : path.moves) {
    check_move(cx.triangulation(), at, oe);
    append_crossing(cx, cor, D, oe);
    at = cx.triangulation().right(oe);
  }
  cor.holonomy = D;
  return cor;
}

Corridor develop_corridor(const A2Complex& cx, const DualPath& closed, int periods) {
  if (periods < 1) throw InvalidInput("develop_corridor: periods must be >= 1");
  if (closed.moves.empty() || !closed.is_closed(cx.triangulation()))
    throw InvalidInput("develop_corridor: need a nontrivial closed dual path");
  const auto n = closed.moves.size();
  for (std::size_t i = 0; i < n; ++i)
    if (closed.moves[(i + 1) % n] == reverse_edge(closed.moves[i]))
      throw InvalidInput("develop_corridor: path is not cyclically reduced");
  Corridor cor = start_corridor(cx, closed);
  cor.periods = periods;
  QMap D = QMap::identity();
  int at = closed.base;
  for (int p = 0; p < periods; ++p) {
    for (int oe : closed.moves) {
      check_move(cx.triangulation(), at, oe);
      append_crossing(cx, cor, D, oe);
      at = cx.triangulation().right(oe);
    }
    if (p == 0) cor.holonomy = D;
  }
  return cor;
}

DualPath cyclic_core(const IdealTriangulation& tri, const GroupWord& w) {
  const DualGraph dg(tri);
  const DualPath p = reduce(dg.word_to_dual_path(w));
  if (p.moves.empty()) return p;
  return cyclic_reduce(tri, p).core;
}

Corridor develop_corridor(const A2Complex& cx, const GroupWord& w, int periods) {
  const DualPath core = cyclic_core(cx.triangulation(), w);
  if (core.moves.empty()) throw InvalidInput("develop_corridor: trivial conjugacy class");
  return develop_corridor(cx, core, periods);
}

// ---------------------------------------------------------------------------

QVec QPath::c_length() const {
  QVec c;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) c += cabs(vertices[i + 1] - vertices[i]);
  return c;
}

double QPath::euclid() const {
  double l = 0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) l += norm_euc(vertices[i + 1] - vertices[i]);
  return l;
}

QPath funnel(const QVec& start, const std::vector<Corridor::Portal>& gates, const QVec& end) {
  std::vector<Corridor::Portal> portals;
  portals.reserve(gates.size() + 2);
  portals.push_back({start, start});
  portals.insert(portals.end(), gates.begin(), gates.end());
  portals.push_back({end, end});
  const int n = static_cast<int>(portals.size());

  QPath out;
  out.vertices.push_back(start);
  out.portal.push_back(0);
  QVec apex = start, lp = start, rp = start;
  int ai = 0, li = 0, ri = 0;
  auto restart = [&](const QVec& v, int idx) {
    if (!(out.vertices.back() == v)) {
      out.vertices.push_back(v);
      out.portal.push_back(idx);
    }
    apex = lp = rp = v;
    ai = li = ri = idx;
  };
  for (int i = 1; i < n; ++i) {
    const QVec& L = portals[i].left;
    const QVec& R = portals[i].right;
    if (orient(apex, rp, R).sign() >= 0) {
      if (apex == rp || orient(apex, lp, R).sign() < 0) {
        rp = R;
        ri = i;
      } else {
        restart(lp, li);
        i = ai;
        continue;
      }
    }
    if (orient(apex, lp, L).sign() <= 0) {
      if (apex == lp || orient(apex, rp, L).sign() > 0) {
        lp = L;
        li = i;
      } else {
        restart(rp, ri);
        i = ai;
        continue;
      }
    }
  }
  if (!(out.vertices.back() == end) || out.portal.back() != n - 1) {
    out.vertices.push_back(end);
    out.portal.push_back(n - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct P2 {
  double x, y;
};
P2 operator-(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
P2 operator+(P2 a, P2 b) { return {a.x + b.x, a.y + b.y}; }
P2 operator*(double s, P2 a) { return {s * a.x, s * a.y}; }
double cross(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
double dot(P2 a, P2 b) { return a.x * b.x + a.y * b.y; }
double len(P2 a) { return std::hypot(a.x, a.y); }
P2 planar(const DVec& v) {
  const Planar p = to_planar(v);
  return {p.x, p.y};
}
DVec unplanar(P2 p) {
  // x = (2a + b)/sqrt3, y = b
  const double b = p.y;
  return {(std::sqrt(3.0) * p.x - b) / 2, b};
}

struct DMap {
  WeylElem lin;
  DVec t;
  P2 operator()(P2 p) const { return planar(lin.apply(unplanar(p)) + t); }
};

/// argmin over t in [0,1] of |A + t d - q1| + |A + t d - q2|.
double best_on_segment(P2 A, P2 B, P2 q1, P2 q2, double current) {
  const P2 d = B - A;
  const double dd = dot(d, d);
  const double s1 = cross(d, q1 - A);
  double s2 = cross(d, q2 - A);
  P2 r2 = q2;
  if (s1 * s2 > 0) {
    // reflect q2 across the gate line
    const P2 foot = A + (dot(q2 - A, d) / dd) * d;
    r2 = 2.0 * foot - q2;
    s2 = -s2;
  }
  double t;
  if (s1 == s2) {
    const double t1 = dot(q1 - A, d) / dd, t2 = dot(r2 - A, d) / dd;
    t = std::clamp(current, std::min(t1, t2), std::max(t1, t2));
  } else {
    const P2 X = q1 + (s1 / (s1 - s2)) * (r2 - q1);
    t = dot(X - A, d) / dd;
  }
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

PeriodicSolution solve_periodic(const std::vector<Corridor::Portal>& gates, const QMap& h, double tol,
                                int max_sweeps) {
  const int G = static_cast<int>(gates.size());
  if (G == 0) throw InvalidInput("solve_periodic: no gates");
  std::vector<P2> A(G), B(G);
  std::vector<bool> fixed(G);
  for (int i = 0; i < G; ++i) {
    A[i] = planar(to_double(gates[i].left));
    B[i] = planar(to_double(gates[i].right));
    fixed[i] = gates[i].left == gates[i].right;
  }
  const DMap hd{h.linear, to_double(h.translate)};
  const QMap hi = h.inverse();
  const DMap hid{hi.linear, to_double(hi.translate)};
  std::vector<double> t(G, 0.5);
  auto point = [&](int i) { return A[i] + t[i] * (B[i] - A[i]); };
  PeriodicSolution sol;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0;
    for (int i = 0; i < G; ++i) {
      if (fixed[i]) continue;
      const P2 prev = i == 0 ? hid(point(G - 1)) : point(i - 1);
      const P2 next = i == G - 1 ? hd(point(0)) : point(i + 1);
      const double nt = best_on_segment(A[i], B[i], prev, next, t[i]);
      moved = std::max(moved, std::abs(nt - t[i]) * len(B[i] - A[i]));
      t[i] = nt;
    }
    sol.sweeps = sweep + 1;
    if (moved < tol) {
      sol.converged = true;
      break;
    }
  }
  for (int i = 0; i < G; ++i) {
    sol.points.push_back(unplanar(point(i)));
    const P2 next = i == G - 1 ? hd(point(0)) : point(i + 1);
    sol.length += len(next - point(i));
  }
  return sol;
}

// ---------------------------------------------------------------------------

namespace {

bool on_closed_segment(const QVec& x, const QVec& p, const QVec& q) {
  if (!orient(p, q, x).is_zero()) return false;
  const QVec d = q - p, u = x - p;
  const Rational t = d.a * u.a + d.b * u.b;
  return t.sign() >= 0 && t <= d.a * d.a + d.b * d.b;
}

/// Vertices of `path` up to its crossing of portal `k`, provided that the
/// crossing is the point x.
std::optional<QPath> prefix_until(const QPath& path, int k, const QVec& x) {
  QPath out;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    out.vertices.push_back(path.vertices[i]);
    out.portal.push_back(path.portal[i]);
    if (path.portal[i] == k) {
      if (!(path.vertices[i] == x)) return std::nullopt;
      return out;
    }
    if (i + 1 < path.vertices.size() && path.portal[i + 1] > k) {
      if (!on_closed_segment(x, path.vertices[i], path.vertices[i + 1])) return std::nullopt;
      out.vertices.push_back(x);
      out.portal.push_back(k);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

AxisCLength axis_c_length(const A2Complex& cx, const DualPath& closed) {
  if (closed.moves.empty()) throw InvalidInput("axis_c_length: trivial conjugacy class");
  const Corridor cor = develop_corridor(cx, closed, 3);
  const int G = cor.gates_per_period();
  const QMap& h = cor.holonomy;
  const std::vector<Corridor::Portal> period(cor.gates.begin(), cor.gates.begin() + G);
  const PeriodicSolution sol = solve_periodic(period, h);

  AxisCLength res;
  res.gates = G;
  res.sweeps = sol.sweeps;
  res.euclid = sol.length;

  struct Cand {
    double d;
    int gate;
    QVec v;
  };
  std::vector<Cand> cands;
  for (int k = 0; k < G; ++k) {
    const P2 s = planar(sol.points[k]);
    cands.push_back({len(planar(to_double(period[k].left)) - s), k, period[k].left});
    if (!(period[k].right == period[k].left))
      cands.push_back({len(planar(to_double(period[k].right)) - s), k, period[k].right});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
  const QMap h2 = h * h;
  for (const Cand& c : cands) {
    const std::vector<Corridor::Portal> portals(cor.gates.begin() + c.gate + 1, cor.gates.begin() + c.gate + 2 * G);
    const QPath path = funnel(c.v, portals, h2(c.v));
    const auto one = prefix_until(path, G, h(c.v));
    if (!one) continue;
    res.exact = one->c_length();
    res.euclid = one->euclid();
    for (const auto& v : one->vertices) res.polyline.push_back(to_double(v));
    res.value = to_double(*res.exact);
    return res;
  }
  // No vertex on the axis: the development of the axis is a straight line
  // preserved by h.
  std::optional<QVec> shift;
  if (h.linear.is_identity()) {
    shift = h.translate;
  } else if ((h.linear * h.linear).is_identity()) {
    shift = Rational(1, 2) * (h.translate + h.linear.apply(h.translate));
  }
  if (shift && std::abs(norm_euc(*shift) - sol.length) <= 1e-7 * (1 + sol.length)) {
    res.exact = cabs(*shift);
    res.value = to_double(*res.exact);
    res.euclid = norm_euc(*shift);
    for (const auto& p : sol.points) res.polyline.push_back(p);
    return res;
  }
  // Uncertified: C-length of the solver polyline.
  DVec acc;
  for (int i = 0; i < G; ++i) {
    const DVec next = i == G - 1 ? h.linear.apply(sol.points[0]) + to_double(h.translate) : sol.points[i + 1];
    acc += cabs(next - sol.points[i]);
  }
  res.value = acc;
  res.polyline = sol.points;
  return res;
}

AxisCLength axis_c_length(const A2Complex& cx, const GroupWord& w) {
  const DualPath core = cyclic_core(cx.triangulation(), w);
  if (core.moves.empty()) throw InvalidInput("axis_c_length: trivial conjugacy class");
  return axis_c_length(cx, core);
}

// ---------------------------------------------------------------------------

namespace {

bool in_cell(const CellTemplate& c, const QVec& x) {
  const auto& v = c.vertices;
  if (v.size() == 1) return x == v[0];
  if (v.size() == 2) return on_closed_segment(x, v[0], v[1]);
  int sgn = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int o = orient(v[i], v[(i + 1) % v.size()], x).sign();
    if (o == 0) continue;
    if (sgn == 0) sgn = o;
    if (o != sgn) return false;
  }
  return true;
}

}  // namespace

CDistance c_distance(const A2Complex& cx, const DualPath& path, const CellPoint& x, const CellPoint& y) {
  const Corridor cor = develop_path(cx, path);
  const int n = static_cast<int>(cor.cells.size());
  if (x.cell < 0 || y.cell < 0 || x.cell >= n || y.cell >= n || x.cell > y.cell)
    throw InvalidInput("c_distance: cell addresses out of range or out of order");
  for (const CellPoint* p : {&x, &y}) {
    if (!in_cell(cx.cell(cor.cells[p->cell].id), p->local))
      throw InvalidInput("c_distance: point outside its cell " + cx.cell_label(cor.cells[p->cell].id));
  }
  const QVec X = cor.cells[x.cell].chart(x.local);
  const QVec Y = cor.cells[y.cell].chart(y.local);
  const std::vector<Corridor::Portal> portals(cor.gates.begin() + x.cell, cor.gates.begin() + y.cell);
  CDistance d;
  d.path = funnel(X, portals, Y);
  d.c = d.path.c_length();
  d.euclid = d.path.euclid();
  return d;
}

}  // namespace a2fg
