#include "a2fg/a2_complex.hpp"

#include "a2fg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace a2fg {

namespace {

const Rational kZero(0);

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

const WeylElem& weyl_with_matrix(std::array<int, 4> m) {
  for (const WeylElem& w : WeylElem::all())
    if (w.root_matrix() == m) return w;
  throw ConsistencyError("no Weyl element with the requested root matrix");
}

std::string fmt(const Rational& r) { return r.str(); }

class UnionFind {
 public:
  explicit UnionFind(int n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
  int find(int x) {
    while (p_[x] != x) x = p_[x] = p_[p_[x]];
    return x;
  }
  void unite(int a, int b) { p_[find(a)] = find(b); }
  int classes() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(p_.size()); ++i) c += find(i) == i;
    return c;
  }

 private:
  std::vector<int> p_;
};

bool on_segment(const QVec& x, const QSegment& s) {
  const QVec d = s.q - s.p, u = x - s.p;
  if (!(d.a * u.b - d.b * u.a).is_zero()) return false;
  const Rational t = d.a * u.a + d.b * u.b;
  const Rational dd = d.a * d.a + d.b * d.b;
  if (dd.is_zero()) return x == s.p;
  return t.sign() >= 0 && t <= dd;
}

double corner_angle(const QVec& prev, const QVec& at, const QVec& next) {
  const Planar u = to_planar(prev - at), v = to_planar(next - at);
  const double c = (u.x * v.x + u.y * v.y) / (std::hypot(u.x, u.y) * std::hypot(v.x, v.y));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

// ---------------------------------------------------------------------------

void GeomFGParam::validate(const IdealTriangulation& tri) const {
  if (static_cast<int>(z.size()) != tri.num_triangles())
    throw InvalidInput("geometric parameter: expected " + std::to_string(tri.num_triangles()) + " triangle values");
  if (static_cast<int>(s.size()) != tri.num_oriented_edges())
    throw InvalidInput("geometric parameter: expected " + std::to_string(tri.num_oriented_edges()) + " edge values");
}

GeomFGParam GeomFGParam::scaled(const Rational& lambda) const {
  GeomFGParam r = *this;
  for (auto& x : r.z) x = lambda * x;
  for (auto& x : r.s) x = lambda * x;
  return r;
}

GeomFGParam GeomFGParam::from_json(const IdealTriangulation& tri, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("geometric parameter JSON: ") + e.what());
  }
  auto value = [](const nlohmann::json& v) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw InvalidInput("geometric parameter values must be rational strings or integers");
  };
  if (!j.contains("z") || !j.contains("s")) throw InvalidInput("geometric parameter JSON needs z and s");
  GeomFGParam p;
  for (int t = 0; t < tri.num_triangles(); ++t) {
    const std::string lab = tri.triangle_label(t);
    if (!j["z"].contains(lab)) throw InvalidInput("missing z for " + lab);
    p.z.push_back(value(j["z"][lab]));
  }
  for (int e = 0; e < tri.num_oriented_edges(); ++e) {
    const std::string lab = tri.edge_label(e);
    if (!j["s"].contains(lab)) throw InvalidInput("missing s for " + lab);
    p.s.push_back(value(j["s"][lab]));
  }
  return p;
}

GeomFGParam GeomFGParam::load(const IdealTriangulation& tri, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(tri, ss.str());
}

std::string GeomFGParam::to_json(const IdealTriangulation& tri) const {
  nlohmann::ordered_json j;
  j["z"] = nlohmann::ordered_json::object();
  j["s"] = nlohmann::ordered_json::object();
  for (int t = 0; t < tri.num_triangles(); ++t) j["z"][tri.triangle_label(t)] = z[t].str();
  for (int e = 0; e < tri.num_oriented_edges(); ++e) j["s"][tri.edge_label(e)] = s[e].str();
  return j.dump(2);
}

// ---------------------------------------------------------------------------

ClassifyReport classify(const IdealTriangulation& tri, const GeomFGParam& prm) {
  prm.validate(tri);
  ClassifyReport r;
  r.edge_case.assign(tri.num_oriented_edges(), 0);
  for (int oe = 0; oe < tri.num_oriented_edges(); ++oe) {
    const int t = tri.left(oe), u = tri.right(oe);
    const Rational& se = prm.s[oe];
    const Rational& sb = prm.s[reverse_edge(oe)];
    const std::string el = tri.edge_label(oe);
    bool ok = true;
    auto need = [&](const Rational& lhs, const Rational& rhs, const std::string& what) {
      if (lhs > rhs) return;
      ok = false;
      r.leftshift_witnesses.push_back(el + ": " + what + " = " + fmt(lhs) + " not > " + fmt(rhs));
    };
    // Each unoriented edge yields the same four inequalities from both sides;
    // report them once, from the "+" side.
    if (oe % 2 == 0) {
      need(se, -prm.zminus(t), "s(" + el + ") vs -z-(" + tri.triangle_label(t) + ")");
      need(se, -prm.zplus(u), "s(" + el + ") vs -z+(" + tri.triangle_label(u) + ")");
      need(sb, -prm.zplus(t), "s(" + tri.edge_label(reverse_edge(oe)) + ") vs -z+(" + tri.triangle_label(t) + ")");
      need(sb, -prm.zminus(u), "s(" + tri.edge_label(reverse_edge(oe)) + ") vs -z-(" + tri.triangle_label(u) + ")");
    } else {
      ok = se > -prm.zminus(t) && se > -prm.zplus(u) && sb > -prm.zplus(t) && sb > -prm.zminus(u);
    }
    if (!ok) {
      r.leftshifting = false;
    } else if (se.sign() > 0 && sb.sign() > 0) {
      r.edge_case[oe] = 1;
    } else if (se.sign() <= 0) {
      r.edge_case[oe] = 2;
    } else {
      r.edge_case[oe] = 3;
    }
    if (se.sign() < 0) {
      r.tree_of_triangles = false;
      r.tree_of_triangles_witnesses.push_back(el + ": s = " + fmt(se) + " < 0");
    }
    if (se.sign() <= 0) {
      r.tree = false;
      r.tree_witnesses.push_back(el + ": s = " + fmt(se) + " not > 0");
    }
    if (!(se.sign() < 0 || sb.sign() < 0) && oe % 2 == 0) {
      r.surface = false;
      r.surface_witnesses.push_back(el + ": s(" + el + ") = " + fmt(se) + " and s(" +
                                    tri.edge_label(reverse_edge(oe)) + ") = " + fmt(sb) + " both >= 0");
    }
  }
  for (int t = 0; t < tri.num_triangles(); ++t) {
    if (!prm.z[t].is_zero()) {
      r.tree = false;
      r.tree_witnesses.push_back(tri.triangle_label(t) + ": z = " + fmt(prm.z[t]) + " != 0");
    }
    const auto& edges = tri.triangle(t);
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const int e1 = edges[a], e2 = edges[b];
        const Rational lhs1 = -prm.s[e1] - prm.s[e2];
        const Rational lhs2 = -prm.s[reverse_edge(e1)] - prm.s[reverse_edge(e2)];
        const std::string pair = tri.triangle_label(t) + " {" + tri.edge_label(e1) + ", " + tri.edge_label(e2) + "}";
        if (!(lhs1 < prm.zminus(t))) {
          r.edgeseparating = false;
          r.edgesep_witnesses.push_back(pair + ": -s-s = " + fmt(lhs1) + " not < z- = " + fmt(prm.zminus(t)));
        }
        if (!(lhs2 < prm.zplus(t))) {
          r.edgeseparating = false;
          r.edgesep_witnesses.push_back(pair + ": -sbar-sbar = " + fmt(lhs2) + " not < z+ = " + fmt(prm.zplus(t)));
        }
      }
    }
  }
  return r;
}

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::triangle: return "triangle";
    case CellKind::segment: return "segment";
    case CellKind::rectangle: return "rectangle";
  }
  return "?";
}

// ---------------------------------------------------------------------------

A2Complex::A2Complex(const IdealTriangulation& tri, GeomFGParam prm)
    : tri_(tri), prm_(std::move(prm)), report_(classify(tri_, prm_)) {
  if (!report_.leftshifting)
    throw InvalidInput("parameter is not left-shifting: " + report_.leftshift_witnesses.front());
  const int T = tri_.num_triangles();
  static const WeylElem& lplus = weyl_with_matrix({-1, -1, 1, 0});
  static const WeylElem& lminus = weyl_with_matrix({0, 1, -1, -1});

  remark_.resize(3 * T);
  for (int t = 0; t < T; ++t) {
    const WeylElem& step = prm_.z[t].sign() < 0 ? lminus : lplus;
    WeylElem lin;
    for (int r = 0; r < 3; ++r) {
      remark_[3 * t + r] = QMap{lin, marked_vertex(t, r, 0)};
      for (int slot = 0; slot < 3; ++slot) {
        if (remark_[3 * t + r](marked_vertex(t, 0, slot)) != marked_vertex(t, r, slot))
          throw ConsistencyError("triangle remarking is not in W_aff");
      }
      lin = step * lin;
    }
  }
  to_chart_.resize(tri_.num_oriented_edges());
  for (int oe = 0; oe < tri_.num_oriented_edges(); ++oe)
    to_chart_[oe] = remark(tri_.left(oe), (tri_.slot(oe) + 1) % 3);

  cells_.resize(num_cells());
  for (int t = 0; t < T; ++t) {
    CellTemplate& c = cells_[t];
    c.kind = CellKind::triangle;
    if (prm_.z[t].is_zero()) {
      c.vertices = {QVec()};
    } else {
      for (int m = 0; m < 3; ++m) {
        c.vertices.push_back(marked_vertex(t, 0, m));
        const int oe = tri_.triangle(t)[m];
        const QMap back = to_chart_[oe].inverse();
        const QSegment g = gate_in(oe);
        if (!g.degenerate()) c.vertices.push_back(back(g.p));
      }
    }
    for (int m = 0; m < 3; ++m) {
      const int oe = tri_.triangle(t)[m];
      const QMap back = to_chart_[oe].inverse();
      const QSegment g = gate_in(oe);
      c.loci.emplace_back("gate " + tri_.edge_label(oe), QSegment{back(g.p), back(g.q)});
    }
  }
  for (int k = 0; k < tri_.num_edges(); ++k) {
    CellTemplate& c = cells_[T + k];
    const Rational& se = prm_.s[2 * k];
    const Rational& sb = prm_.s[2 * k + 1];
    if (se.sign() >= 0 && sb.sign() >= 0) {
      c.kind = CellKind::segment;
      c.vertices = {QVec(), QVec(sb, se)};
    } else {
      c.kind = CellKind::rectangle;
      c.vertices = {QVec(), QVec(sb, kZero), QVec(sb, se), QVec(kZero, se)};
    }
    c.loci.emplace_back("gate " + tri_.triangle_label(tri_.left(2 * k)), gate_in(2 * k));
    c.loci.emplace_back("gate " + tri_.triangle_label(tri_.right(2 * k)), gate_out(2 * k));
  }
  // Every gate must lie on the boundary of both adjacent cells.
  for (int oe = 0; oe < tri_.num_oriented_edges(); ++oe) {
    const QSegment g = gate_in(oe);
    const QVec xk = marked_vertex(tri_.left(oe), (tri_.slot(oe) + 1) % 3, tri_.slot(oe));
    if (!on_segment(g.p, QSegment{xk, QVec()}))
      throw ConsistencyError("gate of " + tri_.edge_label(oe) + " leaves the triangle side");
  }
}

QVec A2Complex::marked_vertex(int t, int r, int slot) const {
  switch (((slot - r) % 3 + 3) % 3) {
    case 0: return QVec();
    case 1: return QVec(-prm_.zminus(t), -prm_.zplus(t));
    default: return QVec(-prm_.zplus(t), -prm_.zminus(t));
  }
}

std::string A2Complex::cell_label(int id) const {
  if (id < tri_.num_triangles()) return tri_.triangle_label(id);
  const std::string e = tri_.edge_label(2 * (id - tri_.num_triangles()));
  return e.substr(0, e.size() - 1);
}

QMap A2Complex::flip(int oe) const {
  return QMap{WeylElem::longest(), QVec(prm_.s[oe], prm_.s[reverse_edge(oe)])};
}

QMap A2Complex::edge_chart_to_cell(int oe) const {
  return (oe & 1) ? flip(oe) : QMap::identity();
}

QSegment A2Complex::gate_in(int oe) const {
  const Rational& se = prm_.s[oe];
  const Rational& sb = prm_.s[reverse_edge(oe)];
  return {QVec(rmin(kZero, sb), rmin(kZero, se)), QVec()};
}

QSegment A2Complex::gate_out(int oe) const {
  const Rational& se = prm_.s[oe];
  const Rational& sb = prm_.s[reverse_edge(oe)];
  return {QVec(rmax(kZero, sb), rmax(kZero, se)), QVec(sb, se)};
}

QMap A2Complex::crossing(int oe) const {
  return to_chart_[oe].inverse() * flip(reverse_edge(oe)) * to_chart_[reverse_edge(oe)];
}

std::optional<QVec> A2Complex::segment_c_length(int oe) const {
  if (cells_[edge_cell_id(oe)].kind != CellKind::segment) return std::nullopt;
  return cabs(QVec(prm_.s[reverse_edge(oe)], prm_.s[oe]));
}

CellStructure A2Complex::cell_structure() const {
  // Vertex and side occurrences, each cell in its own chart.
  std::vector<int> vbase(num_cells() + 1, 0), sbase(num_cells() + 1, 0);
  auto sides_of = [&](int c) {
    const int n = static_cast<int>(cells_[c].vertices.size());
    return n == 1 ? 0 : (n == 2 ? 1 : n);
  };
  for (int c = 0; c < num_cells(); ++c) {
    vbase[c + 1] = vbase[c] + static_cast<int>(cells_[c].vertices.size());
    sbase[c + 1] = sbase[c] + sides_of(c);
  }
  const int nv = vbase.back(), ns = sbase.back();
  UnionFind vuf(nv);
  // Germs: (side, end) -> 2 * side + end.
  UnionFind guf(2 * ns);
  // Chart transition attached to each glued side occurrence.
  std::vector<std::vector<std::pair<int, QMap>>> partner(ns);
  auto side_end = [&](int c, int s, int end) {
    const int n = static_cast<int>(cells_[c].vertices.size());
    return cells_[c].vertices[(s + end) % n];
  };

  const int T = tri_.num_triangles();
  for (int oe = 0; oe < tri_.num_oriented_edges(); ++oe) {
    const int t = tri_.left(oe), ec = edge_cell_id(oe);
    // triangle canonical chart -> edge cell "+" chart
    const QMap M = edge_chart_to_cell(oe) * to_chart_[oe];
    const QSegment g0 = gate_in(oe);
    const QMap to_cell = edge_chart_to_cell(oe);
    const QSegment g{to_cell(g0.p), to_cell(g0.q)};
    const auto& tv = cells_[t].vertices;
    const auto& ev = cells_[ec].vertices;
    for (int i = 0; i < static_cast<int>(tv.size()); ++i) {
      const QVec u = M(tv[i]);
      if (!on_segment(u, g)) continue;
      for (int j = 0; j < static_cast<int>(ev.size()); ++j)
        if (ev[j] == u) vuf.unite(vbase[t] + i, vbase[ec] + j);
    }
    for (int i = 0; i < sides_of(t); ++i) {
      const QVec u0 = M(side_end(t, i, 0)), u1 = M(side_end(t, i, 1));
      if (!on_segment(u0, g) || !on_segment(u1, g)) continue;
      for (int j = 0; j < sides_of(ec); ++j) {
        const QVec v0 = side_end(ec, j, 0), v1 = side_end(ec, j, 1);
        int flipped = -1;
        if (u0 == v0 && u1 == v1) flipped = 0;
        if (u0 == v1 && u1 == v0) flipped = 1;
        if (flipped < 0) continue;
        const int si = sbase[t] + i, sj = sbase[ec] + j;
        guf.unite(2 * si, 2 * sj + flipped);
        guf.unite(2 * si + 1, 2 * sj + 1 - flipped);
        partner[si].emplace_back(sj, M);
        partner[sj].emplace_back(si, M.inverse());
      }
    }
  }
  (void)T;

  CellStructure cs;
  cs.vertices = vuf.classes();
  {
    UnionFind suf(ns);
    for (int s = 0; s < ns; ++s) {
      const int r = guf.find(2 * s);
      for (int s2 = 0; s2 < ns; ++s2)
        if (guf.find(2 * s2) == r || guf.find(2 * s2 + 1) == r) suf.unite(s, s2);
    }
    cs.edges = suf.classes();
  }
  for (const auto& c : cells_) cs.faces += c.two_dimensional();

  // Links. Corners connect the germ of the incoming side with the germ of the
  // outgoing side.
  struct Corner {
    int cell, germ_in, germ_out, side_in, side_out;
    double angle;
  };
  std::vector<Corner> corners;
  for (int c = 0; c < num_cells(); ++c) {
    if (!cells_[c].two_dimensional()) continue;
    const auto& v = cells_[c].vertices;
    const int n = static_cast<int>(v.size());
    for (int j = 0; j < n; ++j) {
      const int sin = sbase[c] + (j + n - 1) % n, sout = sbase[c] + j;
      corners.push_back({c, guf.find(2 * sin + 1), guf.find(2 * sout), sin, sout,
                         corner_angle(v[(j + n - 1) % n], v[j], v[(j + 1) % n])});
    }
  }
  // Vertex class of every germ.
  std::vector<int> germ_vertex(2 * ns);
  for (int c = 0; c < num_cells(); ++c) {
    const int n = static_cast<int>(cells_[c].vertices.size());
    for (int s = 0; s < sides_of(c); ++s) {
      germ_vertex[guf.find(2 * (sbase[c] + s))] = vuf.find(vbase[c] + s);
      germ_vertex[guf.find(2 * (sbase[c] + s) + 1)] = vuf.find(vbase[c] + (s + 1) % n);
    }
  }
  std::vector<int> vclass;
  for (int i = 0; i < nv; ++i)
    if (vuf.find(i) == i) vclass.push_back(i);
  for (int vc : vclass) {
    VertexLink link;
    link.min_loop = std::numeric_limits<double>::infinity();
    std::vector<int> nodes;
    for (int g = 0; g < 2 * ns; ++g)
      if (guf.find(g) == g && germ_vertex[g] == vc) nodes.push_back(g);
    link.germs = static_cast<int>(nodes.size());
    std::vector<int> arcs;
    for (int i = 0; i < static_cast<int>(corners.size()); ++i)
      if (germ_vertex[corners[i].germ_in] == vc) arcs.push_back(i);
    std::map<int, std::vector<int>> adj;
    for (int i : arcs) {
      link.total_angle += corners[i].angle;
      adj[corners[i].germ_in].push_back(i);
      adj[corners[i].germ_out].push_back(i);
    }
    // Shortest injective loop: for each arc, shortest path between its ends
    // avoiding it.
    for (int skip : arcs) {
      const int src = corners[skip].germ_in, dst = corners[skip].germ_out;
      std::map<int, double> dist;
      using QE = std::pair<double, int>;
      std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
      dist[src] = 0;
      pq.push({0, src});
      while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x]) continue;
        for (int a : adj[x]) {
          if (a == skip) continue;
          const int y = corners[a].germ_in == x ? corners[a].germ_out : corners[a].germ_in;
          const double nd = d + corners[a].angle;
          if (!dist.count(y) || nd < dist[y]) {
            dist[y] = nd;
            pq.push({nd, y});
          }
        }
      }
      if (dist.count(dst)) link.min_loop = std::min(link.min_loop, dist[dst] + corners[skip].angle);
    }
    bool cycle = !nodes.empty();
    for (int g : nodes) cycle = cycle && adj[g].size() == 2;
    if (cycle && std::isfinite(link.min_loop) && std::abs(link.min_loop - link.total_angle) < 1e-9) {
      link.interior = true;
      // Walk around the vertex composing chart transitions.
      QMap acc = QMap::identity();
      int arc = arcs.front();
      int germ = corners[arc].germ_out;
      int side = corners[arc].side_out;
      for (std::size_t step = 0; step < arcs.size(); ++step) {
        const auto& nxt = adj[germ];
        const int other = nxt[0] == arc ? nxt[1] : nxt[0];
        // Transition across the shared side from cell(arc) to cell(other).
        const int oside = corners[other].germ_in == germ ? corners[other].side_in : corners[other].side_out;
        const QMap* map = nullptr;
        for (const auto& [s2, m] : partner[side])
          if (s2 == oside) map = &m;
        if (!map) {
          link.holonomy_trivial = false;
          break;
        }
        acc = *map * acc;
        arc = other;
        germ = corners[arc].germ_in == germ ? corners[arc].germ_out : corners[arc].germ_in;
        side = corners[arc].germ_out == germ ? corners[arc].side_out : corners[arc].side_in;
      }
      link.holonomy_trivial = link.holonomy_trivial && acc == QMap::identity();
    }
    cs.links.push_back(link);
  }
  return cs;
}

A2Complex build_complex(const IdealTriangulation& tri, const GeomFGParam& prm) { return A2Complex(tri, prm); }

Planar to_planar(const DVec& v) {
  static const double k = 1.0 / std::sqrt(3.0);
  return {k * (2 * v.a + v.b), v.b};
}

Planar to_planar(const QVec& v) { return to_planar(to_double(v)); }

}  // namespace a2fg
