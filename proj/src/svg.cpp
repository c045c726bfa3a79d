#include "a2fg/a2_complex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace a2fg {

namespace {

constexpr double kScale = 40.0;
constexpr double kPad = 30.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
  void add(Planar p) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  double w() const { return std::max(x1 - x0, 1.0); }
  double h() const { return std::max(y1 - y0, 1.0); }
};

class Canvas {
 public:
  Canvas(double ox, double oy) : ox_(ox), oy_(oy) {}
  std::string pt(const QVec& v) const {
    const Planar p = to_planar(v);
    return num(ox_ + kScale * p.x) + "," + num(oy_ - kScale * p.y);
  }
  double sx(const QVec& v) const { return ox_ + kScale * to_planar(v).x; }
  double sy(const QVec& v) const { return oy_ - kScale * to_planar(v).y; }

 private:
  double ox_, oy_;
};

void polygon(std::ostringstream& os, const Canvas& cv, const std::vector<QVec>& poly, const char* fill) {
  if (poly.size() == 1) {
    os << "<circle cx=\"" << num(cv.sx(poly[0])) << "\" cy=\"" << num(cv.sy(poly[0]))
       << "\" r=\"3\" fill=\"black\"/>\n";
  } else if (poly.size() == 2) {
    os << "<polyline points=\"" << cv.pt(poly[0]) << ' ' << cv.pt(poly[1])
       << "\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>\n";
  } else {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << cv.pt(poly[i]);
    os << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
}

void gate(std::ostringstream& os, const Canvas& cv, const QVec& p, const QVec& q) {
  if (p == q) {
    os << "<circle cx=\"" << num(cv.sx(p)) << "\" cy=\"" << num(cv.sy(p))
       << "\" r=\"4\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
  } else {
    os << "<line x1=\"" << num(cv.sx(p)) << "\" y1=\"" << num(cv.sy(p)) << "\" x2=\"" << num(cv.sx(q))
       << "\" y2=\"" << num(cv.sy(q)) << "\" stroke=\"#c0392b\" stroke-width=\"3\"/>\n";
  }
}

void text(std::ostringstream& os, double x, double y, const std::string& s, int size = 12) {
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"monospace\" font-size=\"" << size
     << "\">" << s << "</text>\n";
}

/// Singular rays at the chart origin; type-p rays carry a marker.
void singular_rays(std::ostringstream& os, const Canvas& cv, double r) {
  static const int dirs[6][2] = {{1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {-1, 0}};
  for (int k = 0; k < 6; ++k) {
    const QVec d(dirs[k][0], dirs[k][1]);
    const Planar p = to_planar(d);
    const double n = std::hypot(p.x, p.y);
    const double x = cv.sx(QVec()) + kScale * r * p.x / n, y = cv.sy(QVec()) - kScale * r * p.y / n;
    os << "<line x1=\"" << num(cv.sx(QVec())) << "\" y1=\"" << num(cv.sy(QVec())) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(y) << "\" stroke=\"#999\" stroke-width=\"0.5\" stroke-dasharray=\"3,2\"/>\n";
    if (k < 3) text(os, x - 4, y + 4, "&#9655;", 10);
  }
}

std::string header(double w, double h) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string export_svg(const A2Complex& cx) {
  std::ostringstream body;
  double x = kPad, rowh = 0, width = 0, y = kPad;
  const double maxw = 900;
  for (int id = 0; id < cx.num_cells(); ++id) {
    const CellTemplate& c = cx.cell(id);
    Box b;
    b.add(to_planar(QVec()));
    for (const auto& v : c.vertices) b.add(to_planar(v));
    const double pw = kScale * b.w() + 2 * kPad, ph = kScale * b.h() + 3 * kPad;
    if (x + pw > maxw && x > kPad) {
      x = kPad;
      y += rowh;
      rowh = 0;
    }
    const Canvas cv(x + kPad - kScale * b.x0, y + 2 * kPad + kScale * b.y1);
    std::string label = cx.cell_label(id) + " " + to_string(c.kind);
    if (id >= cx.triangulation().num_triangles()) {
      const int oe = 2 * (id - cx.triangulation().num_triangles());
      if (auto cl = cx.segment_c_length(oe)) label += " C=(" + cl->a.str() + "," + cl->b.str() + ")";
    } else {
      label += " z=" + cx.param().z[id].str();
    }
    text(body, x + 4, y + 14, label);
    singular_rays(body, cv, 0.6);
    polygon(body, cv, c.vertices, "#e8eef7");
    for (const auto& [name, seg] : c.loci) gate(body, cv, seg.p, seg.q);
    x += pw;
    rowh = std::max(rowh, ph);
    width = std::max(width, x);
  }
  y += rowh;
  return header(width + kPad, y + kPad) + body.str() + "</svg>\n";
}

std::string export_svg(const Corridor& cor) {
  Box b;
  for (const auto& c : cor.cells)
    for (const auto& v : c.polygon) b.add(to_planar(v));
  std::ostringstream body;
  const Canvas cv(kPad - kScale * b.x0, kPad + kScale * b.y1);
  for (std::size_t i = 0; i < cor.cells.size(); ++i)
    polygon(body, cv, cor.cells[i].polygon, i % 2 == 0 ? "#e8eef7" : "#f7efe0");
  for (std::size_t g = 0; g < cor.gates.size(); ++g) {
    gate(body, cv, cor.gates[g].left, cor.gates[g].right);
    text(body, cv.sx(cor.gates[g].left) + 3, cv.sy(cor.gates[g].left) - 3, std::to_string(g), 9);
  }
  singular_rays(body, cv, 0.8);
  return header(kScale * b.w() + 2 * kPad, kScale * b.h() + 2 * kPad) + body.str() + "</svg>\n";
}

}  // namespace a2fg
