#include "a2fg/errors.hpp"
#include "a2fg/field.hpp"

namespace a2fg {

std::vector<Rational> newton_polygon_root_logs(const std::vector<RatFunc>& coeffs) {
  if (coeffs.size() < 2) throw InvalidInput("Newton polygon needs degree >= 1");
  if (coeffs.front().is_zero()) throw InvalidInput("zero constant term: polynomial has a zero root");
  if (coeffs.back().is_zero()) throw InvalidInput("zero leading coefficient");

  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) pts.push_back({static_cast<long>(i), coeffs[i].valuation()});
  }
  // Lower hull by monotone chain; points already sorted by x.
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b unless it lies strictly below segment a-p.
      const long cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<Rational> out;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const long w = hull[k + 1].x - hull[k].x;
    const Rational slope(hull[k + 1].y - hull[k].y, w);
    for (long r = 0; r < w; ++r) out.push_back(slope);
  }
  return out;
}

}  // namespace a2fg
