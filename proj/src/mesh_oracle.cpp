#include "a2fg/a2_complex.hpp"
#include "a2fg/errors.hpp"
#include "a2fg/kernels.hpp"

#include <cmath>
#include <limits>

namespace a2fg {

namespace {

struct Samples {
  std::vector<DVec> root;
  std::vector<float> x, y;
};

Samples sample_gate(const Corridor::Portal& g, int resolution, Planar origin) {
  Samples s;
  const DVec a = to_double(g.left), b = to_double(g.right);
  const int n = g.left == g.right ? 1 : resolution;
  for (int k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    s.root.push_back(a + t * (b - a));
  }
  for (const auto& v : s.root) {
    const Planar p = to_planar(v);
    s.x.push_back(static_cast<float>(p.x - origin.x));
    s.y.push_back(static_cast<float>(p.y - origin.y));
  }
  return s;
}

Samples single(const DVec& v, Planar origin) {
  Samples s;
  s.root.push_back(v);
  const Planar p = to_planar(v);
  s.x.push_back(static_cast<float>(p.x - origin.x));
  s.y.push_back(static_cast<float>(p.y - origin.y));
  return s;
}

double polyline_length(const std::vector<DVec>& pts) {
  double l = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) l += norm_euc(pts[i + 1] - pts[i]);
  return l;
}

/// DP from a single source through `layers`; returns the chosen sample per
/// layer (source excluded) and the float length.
std::vector<int> run_dp(const std::vector<Samples>& layers, float* total) {
  const simd::MinPlusFn fn = simd::minplus();
  std::vector<std::vector<std::int32_t>> args(layers.size());
  std::vector<float> prev(1, 0.0f), cur;
  for (std::size_t l = 1; l < layers.size(); ++l) {
    const Samples& p = layers[l - 1];
    const Samples& q = layers[l];
    cur.assign(q.x.size(), 0.0f);
    args[l].assign(q.x.size(), 0);
    fn(p.x.data(), p.y.data(), prev.data(), p.x.size(), q.x.data(), q.y.data(), q.x.size(), cur.data(),
       args[l].data());
    prev.swap(cur);
  }
  *total = prev[0];
  std::vector<int> pick(layers.size(), 0);
  for (std::size_t l = layers.size() - 1; l > 0; --l) pick[l - 1] = args[l][pick[l]];
  return pick;
}

}  // namespace

MeshPath dijkstra_mesh_oracle(const DVec& start, const std::vector<Corridor::Portal>& gates, const DVec& end,
                              int resolution) {
  if (resolution < 2) throw InvalidInput("mesh oracle: resolution must be >= 2");
  const Planar origin = to_planar(start);
  std::vector<Samples> layers;
  layers.push_back(single(start, origin));
  for (const auto& g : gates) layers.push_back(sample_gate(g, resolution, origin));
  layers.push_back(single(end, origin));
  float total = 0;
  const std::vector<int> pick = run_dp(layers, &total);
  MeshPath out;
  for (std::size_t l = 0; l < layers.size(); ++l) out.polyline.push_back(layers[l].root[pick[l]]);
  out.length = polyline_length(out.polyline);
  return out;
}

MeshPath dijkstra_mesh_oracle_periodic(const std::vector<Corridor::Portal>& gates, const QMap& h, int resolution) {
  if (resolution < 2) throw InvalidInput("mesh oracle: resolution must be >= 2");
  if (gates.empty()) throw InvalidInput("mesh oracle: no gates");
  const Planar origin = to_planar(to_double(gates[0].left));
  const Samples first = sample_gate(gates[0], resolution, origin);
  std::vector<Samples> layers(gates.size() + 1);
  for (std::size_t g = 1; g < gates.size(); ++g) layers[g] = sample_gate(gates[g], resolution, origin);
  const DVec ht = to_double(h.translate);
  MeshPath best;
  best.length = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < first.root.size(); ++j) {
    const DVec s = first.root[j];
    layers[0] = single(s, origin);
    layers.back() = single(h.linear.apply(s) + ht, origin);
    float total = 0;
    const std::vector<int> pick = run_dp(layers, &total);
    std::vector<DVec> poly;
    for (std::size_t l = 0; l < layers.size(); ++l) poly.push_back(layers[l].root[pick[l]]);
    const double len = polyline_length(poly);
    if (len < best.length) {
      best.length = len;
      best.polyline = std::move(poly);
    }
  }
  return best;
}

}  // namespace a2fg
