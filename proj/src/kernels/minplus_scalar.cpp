#include "a2fg/kernels.hpp"

#include <cmath>
#include <limits>

namespace a2fg::simd {

void minplus_scalar(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                    const float* qy, std::size_t m, float* out, std::int32_t* arg) {
  for (std::size_t j = 0; j < m; ++j) {
    float best = std::numeric_limits<float>::infinity();
    std::int32_t bi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const float dx = px[i] - qx[j];
      const float dy = py[i] - qy[j];
      const float v = prev[i] + std::sqrt(dx * dx + dy * dy);
      if (v < best) {
        best = v;
        bi = static_cast<std::int32_t>(i);
      }
    }
    out[j] = best;
    arg[j] = bi;
  }
}

}  // namespace a2fg::simd
