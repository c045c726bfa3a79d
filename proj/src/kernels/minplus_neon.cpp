#include "a2fg/kernels.hpp"

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace a2fg::simd {

void minplus_neon(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                  const float* qy, std::size_t m, float* out, std::int32_t* arg) {
  const float inf = std::numeric_limits<float>::infinity();
  const std::size_t n4 = n & ~std::size_t(3);
  float lv[4];
  std::int32_t li[4];
  const std::int32_t init[4] = {0, 1, 2, 3};
  for (std::size_t j = 0; j < m; ++j) {
    const float32x4_t bx = vdupq_n_f32(qx[j]);
    const float32x4_t by = vdupq_n_f32(qy[j]);
    float32x4_t best = vdupq_n_f32(inf);
    int32x4_t bidx = vdupq_n_s32(0);
    int32x4_t idx = vld1q_s32(init);
    const int32x4_t step = vdupq_n_s32(4);
    for (std::size_t i = 0; i < n4; i += 4) {
      const float32x4_t dx = vsubq_f32(vld1q_f32(px + i), bx);
      const float32x4_t dy = vsubq_f32(vld1q_f32(py + i), by);
      const float32x4_t d = vsqrtq_f32(vaddq_f32(vmulq_f32(dx, dx), vmulq_f32(dy, dy)));
      const float32x4_t v = vaddq_f32(vld1q_f32(prev + i), d);
      const uint32x4_t lt = vcltq_f32(v, best);
      best = vbslq_f32(lt, v, best);
      bidx = vbslq_s32(lt, idx, bidx);
      idx = vaddq_s32(idx, step);
    }
    vst1q_f32(lv, best);
    vst1q_s32(li, bidx);
    float b = inf;
    std::int32_t bi = 0;
    for (int k = 0; k < 4; ++k) {
      if (lv[k] < b || (lv[k] == b && li[k] < bi)) {
        b = lv[k];
        bi = li[k];
      }
    }
    for (std::size_t i = n4; i < n; ++i) {
      const float dx = px[i] - qx[j];
      const float dy = py[i] - qy[j];
      const float v = prev[i] + std::sqrt(dx * dx + dy * dy);
      if (v < b) {
        b = v;
        bi = static_cast<std::int32_t>(i);
      }
    }
    out[j] = b;
    arg[j] = bi;
  }
}

}  // namespace a2fg::simd
