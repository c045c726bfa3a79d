#include "a2fg/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace a2fg::simd {

void minplus_avx2(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                  const float* qy, std::size_t m, float* out, std::int32_t* arg) {
  const float inf = std::numeric_limits<float>::infinity();
  const std::size_t n8 = n & ~std::size_t(7);
  alignas(32) float lv[8];
  alignas(32) std::int32_t li[8];
  for (std::size_t j = 0; j < m; ++j) {
    const __m256 bx = _mm256_set1_ps(qx[j]);
    const __m256 by = _mm256_set1_ps(qy[j]);
    __m256 best = _mm256_set1_ps(inf);
    __m256i bidx = _mm256_setzero_si256();
    __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
    const __m256i step = _mm256_set1_epi32(8);
    for (std::size_t i = 0; i < n8; i += 8) {
      const __m256 dx = _mm256_sub_ps(_mm256_loadu_ps(px + i), bx);
      const __m256 dy = _mm256_sub_ps(_mm256_loadu_ps(py + i), by);
      const __m256 d = _mm256_sqrt_ps(_mm256_add_ps(_mm256_mul_ps(dx, dx), _mm256_mul_ps(dy, dy)));
      const __m256 v = _mm256_add_ps(_mm256_loadu_ps(prev + i), d);
      const __m256 lt = _mm256_cmp_ps(v, best, _CMP_LT_OQ);
      best = _mm256_blendv_ps(best, v, lt);
      bidx = _mm256_castps_si256(_mm256_blendv_ps(_mm256_castsi256_ps(bidx), _mm256_castsi256_ps(idx), lt));
      idx = _mm256_add_epi32(idx, step);
    }
    _mm256_store_ps(lv, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(li), bidx);
    float b = inf;
    std::int32_t bi = 0;
    for (int k = 0; k < 8; ++k) {
      if (lv[k] < b || (lv[k] == b && li[k] < bi)) {
        b = lv[k];
        bi = li[k];
      }
    }
    for (std::size_t i = n8; i < n; ++i) {
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
