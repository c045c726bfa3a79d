#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace a2fg::simd {

/// out[j] = min_i prev[i] + |p_i - q_j| and arg[j] = the first minimizing i.
using MinPlusFn = void (*)(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                           const float* qy, std::size_t m, float* out, std::int32_t* arg);

void minplus_scalar(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                    const float* qy, std::size_t m, float* out, std::int32_t* arg);
#if defined(__x86_64__) || defined(__i386__)
void minplus_avx2(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                  const float* qy, std::size_t m, float* out, std::int32_t* arg);
#endif
#if defined(__aarch64__)
void minplus_neon(const float* px, const float* py, const float* prev, std::size_t n, const float* qx,
                  const float* qy, std::size_t m, float* out, std::int32_t* arg);
#endif

/// Best kernel for the running CPU.
MinPlusFn minplus();
std::string_view minplus_isa();
/// Kernel by name ("scalar", "avx2", "neon"); nullptr when unavailable.
MinPlusFn minplus_for(std::string_view isa);

}  // namespace a2fg::simd
