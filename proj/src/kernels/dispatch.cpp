#include "a2fg/kernels.hpp"

namespace a2fg::simd {

MinPlusFn minplus_for(std::string_view isa) {
  if (isa == "scalar") return minplus_scalar;
#if defined(__x86_64__) || defined(__i386__)
  if (isa == "avx2" && __builtin_cpu_supports("avx2")) return minplus_avx2;
#endif
#if defined(__aarch64__)
  if (isa == "neon") return minplus_neon;
#endif
  return nullptr;
}

std::string_view minplus_isa() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return "avx2";
#endif
#if defined(__aarch64__)
  return "neon";
#endif
  return "scalar";
}

MinPlusFn minplus() {
  static const MinPlusFn fn = minplus_for(minplus_isa());
  return fn;
}

}  // namespace a2fg::simd
