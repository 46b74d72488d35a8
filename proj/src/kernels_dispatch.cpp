#include <cstdlib>
#include <cstring>

#include "tdesign/kernels.hpp"

namespace tdesign::kernels {

namespace {

const Ops& pick() {
  const bool cpu_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  const char* force = std::getenv("TDESIGN_KERNEL");
  if (force != nullptr) {
    if (std::strcmp(force, "scalar") == 0) return scalar_ops();
    if (std::strcmp(force, "avx2") == 0 && cpu_ok) return *avx2_ops();
  }
  return cpu_ok ? *avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& chosen = pick();
  return chosen;
}

}  // namespace tdesign::kernels
