#include <cstdlib>
#include <cstring>

#include "workbench/kernels/kernels.h"

namespace wb::kernels {

const KernelTable* avx2_compiled_table();

const KernelTable* avx2_table() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? avx2_compiled_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("WORKBENCH_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
    const KernelTable* t = avx2_table();
    return t ? t : &scalar_table();
  }();
  return *chosen;
}

}  // namespace wb::kernels
