#include <cstdlib>
#include <string_view>

#include "spinlab/simd/kernels.hpp"

namespace spinlab::simd {

namespace {

const KernelTable& select() {
  const char* env = std::getenv("SPINLAB_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

}  // namespace spinlab::simd
