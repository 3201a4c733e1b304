#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace gmd::kernels {

namespace {

constexpr KernelTable kScalarTable{
    "scalar",
    &scalar::sum,
    &scalar::dot,
    &scalar::power_sums,
    &scalar::pair_abs_sum,
    &scalar::pair_sq_sum,
    &scalar::pair_quadratic_product,
    &scalar::pair_additive_product,
};

#if defined(GMD_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{
    "avx2",
    &avx2::sum,
    &avx2::dot,
    &avx2::power_sums,
    &avx2::pair_abs_sum,
    &avx2::pair_sq_sum,
    &avx2::pair_quadratic_product,
    &avx2::pair_additive_product,
};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("GMD_SIMD");
      env != nullptr && std::string_view(env) == "scalar") {
    return kScalarTable;
  }
  if (const KernelTable* wide = avx2_kernels()) return *wide;
  return kScalarTable;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalarTable; }

const KernelTable* avx2_kernels() {
#if defined(GMD_HAVE_AVX2_KERNELS)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace gmd::kernels
