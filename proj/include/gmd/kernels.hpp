#pragma once

// Data-parallel inner loops shared by the statistics modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is picked once at startup from CPU feature
// bits; setting GMD_SIMD=scalar in the environment forces the reference
// path. Variants agree with the reference up to summation-order rounding.

#include <cstddef>
#include <span>

namespace gmd::kernels {

// Sums of (x - center)^k for k = 2..6.
struct PowerSums {
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double s5 = 0.0;
  double s6 = 0.0;
};

struct KernelTable {
  const char* name;

  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  PowerSums (*power_sums)(const double* x, std::size_t n, double center);

  // Sum over k < l of |x_k - x_l| and of (x_k - x_l)^2.
  double (*pair_abs_sum)(const double* x, std::size_t n);
  double (*pair_sq_sum)(const double* x, std::size_t n);

  // Sum over k < l of [(d_k - d_l)^2 + c - s (d_k^2 + d_l^2)] g_k g_l.
  double (*pair_quadratic_product)(const double* d, const double* g,
                                   std::size_t n, double c, double s);

  // Sum over k < l of (u_k + w_l) g_k g_l.
  double (*pair_additive_product)(const double* u, const double* w,
                                  const double* g, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the binary or the CPU lacks AVX2 + FMA.
const KernelTable* avx2_kernels();

// The table selected for this process.
const KernelTable& active_kernels();

inline double sum(std::span<const double> x) {
  return active_kernels().sum(x.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline PowerSums power_sums(std::span<const double> x, double center) {
  return active_kernels().power_sums(x.data(), x.size(), center);
}

inline double pair_abs_sum(std::span<const double> x) {
  return active_kernels().pair_abs_sum(x.data(), x.size());
}

inline double pair_sq_sum(std::span<const double> x) {
  return active_kernels().pair_sq_sum(x.data(), x.size());
}

}  // namespace gmd::kernels
