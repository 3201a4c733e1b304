// AVX2/FMA variants of the kernels in kernels_scalar.cpp.
//
// The translation unit is compiled with the default target; each function
// opts into AVX2 through a target attribute so nothing here leaks wide
// instructions into code reachable on older CPUs.

#include "kernels_impl.hpp"

#if defined(GMD_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cmath>

#define GMD_AVX2 __attribute__((target("avx2,fma")))

namespace gmd::kernels::avx2 {

namespace {

GMD_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  const __m128d sh = _mm_unpackhi_pd(s, s);
  return _mm_cvtsd_f64(_mm_add_sd(s, sh));
}

GMD_AVX2 inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

}  // namespace

GMD_AVX2 double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

GMD_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

GMD_AVX2 PowerSums power_sums(const double* x, std::size_t n, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d a2 = _mm256_setzero_pd();
  __m256d a3 = _mm256_setzero_pd();
  __m256d a4 = _mm256_setzero_pd();
  __m256d a5 = _mm256_setzero_pd();
  __m256d a6 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    const __m256d d2 = _mm256_mul_pd(d, d);
    const __m256d d3 = _mm256_mul_pd(d2, d);
    a2 = _mm256_add_pd(a2, d2);
    a3 = _mm256_add_pd(a3, d3);
    a4 = _mm256_fmadd_pd(d2, d2, a4);
    a5 = _mm256_fmadd_pd(d3, d2, a5);
    a6 = _mm256_fmadd_pd(d3, d3, a6);
  }
  PowerSums p{hsum(a2), hsum(a3), hsum(a4), hsum(a5), hsum(a6)};
  for (; i < n; ++i) {
    const double d = x[i] - center;
    const double d2 = d * d;
    const double d3 = d2 * d;
    p.s2 += d2;
    p.s3 += d3;
    p.s4 += d2 * d2;
    p.s5 += d3 * d2;
    p.s6 += d3 * d3;
  }
  return p;
}

GMD_AVX2 double pair_abs_sum(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const __m256d xk = _mm256_set1_pd(x[k]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t l = k + 1;
    for (; l + 4 <= n; l += 4) {
      acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(xk, _mm256_loadu_pd(x + l))));
    }
    double row = hsum(acc);
    for (; l < n; ++l) row += std::fabs(x[k] - x[l]);
    total += row;
  }
  return total;
}

GMD_AVX2 double pair_sq_sum(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const __m256d xk = _mm256_set1_pd(x[k]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t l = k + 1;
    for (; l + 4 <= n; l += 4) {
      const __m256d d = _mm256_sub_pd(xk, _mm256_loadu_pd(x + l));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    double row = hsum(acc);
    for (; l < n; ++l) {
      const double d = x[k] - x[l];
      row += d * d;
    }
    total += row;
  }
  return total;
}

GMD_AVX2 double pair_quadratic_product(const double* d, const double* g,
                                       std::size_t n, double c, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dk = d[k];
    const double base = c - s * dk * dk;
    const __m256d vdk = _mm256_set1_pd(dk);
    const __m256d vbase = _mm256_set1_pd(base);
    __m256d acc = _mm256_setzero_pd();
    std::size_t l = k + 1;
    for (; l + 4 <= n; l += 4) {
      const __m256d dl = _mm256_loadu_pd(d + l);
      const __m256d diff = _mm256_sub_pd(vdk, dl);
      // diff^2 + base - s * dl^2
      __m256d term = _mm256_fmadd_pd(diff, diff, vbase);
      term = _mm256_fnmadd_pd(vs, _mm256_mul_pd(dl, dl), term);
      acc = _mm256_fmadd_pd(term, _mm256_loadu_pd(g + l), acc);
    }
    double row = hsum(acc);
    for (; l < n; ++l) {
      const double diff = dk - d[l];
      row += (diff * diff + base - s * d[l] * d[l]) * g[l];
    }
    total += row * g[k];
  }
  return total;
}

GMD_AVX2 double pair_additive_product(const double* u, const double* w,
                                      const double* g, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const __m256d uk = _mm256_set1_pd(u[k]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t l = k + 1;
    for (; l + 4 <= n; l += 4) {
      const __m256d term = _mm256_add_pd(uk, _mm256_loadu_pd(w + l));
      acc = _mm256_fmadd_pd(term, _mm256_loadu_pd(g + l), acc);
    }
    double row = hsum(acc);
    for (; l < n; ++l) row += (u[k] + w[l]) * g[l];
    total += row * g[k];
  }
  return total;
}

}  // namespace gmd::kernels::avx2

#endif  // GMD_HAVE_AVX2_KERNELS
