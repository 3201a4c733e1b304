#pragma once

#include "gmd/kernels.hpp"

namespace gmd::kernels {

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
PowerSums power_sums(const double* x, std::size_t n, double center);
double pair_abs_sum(const double* x, std::size_t n);
double pair_sq_sum(const double* x, std::size_t n);
double pair_quadratic_product(const double* d, const double* g, std::size_t n,
                              double c, double s);
double pair_additive_product(const double* u, const double* w, const double* g,
                             std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GMD_HAVE_AVX2_KERNELS 1
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
PowerSums power_sums(const double* x, std::size_t n, double center);
double pair_abs_sum(const double* x, std::size_t n);
double pair_sq_sum(const double* x, std::size_t n);
double pair_quadratic_product(const double* d, const double* g, std::size_t n,
                              double c, double s);
double pair_additive_product(const double* u, const double* w, const double* g,
                             std::size_t n);
}  // namespace avx2
#endif

}  // namespace gmd::kernels
