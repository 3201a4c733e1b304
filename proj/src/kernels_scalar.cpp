#include "kernels_impl.hpp"

#include <cmath>

namespace gmd::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

PowerSums power_sums(const double* x, std::size_t n, double center) {
  PowerSums p;
  for (std::size_t i = 0; i < n; ++i) {
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

double pair_abs_sum(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double row = 0.0;
    for (std::size_t l = k + 1; l < n; ++l) row += std::fabs(x[k] - x[l]);
    total += row;
  }
  return total;
}

double pair_sq_sum(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double row = 0.0;
    for (std::size_t l = k + 1; l < n; ++l) {
      const double d = x[k] - x[l];
      row += d * d;
    }
    total += row;
  }
  return total;
}

double pair_quadratic_product(const double* d, const double* g, std::size_t n,
                              double c, double s) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dk = d[k];
    const double base = c - s * dk * dk;
    double row = 0.0;
    for (std::size_t l = k + 1; l < n; ++l) {
      const double diff = dk - d[l];
      row += (diff * diff + base - s * d[l] * d[l]) * g[l];
    }
    total += row * g[k];
  }
  return total;
}

double pair_additive_product(const double* u, const double* w, const double* g,
                             std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double row = 0.0;
    for (std::size_t l = k + 1; l < n; ++l) row += (u[k] + w[l]) * g[l];
    total += row * g[k];
  }
  return total;
}

}  // namespace gmd::kernels::scalar
