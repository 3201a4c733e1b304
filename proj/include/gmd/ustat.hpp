#pragma once

// Sample-side statistics: U_G, U_V, the L-statistic form of U_G and the
// jackknife variance estimator of a degree-two U-statistic under sampling
// without replacement.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gmd/core.hpp"

namespace gmd {

// One sample X_1..X_n drawn without replacement from a population of size
// parent_size. Carries the population size so the finite-population
// correction is always available.
class SampleDraw {
 public:
  SampleDraw() = default;
  // Throws SizeError unless 2 <= n < parent_size.
  SampleDraw(std::span<const double> values, std::size_t parent_size);

  std::size_t size() const { return values_.size(); }
  std::size_t parent_size() const { return parent_size_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> order_stats() const { return ordered_.values(); }
  std::span<const double> spacings() const { return ordered_.spacings(); }
  std::span<const double> weights() const { return ordered_.weights(); }
  double mean() const { return ordered_.mean(); }
  double moment(int k) const { return ordered_.moment(k); }
  const OrderedValues& ordered() const { return ordered_; }

 private:
  std::vector<double> values_;
  OrderedValues ordered_;
  std::size_t parent_size_ = 0;
};

double u_statistic(const SampleDraw& s, StatKind kind);

// C(n,2)^-1 sum_j (2j - n - 1) X_{j:n}.
double gmd_order_form(const SampleDraw& s);

// U_{n-1} of the sample with the i-th order statistic removed, for every i.
std::vector<double> leave_one_out(const SampleDraw& s, StatKind kind);

// (1 - n/N) (n-1)/n sum_i (U_{n-1}^{(i)} - mean)^2. SizeError for n < 3.
double jackknife_variance(const SampleDraw& s, StatKind kind);

// (U - center) / S. DegenerateSampleError when S^2 == 0.
double studentized_value(const SampleDraw& s, StatKind kind, double center);

// Lean path used inside Monte Carlo loops: U and S^2 from already sorted
// values without building a SampleDraw.
struct UAndJackknife {
  double u = 0.0;
  double s_sq = 0.0;
};
UAndJackknife u_and_jackknife_sorted(std::span<const double> sorted,
                                     StatKind kind, std::size_t parent_size);

// (U - center)/S from sorted values, or nullopt when S^2 == 0.
std::optional<double> studentize_sorted(std::span<const double> sorted,
                                        StatKind kind, std::size_t parent_size,
                                        double center);

}  // namespace gmd
