#pragma once

// Finite population model: sorted values, spacings and central moments,
// plus the two scale parameters G (mean absolute pair difference) and
// V (half mean squared pair difference).

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gmd {

enum class StatKind { Gmd, Var };

std::string_view to_string(StatKind kind);

// Sorted values with their spacings, rank weights (2i - M)/M and central
// moments of order 2..6. Shared by populations and samples.
class OrderedValues {
 public:
  OrderedValues() = default;
  // Sorts a copy of `values`. Throws SizeError for fewer than two values and
  // DataError for non-finite entries.
  explicit OrderedValues(std::span<const double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  // x_{i+1} - x_i for i = 1..M-1 (stored zero-based).
  std::span<const double> spacings() const { return spacings_; }
  // (2i - M) / M for i = 1..M-1.
  std::span<const double> weights() const { return weights_; }
  double mean() const { return mean_; }
  // Central moment of order k in 2..6, normalised by M.
  double moment(int k) const;

 private:
  std::vector<double> values_;
  std::vector<double> spacings_;
  std::vector<double> weights_;
  double mean_ = 0.0;
  std::array<double, 5> moments_{};  // orders 2..6
};

// A fixed finite population x_1 <= ... <= x_N. Immutable once built.
class PopulationFrame {
 public:
  PopulationFrame() = default;
  explicit PopulationFrame(OrderedValues ordered) : ordered_(std::move(ordered)) {}

  std::size_t size() const { return ordered_.size(); }
  std::span<const double> values() const { return ordered_.values(); }
  std::span<const double> spacings() const { return ordered_.spacings(); }
  std::span<const double> weights() const { return ordered_.weights(); }
  double mean() const { return ordered_.mean(); }
  double moment(int k) const { return ordered_.moment(k); }
  const OrderedValues& ordered() const { return ordered_; }

 private:
  OrderedValues ordered_;
};

PopulationFrame build_population(std::span<const double> raw);

// G or V. Uses the O(N) spacing form; see pair_scale for the O(N^2) sum.
double population_scale(const PopulationFrame& pop, StatKind kind);

// Direct average of the kernel over all unordered pairs of `values`
// (no sorting required). Reference for population_scale and u_statistic.
double pair_scale(std::span<const double> values, StatKind kind);

struct DeltaForm {
  double g_squared = 0.0;
  double v = 0.0;
};

// G^2 and V written as quadratic forms in the spacings.
DeltaForm delta_form(const PopulationFrame& pop);

// N^-1 sum (x_i - mean)^k, k in 2..6; ArgumentError otherwise.
double central_moment(const PopulationFrame& pop, int k);

}  // namespace gmd
