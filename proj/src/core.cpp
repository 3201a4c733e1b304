#include "gmd/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmd/errors.hpp"
#include "gmd/kernels.hpp"

namespace gmd {

std::string_view to_string(StatKind kind) {
  return kind == StatKind::Gmd ? "gmd" : "var";
}

OrderedValues::OrderedValues(std::span<const double> values)
    : values_(values.begin(), values.end()) {
  if (values_.size() < 2) {
    throw SizeError("at least two values are required, got " +
                    std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DataError("non-finite value in input");
  }
  std::sort(values_.begin(), values_.end());

  const std::size_t m = values_.size();
  const double md = static_cast<double>(m);
  spacings_.resize(m - 1);
  weights_.resize(m - 1);
  for (std::size_t i = 1; i < m; ++i) {
    spacings_[i - 1] = values_[i] - values_[i - 1];
    weights_[i - 1] = (2.0 * static_cast<double>(i) - md) / md;
  }

  // Two passes: mean first, then powers of the centred values.
  mean_ = values_.front() == values_.back() ? values_.front()
                                            : kernels::sum(values_) / md;
  const auto p = kernels::power_sums(values_, mean_);
  moments_ = {p.s2 / md, p.s3 / md, p.s4 / md, p.s5 / md, p.s6 / md};
}

double OrderedValues::moment(int k) const {
  if (k < 2 || k > 6) {
    throw ArgumentError("moment order must be in 2..6, got " + std::to_string(k));
  }
  return moments_[static_cast<std::size_t>(k - 2)];
}

PopulationFrame build_population(std::span<const double> raw) {
  return PopulationFrame(OrderedValues(raw));
}

double population_scale(const PopulationFrame& pop, StatKind kind) {
  const double n = static_cast<double>(pop.size());
  if (kind == StatKind::Var) return n / (n - 1.0) * pop.moment(2);

  // sum_{i<j} (x_j - x_i) = sum_i i (N - i) Delta_i, all terms nonnegative.
  const auto d = pop.spacings();
  double total = 0.0;
  for (std::size_t i = 1; i <= d.size(); ++i) {
    const double id = static_cast<double>(i);
    total += id * (n - id) * d[i - 1];
  }
  return total / (n * (n - 1.0) / 2.0);
}

double pair_scale(std::span<const double> values, StatKind kind) {
  const std::size_t m = values.size();
  if (m < 2) throw SizeError("pair_scale needs at least two values");
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  if (kind == StatKind::Gmd) return kernels::pair_abs_sum(values) / pairs;
  return kernels::pair_sq_sum(values) / 2.0 / pairs;
}

DeltaForm delta_form(const PopulationFrame& pop) {
  const auto d = pop.spacings();
  const double n = static_cast<double>(pop.size());

  // Both forms are sum_i c_ii D_i^2 + 2 sum_{i<j} c_ij D_i D_j with a
  // factorised off-diagonal coefficient, evaluated row by row.
  double g_diag = 0.0, g_off = 0.0, g_prefix = 0.0;  // f_i = i (N - i)
  double v_diag = 0.0, v_off = 0.0, v_prefix = 0.0;  // i (N - j)
  for (std::size_t j = 1; j <= d.size(); ++j) {
    const double jd = static_cast<double>(j);
    const double dj = d[j - 1];
    const double f = jd * (n - jd);
    g_diag += f * f * dj * dj;
    g_off += f * dj * g_prefix;
    g_prefix += f * dj;
    v_diag += jd * (n - jd) * dj * dj;
    v_off += (n - jd) * dj * v_prefix;
    v_prefix += jd * dj;
  }
  DeltaForm out;
  out.g_squared = 4.0 / (n * n * (n - 1.0) * (n - 1.0)) * (g_diag + 2.0 * g_off);
  out.v = (v_diag + 2.0 * v_off) / (n * (n - 1.0));
  return out;
}

double central_moment(const PopulationFrame& pop, int k) { return pop.moment(k); }

}  // namespace gmd
