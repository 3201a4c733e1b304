#include "gmd/ustat.hpp"

#include <cmath>
#include <string>

#include "gmd/errors.hpp"
#include "gmd/kernels.hpp"

namespace gmd {

namespace {

double pairs_of(std::size_t m) {
  return static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
}

// Exact for constant input so degenerate samples give exactly zero spread.
double sorted_mean(std::span<const double> x) {
  if (x.front() == x.back()) return x.front();
  return kernels::sum(x) / static_cast<double>(x.size());
}

double u_from_sorted(std::span<const double> x, StatKind kind) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  if (kind == StatKind::Gmd) {
    double total = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double id = static_cast<double>(i);
      total += id * (nd - id) * (x[i] - x[i - 1]);
    }
    return total / pairs_of(n);
  }
  const double mean = sorted_mean(x);
  return kernels::power_sums(x, mean).s2 / (nd - 1.0);
}

// Writes U_{n-1} with the r-th order statistic removed into out[r].
void leave_one_out_sorted(std::span<const double> x, StatKind kind,
                          std::span<double> out) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  const double mean = sorted_mean(x);

  if (kind == StatKind::Var) {
    const double m2 = kernels::power_sums(x, mean).s2;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = x[r] - mean;
      out[r] = (m2 - nd * d * d / (nd - 1.0)) / (nd - 2.0);
    }
    return;
  }

  // Sum of |x_r - x_j| over j from prefix sums of centred values.
  double total_pairs = 0.0;
  double prefix = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = x[j] - mean;
    total_pairs += static_cast<double>(j) * c - prefix;
    prefix += c;
  }
  const double suffix_total = prefix;  // sum of centred values
  const double denom = pairs_of(n - 1);
  prefix = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double c = x[r] - mean;
    const double below = static_cast<double>(r) * c - prefix;
    const double above = (suffix_total - prefix - c) -
                         static_cast<double>(n - 1 - r) * c;
    out[r] = (total_pairs - below - above) / denom;
    prefix += c;
  }
}

double jackknife_from_loo(std::span<const double> loo, std::size_t parent_size) {
  const double n = static_cast<double>(loo.size());
  double mean = 0.0;
  for (double v : loo) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  const double fpc = 1.0 - n / static_cast<double>(parent_size);
  return fpc * (n - 1.0) / n * ss;
}

}  // namespace

SampleDraw::SampleDraw(std::span<const double> values, std::size_t parent_size)
    : values_(values.begin(), values.end()),
      ordered_(values),
      parent_size_(parent_size) {
  if (values_.size() >= parent_size_) {
    throw SizeError("sample size " + std::to_string(values_.size()) +
                    " must be below the population size " +
                    std::to_string(parent_size_));
  }
}

double u_statistic(const SampleDraw& s, StatKind kind) {
  return u_from_sorted(s.order_stats(), kind);
}

double gmd_order_form(const SampleDraw& s) {
  const auto x = s.order_stats();
  const std::size_t n = x.size();
  std::vector<double> coef(n);
  for (std::size_t j = 1; j <= n; ++j) {
    coef[j - 1] = 2.0 * static_cast<double>(j) - static_cast<double>(n) - 1.0;
  }
  return kernels::dot(coef, x) / pairs_of(n);
}

std::vector<double> leave_one_out(const SampleDraw& s, StatKind kind) {
  if (s.size() < 3) throw SizeError("leave-one-out statistics need n >= 3");
  std::vector<double> out(s.size());
  leave_one_out_sorted(s.order_stats(), kind, out);
  return out;
}

double jackknife_variance(const SampleDraw& s, StatKind kind) {
  const auto loo = leave_one_out(s, kind);
  return jackknife_from_loo(loo, s.parent_size());
}

double studentized_value(const SampleDraw& s, StatKind kind, double center) {
  const double s_sq = jackknife_variance(s, kind);
  if (!(s_sq > 0.0)) {
    throw DegenerateSampleError("jackknife variance is zero");
  }
  return (u_statistic(s, kind) - center) / std::sqrt(s_sq);
}

UAndJackknife u_and_jackknife_sorted(std::span<const double> sorted,
                                     StatKind kind, std::size_t parent_size) {
  if (sorted.size() < 3) throw SizeError("jackknife needs n >= 3");
  thread_local std::vector<double> loo;
  loo.resize(sorted.size());
  leave_one_out_sorted(sorted, kind, loo);
  return {u_from_sorted(sorted, kind), jackknife_from_loo(loo, parent_size)};
}

std::optional<double> studentize_sorted(std::span<const double> sorted,
                                        StatKind kind, std::size_t parent_size,
                                        double center) {
  const auto r = u_and_jackknife_sorted(sorted, kind, parent_size);
  if (!(r.s_sq > 0.0)) return std::nullopt;
  return (r.u - center) / std::sqrt(r.s_sq);
}

}  // namespace gmd
