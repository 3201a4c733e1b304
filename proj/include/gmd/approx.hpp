#pragma once

// Approximations to the distribution of the Studentized statistic:
// standard normal, one-term Edgeworth expansion, and the finite-population
// bootstrap that builds an empirical population from k sample copies plus
// an l-subsample (N = k n + l).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmd/core.hpp"
#include "gmd/hoeffding.hpp"
#include "gmd/random.hpp"
#include "gmd/ustat.hpp"

namespace gmd {

double normal_pdf(double y);
double normal_cdf(double y);
// ArgumentError unless 0 < q < 1.
double normal_quantile(double q);

// One-term expansion, unclamped; may leave [0,1] in the far tails.
double edgeworth_cdf(double y, const EdgeworthParams& p);
double edgeworth_cdf_clamped(double y, const EdgeworthParams& p);

// Root of the clamped expansion on [-12, 12] by bisection. With several
// roots the one closest to normal_quantile(q) is returned. NumericalError
// when there is no sign change.
double edgeworth_quantile(double q, const EdgeworthParams& p);

enum class QuantileSource {
  MCReference,
  Normal,
  EdgeworthTrue,
  EdgeworthHatA,
  EdgeworthHatZ,
  Bootstrap
};
std::string to_string(QuantileSource source);

struct ReplicationStats {
  std::vector<double> mean;
  std::vector<double> std_error;
};

struct QuantileTable {
  std::vector<double> q_levels;
  std::vector<double> quantiles;
  QuantileSource source = QuantileSource::Normal;
  std::optional<ReplicationStats> replication_stats;
  // Monte Carlo bookkeeping: used + excluded = number of draws.
  std::size_t used = 0;
  std::size_t excluded = 0;
  bool exclusion_warning = false;
};

// ArgumentError unless the levels are strictly increasing inside (0, 1).
void check_q_levels(std::span<const double> q_levels);

// Order statistic at 1-based index ceil(q R) of a sorted pool.
double empirical_quantile(std::span<const double> sorted, double q);

QuantileTable normal_table(std::span<const double> q_levels);
QuantileTable edgeworth_table(std::span<const double> q_levels,
                              const EdgeworthParams& p, QuantileSource source);

struct BootstrapPlan {
  std::size_t outer_populations = 1;
  std::size_t inner_resamples = 10000;
  std::uint64_t seed = 0;
};

// k copies of the sample plus an SRSWOR subsample of size l.
PopulationFrame bootstrap_population(const SampleDraw& s, RandomStream& rng);

// Pooled Studentized values (U~ - U(X~)) / S~ over all empirical populations
// and resamples. Needs n >= 3. DegenerateError when every draw has S~ = 0.
QuantileTable bootstrap_distribution(const SampleDraw& s, StatKind kind,
                                     const BootstrapPlan& plan,
                                     std::span<const double> q_levels,
                                     std::size_t workers = 0);

}  // namespace gmd
