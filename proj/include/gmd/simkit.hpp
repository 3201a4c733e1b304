#pragma once

// Seeded generation of populations, outliers and auxiliary variables,
// SRSWOR, Monte Carlo reference distributions, and the two study harnesses
// (scale-estimation accuracy under outliers; quantile approximations).

#include <cstdint>
#include <string>
#include <vector>

#include "gmd/approx.hpp"
#include "gmd/core.hpp"
#include "gmd/estimate.hpp"
#include "gmd/random.hpp"
#include "gmd/ustat.hpp"

namespace gmd {

struct DistSpec {
  enum class Family { Normal, Gamma };
  Family family = Family::Normal;
  double a = 0.0;  // mu, or shape k
  double b = 1.0;  // sigma^2, or scale theta

  // ArgumentError for sigma_sq <= 0, k <= 0 or theta <= 0.
  static DistSpec normal(double mu, double sigma_sq);
  static DistSpec gamma(double shape, double scale);

  double draw(RandomStream& rng) const;
  std::string describe() const;
};

struct OutlierScenario {
  DistSpec base;
  DistSpec outlier;
  std::size_t N = 0;
  std::vector<std::size_t> p_sequence{0};
};

struct ContaminatedPopulations {
  // Values in generation order; frames[j] is built from level j.
  std::vector<std::vector<double>> raw_levels;
  std::vector<PopulationFrame> frames;
  // Outlier indices in selection order; level j uses the first p_j.
  std::vector<std::size_t> outlier_order;
  std::vector<std::size_t> p_sequence;

  std::vector<std::size_t> outlier_set(std::size_t level) const;
};

// Uniform n-subset of the population. SizeError unless 2 <= n < N.
SampleDraw srswor(const PopulationFrame& pop, std::size_t n, RandomStream& rng);

// N iid draws frozen into a population. SizeError for N < 2.
PopulationFrame generate_population(const DistSpec& spec, std::size_t N,
                                    RandomStream& rng);

// One frame per p in the sequence; outlier sets are nested and outlier
// values, once drawn, are reused. Base values, outlier indices and outlier
// values come from separate substreams of `seed`, so the first p outliers
// do not depend on the largest p requested. ArgumentError when the sequence
// decreases or exceeds N.
ContaminatedPopulations contaminate(const OutlierScenario& scenario,
                                    std::uint64_t seed);

// Error standard deviation for z = 3 + 2x + e to reach correlation rho
// when sd(x) = sigma_x.
double auxiliary_noise_sd(double sigma_x, double rho_target);

// z_i = 3 + 2 x_i + e_i aligned with pop.values(). DegenerateError for a
// constant population; ArgumentError unless 0 < rho <= 1.
AuxiliaryFrame generate_auxiliary(const PopulationFrame& pop, double rho_target,
                                  RandomStream& rng);

// Pearson correlation of two equally long vectors.
double correlation(std::span<const double> x, std::span<const double> z);

// Quantiles of (U - parameter)/S over R draws; substream r is derived from
// (seed, r). ArgumentError for R < 1000; DegenerateError when every draw
// is degenerate.
QuantileTable mc_reference_cdf(const PopulationFrame& pop, std::size_t n,
                               StatKind kind, std::size_t R,
                               std::span<const double> q_levels, std::uint64_t seed,
                               std::size_t workers = 0);

struct StudyConfig {
  OutlierScenario scenario;
  std::size_t n = 0;
  std::vector<double> rho_targets{0.7};
  std::size_t replications = 1000;
  std::size_t mc_reference_R = 100000;
  std::size_t bootstrap_resamples = 10000;
  std::size_t bootstrap_populations = 1;
  std::vector<double> q_levels{0.01, 0.05, 0.10, 0.90, 0.95, 0.99};
  std::uint64_t seed = 0;
  std::size_t workers = 0;

  // ArgumentError / SizeError on inconsistent fields.
  void validate() const;
};

struct BiasMseRow {
  double p_over_N = 0.0;
  std::string method;
  double bias_x10 = 0.0;
  double rmse_x10 = 0.0;
};

struct RealizedRho {
  double p_over_N = 0.0;
  double rho_target = 0.0;
  double rho_realized = 0.0;
};

struct BiasMseReport {
  std::vector<BiasMseRow> rows;
  std::vector<RealizedRho> realized;
};

// Methods sqrt(U_V), S1 (model from the base family) and S2 per rho target,
// all measured against sqrt(V) over the same R samples per level.
BiasMseReport bias_mse_study(const StudyConfig& cfg);

struct QuantileRow {
  std::string label;
  std::vector<double> values;
  std::vector<double> std_errors;  // empty unless the row varies by sample
  std::size_t excluded = 0;
};

struct ApproximationReport {
  StatKind kind = StatKind::Gmd;
  double p_over_N = 0.0;
  std::vector<double> q_levels;
  std::vector<QuantileRow> rows;
  RealizedRho realized;
};

// Rows F_inv, Phi_inv, H_inv, zH_inv, Hhat_inv and Ftilde_inv for the last
// contamination level and the first rho target.
ApproximationReport approximation_study(const StudyConfig& cfg, StatKind kind);

}  // namespace gmd
