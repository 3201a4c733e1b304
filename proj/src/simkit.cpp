#include "gmd/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "gmd/errors.hpp"
#include "gmd/parallel.hpp"
#include "simkit_tags.hpp"

namespace gmd {

DistSpec DistSpec::normal(double mu, double sigma_sq) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq) || !std::isfinite(mu)) {
    throw ArgumentError("normal distribution needs a finite mean and positive variance");
  }
  return {Family::Normal, mu, sigma_sq};
}

DistSpec DistSpec::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
    throw ArgumentError("gamma distribution needs positive shape and scale");
  }
  return {Family::Gamma, shape, scale};
}

double DistSpec::draw(RandomStream& rng) const {
  if (family == Family::Normal) {
    std::normal_distribution<double> dist(a, std::sqrt(b));
    return dist(rng);
  }
  std::gamma_distribution<double> dist(a, b);
  return dist(rng);
}

std::string DistSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (family == Family::Normal) {
    os << "normal(" << a << ", " << b << ")";
  } else {
    os << "gamma(" << a << ", " << b << ")";
  }
  return os.str();
}

std::vector<std::size_t> ContaminatedPopulations::outlier_set(std::size_t level) const {
  const std::size_t p = p_sequence.at(level);
  return {outlier_order.begin(), outlier_order.begin() + static_cast<std::ptrdiff_t>(p)};
}

SampleDraw srswor(const PopulationFrame& pop, std::size_t n, RandomStream& rng) {
  const std::size_t N = pop.size();
  if (n < 2 || n >= N) {
    throw SizeError("sample size " + std::to_string(n) + " must satisfy 2 <= n < N = " +
                    std::to_string(N));
  }
  SubsetSampler sampler(N);
  const auto values = pop.values();
  std::vector<double> picked;
  picked.reserve(n);
  for (std::size_t i : sampler.draw(n, rng)) picked.push_back(values[i]);
  return SampleDraw(picked, N);
}

PopulationFrame generate_population(const DistSpec& spec, std::size_t N,
                                    RandomStream& rng) {
  if (N < 2) throw SizeError("population needs at least two units");
  std::vector<double> values(N);
  for (auto& v : values) v = spec.draw(rng);
  return build_population(values);
}

ContaminatedPopulations contaminate(const OutlierScenario& scenario, std::uint64_t seed) {
  const std::size_t N = scenario.N;
  if (N < 2) throw SizeError("population needs at least two units");
  if (scenario.p_sequence.empty()) throw ArgumentError("empty outlier sequence");
  for (std::size_t j = 0; j < scenario.p_sequence.size(); ++j) {
    if (scenario.p_sequence[j] > N) {
      throw ArgumentError("outlier count exceeds the population size");
    }
    if (j > 0 && scenario.p_sequence[j] < scenario.p_sequence[j - 1]) {
      throw ArgumentError("outlier counts must be nondecreasing");
    }
  }
  const std::size_t p_max = scenario.p_sequence.back();

  RandomStream base_rng(seed, {tags::kPopulation});
  std::vector<double> base(N);
  for (auto& v : base) v = scenario.base.draw(base_rng);

  RandomStream index_rng(seed, {tags::kOutlierIndex});
  SubsetSampler sampler(N);
  const auto picked = sampler.draw(p_max, index_rng);

  RandomStream value_rng(seed, {tags::kOutlierValue});
  std::vector<double> outlier_values(p_max);
  for (auto& v : outlier_values) v = scenario.outlier.draw(value_rng);

  ContaminatedPopulations out;
  out.outlier_order.assign(picked.begin(), picked.end());
  out.p_sequence = scenario.p_sequence;
  for (std::size_t p : scenario.p_sequence) {
    std::vector<double> level = base;
    for (std::size_t i = 0; i < p; ++i) level[out.outlier_order[i]] = outlier_values[i];
    out.frames.push_back(build_population(level));
    out.raw_levels.push_back(std::move(level));
  }
  return out;
}

double auxiliary_noise_sd(double sigma_x, double rho_target) {
  if (!(rho_target > 0.0 && rho_target <= 1.0)) {
    throw ArgumentError("target correlation must lie in (0, 1]");
  }
  return 2.0 * sigma_x * std::sqrt(1.0 / (rho_target * rho_target) - 1.0);
}

double correlation(std::span<const double> x, std::span<const double> z) {
  if (x.size() != z.size() || x.size() < 2) {
    throw SizeError("correlation needs two vectors of equal length >= 2");
  }
  const double m = static_cast<double>(x.size());
  double mx = 0.0, mz = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    mz += z[i];
  }
  mx /= m;
  mz /= m;
  double sxx = 0.0, szz = 0.0, sxz = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dz = z[i] - mz;
    sxx += dx * dx;
    szz += dz * dz;
    sxz += dx * dz;
  }
  if (sxx == 0.0 || szz == 0.0) throw DegenerateError("correlation of a constant vector");
  return sxz / std::sqrt(sxx * szz);
}

AuxiliaryFrame generate_auxiliary(const PopulationFrame& pop, double rho_target,
                                  RandomStream& rng) {
  const auto x = pop.values();
  if (x.front() == x.back()) throw DegenerateError("population is constant");
  const double theta = auxiliary_noise_sd(std::sqrt(pop.moment(2)), rho_target);
  std::vector<double> z(x.size());
  if (theta == 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = 3.0 + 2.0 * x[i];
  } else {
    std::normal_distribution<double> noise(0.0, theta);
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = 3.0 + 2.0 * x[i] + noise(rng);
  }
  auto aux = AuxiliaryFrame::from_values(std::move(z));
  aux.correlation_with_x = correlation(x, aux.z_values);
  return aux;
}

QuantileTable mc_reference_cdf(const PopulationFrame& pop, std::size_t n,
                               StatKind kind, std::size_t R,
                               std::span<const double> q_levels, std::uint64_t seed,
                               std::size_t workers) {
  check_q_levels(q_levels);
  if (R < 1000) throw ArgumentError("Monte Carlo reference needs at least 1000 draws");
  const std::size_t N = pop.size();
  if (n < 3 || n >= N) throw SizeError("sample size must satisfy 3 <= n < N");
  const double center = population_scale(pop, kind);
  const auto values = pop.values();

  std::vector<double> pool(R);
  parallel_for(
      R,
      [&](std::size_t r) {
        thread_local std::vector<double> buf;
        thread_local std::unique_ptr<SubsetSampler> sampler;
        if (!sampler || sampler->population_size() != N) {
          sampler = std::make_unique<SubsetSampler>(N);
        }
        RandomStream rng(seed, {tags::kMcReference, r});
        buf.clear();
        for (std::size_t i : sampler->draw_sorted(n, rng)) buf.push_back(values[i]);
        const auto t = studentize_sorted(buf, kind, N, center);
        pool[r] = t ? *t : std::numeric_limits<double>::quiet_NaN();
      },
      workers);

  QuantileTable out;
  out.q_levels.assign(q_levels.begin(), q_levels.end());
  out.source = QuantileSource::MCReference;
  const auto kept =
      std::remove_if(pool.begin(), pool.end(), [](double v) { return std::isnan(v); });
  out.excluded = static_cast<std::size_t>(pool.end() - kept);
  pool.erase(kept, pool.end());
  out.used = pool.size();
  if (pool.empty()) throw DegenerateError("every Monte Carlo draw has zero jackknife variance");
  out.exclusion_warning = out.excluded * 100 > R;
  if (out.exclusion_warning) {
    std::clog << "warning: " << out.excluded << " of " << R
              << " Monte Carlo draws were degenerate and excluded\n";
  }
  std::sort(pool.begin(), pool.end());
  for (double q : q_levels) out.quantiles.push_back(empirical_quantile(pool, q));
  return out;
}

}  // namespace gmd
