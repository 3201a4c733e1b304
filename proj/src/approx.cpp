#include "gmd/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "gmd/errors.hpp"
#include "gmd/parallel.hpp"

namespace gmd {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kLower = -12.0;
constexpr double kUpper = 12.0;
constexpr int kGridSteps = 2400;

constexpr std::uint64_t kTagBootPopulation = 0xB007'0001;
constexpr std::uint64_t kTagBootResample = 0xB007'0002;

// Acklam's rational approximation, about 1e-9 relative accuracy.
double acklam(double q) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (q < low) {
    const double t = std::sqrt(-2.0 * std::log(q));
    return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  if (q > 1.0 - low) {
    const double t = std::sqrt(-2.0 * std::log1p(-q));
    return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  const double t = q - 0.5;
  const double r = t * t;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_pdf(double y) { return kInvSqrt2Pi * std::exp(-0.5 * y * y); }

double normal_cdf(double y) { return 0.5 * std::erfc(-y * M_SQRT1_2); }

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ArgumentError("quantile level must lie in (0, 1)");
  double x = acklam(q);
  // Two Halley steps; the upper tail is refined through the complement to
  // keep relative accuracy.
  for (int i = 0; i < 2; ++i) {
    const double e = x > 0.0 ? (1.0 - q) - 0.5 * std::erfc(x * M_SQRT1_2)
                             : 0.5 * std::erfc(-x * M_SQRT1_2) - q;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double edgeworth_cdf(double y, const EdgeworthParams& p) {
  const double f = static_cast<double>(p.n) / static_cast<double>(p.N);
  const double y2 = y * y;
  const double corr = (1.0 - 2.0 * f + (2.0 - f) * y2) * p.alpha + 3.0 * (y2 + 1.0) * p.kappa;
  if (corr == 0.0) return normal_cdf(y);
  return normal_cdf(y) + corr * normal_pdf(y) / (6.0 * std::sqrt(p.tau_sq));
}

double edgeworth_cdf_clamped(double y, const EdgeworthParams& p) {
  return std::clamp(edgeworth_cdf(y, p), 0.0, 1.0);
}

double edgeworth_quantile(double q, const EdgeworthParams& p) {
  const double target = normal_quantile(q);
  const double step = (kUpper - kLower) / kGridSteps;
  auto f = [&](double y) { return edgeworth_cdf_clamped(y, p) - q; };

  double best = std::numeric_limits<double>::quiet_NaN();
  auto consider = [&](double root) {
    if (std::isnan(best) || std::fabs(root - target) < std::fabs(best - target)) best = root;
  };

  double lo = kLower;
  double flo = f(lo);
  if (flo == 0.0) consider(lo);
  for (int i = 1; i <= kGridSteps; ++i) {
    const double hi = kLower + step * i;
    const double fhi = f(hi);
    if (fhi == 0.0) {
      consider(hi);
    } else if (flo != 0.0 && (flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      consider(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  if (std::isnan(best)) {
    throw NumericalError("Edgeworth expansion does not cross level " + std::to_string(q) +
                         " on [-12, 12]");
  }
  return best;
}

std::string to_string(QuantileSource source) {
  switch (source) {
    case QuantileSource::MCReference: return "mc_reference";
    case QuantileSource::Normal: return "normal";
    case QuantileSource::EdgeworthTrue: return "edgeworth_true";
    case QuantileSource::EdgeworthHatA: return "edgeworth_hat_a";
    case QuantileSource::EdgeworthHatZ: return "edgeworth_hat_z";
    case QuantileSource::Bootstrap: return "bootstrap";
  }
  return "unknown";
}

void check_q_levels(std::span<const double> q_levels) {
  if (q_levels.empty()) throw ArgumentError("no quantile levels given");
  for (std::size_t i = 0; i < q_levels.size(); ++i) {
    if (!(q_levels[i] > 0.0 && q_levels[i] < 1.0)) {
      throw ArgumentError("quantile level must lie in (0, 1)");
    }
    if (i > 0 && !(q_levels[i] > q_levels[i - 1])) {
      throw ArgumentError("quantile levels must be strictly increasing");
    }
  }
}

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw SizeError("empty pool");
  const double r = static_cast<double>(sorted.size());
  // The small offset keeps q R = integer from rounding up past the integer.
  auto k = static_cast<std::size_t>(std::ceil(q * r - 1e-9));
  k = std::clamp<std::size_t>(k, 1, sorted.size());
  return sorted[k - 1];
}

QuantileTable normal_table(std::span<const double> q_levels) {
  check_q_levels(q_levels);
  QuantileTable t;
  t.q_levels.assign(q_levels.begin(), q_levels.end());
  t.source = QuantileSource::Normal;
  for (double q : q_levels) t.quantiles.push_back(normal_quantile(q));
  return t;
}

QuantileTable edgeworth_table(std::span<const double> q_levels,
                              const EdgeworthParams& p, QuantileSource source) {
  check_q_levels(q_levels);
  QuantileTable t;
  t.q_levels.assign(q_levels.begin(), q_levels.end());
  t.source = source;
  for (double q : q_levels) t.quantiles.push_back(edgeworth_quantile(q, p));
  return t;
}

PopulationFrame bootstrap_population(const SampleDraw& s, RandomStream& rng) {
  const std::size_t n = s.size();
  const std::size_t N = s.parent_size();
  const std::size_t k = N / n;
  const std::size_t l = N % n;
  const auto x = s.values();
  std::vector<double> values;
  values.reserve(N);
  for (std::size_t c = 0; c < k; ++c) values.insert(values.end(), x.begin(), x.end());
  if (l > 0) {
    SubsetSampler sampler(n);
    for (std::size_t i : sampler.draw(l, rng)) values.push_back(x[i]);
  }
  return build_population(values);
}

QuantileTable bootstrap_distribution(const SampleDraw& s, StatKind kind,
                                     const BootstrapPlan& plan,
                                     std::span<const double> q_levels,
                                     std::size_t workers) {
  check_q_levels(q_levels);
  if (s.size() < 3) throw SizeError("bootstrap needs a sample of size at least 3");
  if (plan.outer_populations < 1 || plan.inner_resamples < 1) {
    throw ArgumentError("bootstrap plan needs at least one population and one resample");
  }
  const std::size_t n = s.size();
  const std::size_t N = s.parent_size();
  const std::size_t pops = N % n == 0 ? 1 : plan.outer_populations;
  const std::size_t reps = plan.inner_resamples;

  std::vector<double> pool(pops * reps);
  for (std::size_t p = 0; p < pops; ++p) {
    RandomStream pop_rng(plan.seed, {kTagBootPopulation, p});
    const PopulationFrame pop = bootstrap_population(s, pop_rng);
    const double center = population_scale(pop, kind);
    const auto values = pop.values();
    parallel_for(
        reps,
        [&](std::size_t r) {
          thread_local std::vector<double> buf;
          thread_local std::unique_ptr<SubsetSampler> sampler;
          if (!sampler || sampler->population_size() != N) {
            sampler = std::make_unique<SubsetSampler>(N);
          }
          RandomStream rng(plan.seed, {kTagBootResample, p, r});
          buf.clear();
          for (std::size_t i : sampler->draw_sorted(n, rng)) buf.push_back(values[i]);
          const auto t = studentize_sorted(buf, kind, N, center);
          pool[p * reps + r] = t ? *t : std::numeric_limits<double>::quiet_NaN();
        },
        workers);
  }

  QuantileTable out;
  out.q_levels.assign(q_levels.begin(), q_levels.end());
  out.source = QuantileSource::Bootstrap;
  const auto kept = std::remove_if(pool.begin(), pool.end(), [](double v) { return std::isnan(v); });
  out.excluded = static_cast<std::size_t>(pool.end() - kept);
  pool.erase(kept, pool.end());
  out.used = pool.size();
  if (pool.empty()) throw DegenerateError("every bootstrap resample has zero jackknife variance");
  out.exclusion_warning = out.excluded * 100 > out.used + out.excluded;
  std::sort(pool.begin(), pool.end());
  for (double q : q_levels) out.quantiles.push_back(empirical_quantile(pool, q));
  return out;
}

}  // namespace gmd
