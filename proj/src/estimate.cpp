#include "gmd/estimate.hpp"

#include <cmath>
#include <string>

#include "gmd/errors.hpp"
#include "spacing_sums.hpp"

namespace gmd {

namespace {

void check_sample(const SampleDraw& s, std::size_t min_n) {
  if (s.size() < min_n) {
    throw SizeError("sample size " + std::to_string(s.size()) +
                    " below the minimum of " + std::to_string(min_n));
  }
  if (s.parent_size() < 4) throw SizeError("population size must be at least 4");
}

// Estimated sigma_1^2 counts as zero when it is at rounding level relative
// to the squared statistic.
bool sigma1_degenerate(double sigma1_sq_hat, double u, double n) {
  if (!(sigma1_sq_hat > 0.0)) return true;
  return sigma1_sq_hat * n * n <= 1e-12 * u * u;
}

PopulationFrame aux_population(const AuxiliaryFrame& aux) {
  auto frame = build_population(aux.z_values);
  if (frame.values().front() == frame.values().back()) {
    throw DegenerateAuxError("auxiliary variable is constant");
  }
  return frame;
}

}  // namespace

AuxiliaryFrame AuxiliaryFrame::from_values(std::vector<double> z) {
  if (z.size() < 2) throw SizeError("auxiliary frame needs at least two values");
  for (double v : z) {
    if (!std::isfinite(v)) throw DataError("non-finite auxiliary value");
  }
  AuxiliaryFrame out;
  out.z_values = std::move(z);
  return out;
}

double auxiliary_correction(const AuxiliaryFrame& aux) {
  const auto frame = aux_population(aux);
  return std::sqrt(population_scale(frame, StatKind::Var)) /
         population_scale(frame, StatKind::Gmd);
}

StrategyEstimate scale_estimate(Strategy strategy, const SampleDraw& sample,
                                const std::optional<ScaleModel>& model,
                                const AuxiliaryFrame* aux) {
  StrategyEstimate out;
  out.strategy = strategy;
  const double ug = u_statistic(sample, StatKind::Gmd);
  switch (strategy) {
    case Strategy::S1:
      if (!model) throw ArgumentError("strategy S1 requires a scale model");
      out.correction_a = correction_factor(*model);
      out.target = ScaleTarget::SqrtV;
      break;
    case Strategy::S2:
      if (aux == nullptr) throw ArgumentError("strategy S2 requires auxiliary data");
      out.correction_a = auxiliary_correction(*aux);
      out.target = ScaleTarget::SqrtV;
      break;
    case Strategy::S3:
      out.correction_a = 1.0;
      out.target = ScaleTarget::G;
      break;
  }
  out.point = out.correction_a * ug;
  return out;
}

VarianceEstimate sigma_components_hat(const SampleDraw& s, StatKind kind,
                                      SumPath path) {
  check_sample(s, 3);
  const double n = static_cast<double>(s.size());
  const double N = static_cast<double>(s.parent_size());
  const double r = N / (N - 2.0);
  VarianceEstimate out;
  if (kind == StatKind::Gmd) {
    const auto d = s.spacings();
    out.sigma1_sq_hat = 4.0 / (n * n * n * n) * r * r * detail::sigma1_bracket(d, path);
    out.sigma2_sq_hat = 16.0 / std::pow(n * (n - 1.0), 4) * r *
                        detail::sigma2_bracket(d, path);
  } else {
    const double m2 = s.moment(2), m4 = s.moment(4);
    out.sigma1_sq_hat = r * r / (n * n) * (m4 - m2 * m2);
    out.sigma2_sq_hat = 4.0 / (n * n * (n - 1.0) * (n - 1.0)) * N /
                        ((N - 1.0) * (N - 2.0)) *
                        ((N * N - 3.0 * N + 3.0) / (N - 1.0) * m2 * m2 - m4);
  }
  out.var_hat = combine_variance(s.size(), s.parent_size(), out.sigma1_sq_hat,
                                 out.sigma2_sq_hat);
  return out;
}

EdgeworthParams edgeworth_params_hat(const SampleDraw& s, StatKind kind,
                                     const EdgeworthOptions& options) {
  check_sample(s, 4);
  if (options.kappa_method == KappaMethod::PairSum) {
    throw ArgumentError("pair-sum kappa has no plug-in counterpart");
  }
  const double n = static_cast<double>(s.size());
  const double N = static_cast<double>(s.parent_size());
  const double r3 = std::pow(N / (N - 2.0), 3);
  const auto comps = sigma_components_hat(s, kind);
  if (sigma1_degenerate(comps.sigma1_sq_hat, u_statistic(s, kind), n)) {
    throw DegenerateSampleError("estimated sigma_1 is zero");
  }
  const double sigma1_cubed = std::pow(comps.sigma1_sq_hat, 1.5);
  auto params = EdgeworthParams::make(0.0, 0.0, s.size(), s.parent_size());
  const double tau_sq = params.tau_sq;

  if (kind == StatKind::Gmd) {
    const auto d = s.spacings();
    const SumPath path = options.kappa_method == KappaMethod::TripleSum
                             ? SumPath::Naive
                             : SumPath::Fast;
    params.alpha = -8.0 / std::pow(n, 6) * r3 *
                   detail::alpha_bracket(d, SumPath::Fast) / sigma1_cubed;
    params.kappa = -tau_sq * 16.0 / (std::pow(n, 5) * std::pow(n - 1.0, 3)) * r3 *
                   detail::kappa_bracket(d, path) / sigma1_cubed;
    return params;
  }

  const double m2 = s.moment(2), m3 = s.moment(3), m4 = s.moment(4),
               m6 = s.moment(6);
  params.alpha = r3 / (n * n * n) * (2.0 * m2 * m2 * m2 - 3.0 * m4 * m2 + m6) /
                 sigma1_cubed;
  double bracket = -(N - 2.0) * m3 * m3;
  if (!options.simplified_var_kappa) {
    bracket += -(2.0 * N - 1.0) / (N - 1.0) * m4 * m2 + N / (N - 1.0) * m2 * m2 * m2 + m6;
  }
  params.kappa = tau_sq * 2.0 / (n * n * n * (n - 1.0)) * r3 / (N - 1.0) * bracket /
                 sigma1_cubed;
  return params;
}

EdgeworthParams edgeworth_params_aux(const AuxiliaryFrame& aux, std::size_t n,
                                     StatKind kind, const EdgeworthOptions& options) {
  return edgeworth_params_true(aux_population(aux), n, kind, options);
}

}  // namespace gmd
