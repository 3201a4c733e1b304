#include "gmd/hoeffding.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "gmd/errors.hpp"
#include "gmd/kernels.hpp"
#include "spacing_sums.hpp"

namespace gmd {

namespace {

double choose2(double m) { return m * (m - 1.0) / 2.0; }

void check_sizes(const PopulationFrame& pop, std::size_t n, std::size_t min_pop) {
  const std::size_t N = pop.size();
  if (N < min_pop) {
    throw ArgumentError("population size " + std::to_string(N) +
                        " below the minimum of " + std::to_string(min_pop));
  }
  if (n < 2 || n >= N) {
    throw ArgumentError("sample size " + std::to_string(n) +
                        " must satisfy 2 <= n < N = " + std::to_string(N));
  }
}

double clamp_sigma2(double sigma2_sq, double sigma1_sq) {
  if (sigma2_sq >= 0.0) return sigma2_sq;
  if (std::fabs(sigma2_sq) < 1e-12 * sigma1_sq || std::fabs(sigma2_sq) < 1e-300) {
    std::clog << "warning: sigma_2^2 = " << sigma2_sq
              << " clamped to 0 (floating-point cancellation)\n";
    return 0.0;
  }
  throw NumericalError("sigma_2^2 is negative beyond rounding: " +
                       std::to_string(sigma2_sq));
}

double var_kappa_bracket(const PopulationFrame& pop, bool simplified) {
  const double N = static_cast<double>(pop.size());
  const double m2 = pop.moment(2), m3 = pop.moment(3), m4 = pop.moment(4),
               m6 = pop.moment(6);
  if (simplified) return -(N - 2.0) * m3 * m3;
  return -(N - 2.0) * m3 * m3 - (2.0 * N - 1.0) / (N - 1.0) * m4 * m2 +
         N / (N - 1.0) * m2 * m2 * m2 + m6;
}

}  // namespace

EdgeworthParams EdgeworthParams::make(double alpha, double kappa, std::size_t n,
                                      std::size_t N) {
  if (n < 1 || n >= N) throw ArgumentError("Edgeworth parameters need 1 <= n < N");
  EdgeworthParams p;
  p.alpha = alpha;
  p.kappa = kappa;
  p.n = n;
  p.N = N;
  p.tau_sq = static_cast<double>(n) *
             (1.0 - static_cast<double>(n) / static_cast<double>(N));
  p.n_star = std::min(n, N - n);
  return p;
}

std::vector<double> influence_first(const PopulationFrame& pop, std::size_t n,
                                    StatKind kind) {
  check_sizes(pop, n, 3);
  const double N = static_cast<double>(pop.size());
  const double nd = static_cast<double>(n);
  std::vector<double> g1(pop.size());

  if (kind == StatKind::Var) {
    const double factor = N / (nd * (N - 2.0));
    const double b1 = pop.mean();
    const double mu2 = pop.moment(2);
    const auto x = pop.values();
    for (std::size_t k = 0; k < g1.size(); ++k) {
      const double d = x[k] - b1;
      g1[k] = factor * (d * d - mu2);
    }
    return g1;
  }

  // g1(x_k) = -(2/n) N/(N-2) [sum_{i>=k} a_i D_i - sum_i (i/N) a_i D_i]
  const auto d = pop.spacings();
  const auto a = pop.weights();
  double weighted = 0.0;
  for (std::size_t i = 1; i <= d.size(); ++i) {
    weighted += static_cast<double>(i) / N * a[i - 1] * d[i - 1];
  }
  const double factor = -2.0 / nd * N / (N - 2.0);
  double suffix = 0.0;  // sum_{i >= k} a_i D_i, k one-based
  const std::size_t size = pop.size();
  g1[size - 1] = factor * (0.0 - weighted);
  for (std::size_t k = size - 1; k >= 1; --k) {
    suffix += a[k - 1] * d[k - 1];
    g1[k - 1] = factor * (suffix - weighted);
  }
  return g1;
}

SecondInfluence::SecondInfluence(const PopulationFrame& pop, std::size_t n,
                                 StatKind kind)
    : kind_(kind), size_(pop.size()) {
  check_sizes(pop, n, 3);
  const double N = static_cast<double>(size_);
  const double nd = static_cast<double>(n);

  if (kind == StatKind::Var) {
    scale_ = 1.0 / (nd * (nd - 1.0));
    shift_ = 2.0 * N / ((N - 1.0) * (N - 2.0)) * pop.moment(2);
    square_weight_ = N / (N - 2.0);
    const auto x = pop.values();
    centred_.resize(size_);
    for (std::size_t k = 0; k < size_; ++k) centred_[k] = x[k] - pop.mean();
    return;
  }

  // phi_{k,l}(i) summed against D_i splits into P(k) + Q(k) - Q(l) + R(l):
  //   P(k) = sum_{i<k} i(i-1) D_i
  //   Q(k) = sum_{i<k} (i-1)(N-i-1) D_i
  //   R(l) = sum_{i>=l} (N-i-1)(N-i) D_i
  const auto d = pop.spacings();
  scale_ = -4.0 / (nd * (nd - 1.0) * (N - 1.0) * (N - 2.0));
  u_.assign(size_, 0.0);
  w_.assign(size_, 0.0);
  double p = 0.0, q = 0.0;
  std::vector<double> q_at(size_, 0.0);
  for (std::size_t k = 1; k <= size_; ++k) {
    u_[k - 1] = p + q;
    q_at[k - 1] = q;
    if (k < size_) {
      const double i = static_cast<double>(k);
      p += i * (i - 1.0) * d[k - 1];
      q += (i - 1.0) * (N - i - 1.0) * d[k - 1];
    }
  }
  double r = 0.0;
  for (std::size_t l = size_; l >= 1; --l) {
    if (l < size_) {
      const double i = static_cast<double>(l);
      r += (N - i - 1.0) * (N - i) * d[l - 1];
    }
    w_[l - 1] = r - q_at[l - 1];
  }
}

double SecondInfluence::operator()(std::size_t k, std::size_t l) const {
  if (k == l || k >= size_ || l >= size_) {
    throw ArgumentError("g2 needs two distinct in-range indices");
  }
  if (k > l) std::swap(k, l);
  if (kind_ == StatKind::Gmd) return scale_ * (u_[k] + w_[l]);
  const double dk = centred_[k], dl = centred_[l];
  const double diff = dk - dl;
  return scale_ * (diff * diff + shift_ - square_weight_ * (dk * dk + dl * dl));
}

double SecondInfluence::pair_product_sum(std::span<const double> g) const {
  const auto& kt = kernels::active_kernels();
  if (kind_ == StatKind::Gmd) {
    return scale_ * kt.pair_additive_product(u_.data(), w_.data(), g.data(), size_);
  }
  return scale_ * kt.pair_quadratic_product(centred_.data(), g.data(), size_,
                                            shift_, square_weight_);
}

double influence_second(const PopulationFrame& pop, std::size_t n, StatKind kind,
                        std::size_t k, std::size_t l) {
  return SecondInfluence(pop, n, kind)(k, l);
}

VarianceComponents sigma_components(const PopulationFrame& pop, std::size_t n,
                                    StatKind kind, SumPath path) {
  check_sizes(pop, n, 3);
  const double N = static_cast<double>(pop.size());
  const double nd = static_cast<double>(n);
  VarianceComponents out;

  if (kind == StatKind::Gmd) {
    const auto d = pop.spacings();
    out.sigma1_sq = 4.0 / (nd * nd * (N - 2.0) * (N - 2.0)) *
                    detail::sigma1_bracket(d, path);
    out.sigma2_sq = 16.0 / (nd * nd * (nd - 1.0) * (nd - 1.0)) /
                    (N * (N - 1.0) * (N - 1.0) * (N - 2.0)) *
                    detail::sigma2_bracket(d, path);
  } else {
    const double mu2 = pop.moment(2), mu4 = pop.moment(4);
    const double r = N / (N - 2.0);
    out.sigma1_sq = r * r / (nd * nd) * (mu4 - mu2 * mu2);
    out.sigma2_sq = 4.0 / (nd * nd * (nd - 1.0) * (nd - 1.0)) * N /
                    ((N - 1.0) * (N - 2.0)) *
                    ((N * N - 3.0 * N + 3.0) / (N - 1.0) * mu2 * mu2 - mu4);
  }
  out.sigma1_sq = std::max(out.sigma1_sq, 0.0);
  out.sigma2_sq = clamp_sigma2(out.sigma2_sq, out.sigma1_sq);
  return out;
}

HoeffdingParts hoeffding_parts(const PopulationFrame& pop, std::size_t n,
                               StatKind kind) {
  HoeffdingParts parts;
  parts.kind = kind;
  parts.n = n;
  parts.N = pop.size();
  parts.g1 = influence_first(pop, n, kind);
  const auto comps = sigma_components(pop, n, kind);
  parts.sigma1_sq = comps.sigma1_sq;
  parts.sigma2_sq = comps.sigma2_sq;
  return parts;
}

double combine_variance(std::size_t n, std::size_t N, double sigma1_sq,
                        double sigma2_sq) {
  const double nd = static_cast<double>(n);
  const double Nd = static_cast<double>(N);
  return nd * (Nd - nd) / (Nd - 1.0) * sigma1_sq +
         choose2(nd) * choose2(Nd - nd) / choose2(Nd - 2.0) * sigma2_sq;
}

double u_variance(const PopulationFrame& pop, std::size_t n, StatKind kind) {
  check_sizes(pop, n, 4);
  const auto c = sigma_components(pop, n, kind);
  return combine_variance(n, pop.size(), c.sigma1_sq, c.sigma2_sq);
}

EdgeworthParams edgeworth_params_true(const PopulationFrame& pop, std::size_t n,
                                      StatKind kind,
                                      const EdgeworthOptions& options) {
  check_sizes(pop, n, 4);
  const auto comps = sigma_components(pop, n, kind);
  if (!(comps.sigma1_sq > 0.0)) {
    throw DegenerateError("sigma_1^2 is zero; Edgeworth parameters undefined");
  }
  const double N = static_cast<double>(pop.size());
  const double nd = static_cast<double>(n);
  const double sigma1_cubed = std::pow(comps.sigma1_sq, 1.5);
  auto params = EdgeworthParams::make(0.0, 0.0, n, pop.size());
  const double tau_sq = params.tau_sq;

  if (options.kappa_method == KappaMethod::PairSum) {
    const auto g1 = influence_first(pop, n, kind);
    const double pair_sum = SecondInfluence(pop, n, kind).pair_product_sum(g1);
    params.kappa = tau_sq * pair_sum / choose2(N) / sigma1_cubed;
  }

  if (kind == StatKind::Gmd) {
    const auto d = pop.spacings();
    params.alpha = -8.0 / (nd * nd * nd * std::pow(N - 2.0, 3)) *
                   detail::alpha_bracket(d, SumPath::Fast) / sigma1_cubed;
    if (options.kappa_method != KappaMethod::PairSum) {
      const SumPath path = options.kappa_method == KappaMethod::TripleSum
                               ? SumPath::Naive
                               : SumPath::Fast;
      const double prefactor = -16.0 / (nd * nd * nd * (nd - 1.0)) * N /
                               ((N - 1.0) * (N - 1.0) * std::pow(N - 2.0, 3));
      params.kappa = tau_sq * prefactor * detail::kappa_bracket(d, path) /
                     sigma1_cubed;
    }
    return params;
  }

  const double mu2 = pop.moment(2), mu4 = pop.moment(4), mu6 = pop.moment(6);
  const double r3 = std::pow(N / (N - 2.0), 3);
  params.alpha = r3 / (nd * nd * nd) *
                 (2.0 * mu2 * mu2 * mu2 - 3.0 * mu4 * mu2 + mu6) / sigma1_cubed;
  if (options.kappa_method != KappaMethod::PairSum) {
    params.kappa = tau_sq * 2.0 / (nd * nd * nd * (nd - 1.0)) * r3 / (N - 1.0) *
                   var_kappa_bracket(pop, options.simplified_var_kappa) /
                   sigma1_cubed;
  }
  return params;
}

EdgeworthParams edgeworth_params_oracle(const PopulationFrame& pop,
                                        std::size_t n, StatKind kind) {
  check_sizes(pop, n, 4);
  const auto g1 = influence_first(pop, n, kind);
  const double N = static_cast<double>(pop.size());
  double m2 = 0.0, m3 = 0.0;
  for (double g : g1) {
    m2 += g * g;
    m3 += g * g * g;
  }
  m2 /= N;
  m3 /= N;
  if (!(m2 > 0.0)) {
    throw DegenerateError("sigma_1^2 is zero; Edgeworth parameters undefined");
  }
  const double sigma1_cubed = std::pow(m2, 1.5);
  auto params = EdgeworthParams::make(0.0, 0.0, n, pop.size());
  params.alpha = m3 / sigma1_cubed;
  const double pair_sum = SecondInfluence(pop, n, kind).pair_product_sum(g1);
  params.kappa = params.tau_sq * pair_sum / choose2(N) / sigma1_cubed;
  return params;
}

}  // namespace gmd
