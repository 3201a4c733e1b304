#pragma once

// Population-side Hoeffding decomposition of U_G and U_V under sampling
// without replacement: influence functions g1 and g2, variance components,
// the exact variance of U and the Edgeworth parameters alpha and kappa.
//
// Indices in this API are zero-based positions in the sorted population.

#include <cstddef>
#include <vector>

#include "gmd/core.hpp"

namespace gmd {

// Fast: prefix-sum evaluation of the closed-form sums. Naive: the literal
// double/triple loops, kept as a cross-check.
enum class SumPath { Fast, Naive };

// How kappa is evaluated by edgeworth_params_true.
enum class KappaMethod {
  ClosedForm,  // case-table triple sum, grouped evaluation (O(N^2))
  TripleSum,   // case-table triple sum, literal (N-1)^3 loop
  PairSum,     // C(N,2)^-1 sum_{k<l} g2 g1 g1, as in the oracle
};

struct EdgeworthOptions {
  KappaMethod kappa_method = KappaMethod::ClosedForm;
  // VAR only: keep just the mu_3^2 term inside the kappa bracket.
  bool simplified_var_kappa = false;
};

struct VarianceComponents {
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
};

struct HoeffdingParts {
  StatKind kind = StatKind::Gmd;
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<double> g1;
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
};

struct EdgeworthParams {
  double alpha = 0.0;
  double kappa = 0.0;
  double tau_sq = 0.0;  // n (1 - n/N)
  std::size_t n = 0;
  std::size_t N = 0;
  std::size_t n_star = 0;  // min(n, N - n)

  // Throws ArgumentError unless 1 <= n < N.
  static EdgeworthParams make(double alpha, double kappa, std::size_t n,
                              std::size_t N);
};

// g1(x_k) for every k. ArgumentError unless 2 <= n < N and N >= 3.
std::vector<double> influence_first(const PopulationFrame& pop, std::size_t n,
                                    StatKind kind);

// O(1) evaluation of g2 after an O(N) setup.
class SecondInfluence {
 public:
  SecondInfluence(const PopulationFrame& pop, std::size_t n, StatKind kind);

  // g2(x_k, x_l), symmetric; ArgumentError for k == l or out of range.
  double operator()(std::size_t k, std::size_t l) const;

  // Sum over k < l of g2(x_k, x_l) g(k) g(l) through the pair kernels.
  double pair_product_sum(std::span<const double> g) const;

 private:
  StatKind kind_;
  std::size_t size_;
  double scale_ = 0.0;
  // GMD: g2(k,l) = scale (u_k + w_l) for k < l.
  std::vector<double> u_, w_;
  // VAR: centred values and the constants of the closed form.
  std::vector<double> centred_;
  double shift_ = 0.0;
  double square_weight_ = 0.0;
};

double influence_second(const PopulationFrame& pop, std::size_t n,
                        StatKind kind, std::size_t k, std::size_t l);

// Closed-form sigma_1^2 and sigma_2^2. ArgumentError unless N >= 3 and
// 2 <= n < N. A tiny negative sigma_2^2 from cancellation is clamped to 0;
// a larger one raises NumericalError.
VarianceComponents sigma_components(const PopulationFrame& pop, std::size_t n,
                                    StatKind kind, SumPath path = SumPath::Fast);

HoeffdingParts hoeffding_parts(const PopulationFrame& pop, std::size_t n,
                               StatKind kind);

// n(N-n)/(N-1) s1 + C(n,2) C(N-n,2) / C(N-2,2) s2.
double combine_variance(std::size_t n, std::size_t N, double sigma1_sq,
                        double sigma2_sq);

// Exact Var U. ArgumentError for N < 4.
double u_variance(const PopulationFrame& pop, std::size_t n, StatKind kind);

// Closed-form alpha and kappa. DegenerateError when sigma_1^2 == 0.
EdgeworthParams edgeworth_params_true(const PopulationFrame& pop, std::size_t n,
                                      StatKind kind,
                                      const EdgeworthOptions& options = {});

// alpha and kappa from their definitions as moments of g1 and g2.
EdgeworthParams edgeworth_params_oracle(const PopulationFrame& pop,
                                        std::size_t n, StatKind kind);

}  // namespace gmd
