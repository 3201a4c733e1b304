#pragma once

// Scale-estimation strategies built on U_G, and plug-in / auxiliary-variable
// estimators of Var U and of the Edgeworth parameters.

#include <optional>
#include <span>
#include <vector>

#include "gmd/core.hpp"
#include "gmd/hoeffding.hpp"
#include "gmd/ustat.hpp"

namespace gmd {

// Values z_1..z_N of an auxiliary variable, known for every population unit.
struct AuxiliaryFrame {
  std::vector<double> z_values;
  std::optional<double> correlation_with_x;

  // Throws DataError on non-finite values, SizeError for fewer than two.
  static AuxiliaryFrame from_values(std::vector<double> z);
};

enum class Strategy { S1, S2, S3 };
enum class ScaleTarget { SqrtV, G };

struct StrategyEstimate {
  Strategy strategy = Strategy::S3;
  double point = 0.0;
  double correction_a = 1.0;
  ScaleTarget target = ScaleTarget::G;
};

// Superpopulation family assumed by strategy S1.
struct ScaleModel {
  enum class Family { Normal, Exponential, Gamma };
  Family family = Family::Normal;
  double shape = 0.0;  // Gamma only

  static ScaleModel normal() { return {Family::Normal, 0.0}; }
  static ScaleModel exponential() { return {Family::Exponential, 0.0}; }
  static ScaleModel gamma(double k) { return {Family::Gamma, k}; }
};

// a such that a * U_G is unbiased for the standard deviation under the model:
// sqrt(pi)/2 (normal), 1 (exponential), k^-1/2 (2 - 4 I_0.5(k+1, k))^-1
// (gamma). ArgumentError for a nonpositive gamma shape.
double correction_factor(const ScaleModel& model);

// I_t(u, v) by continued fraction (modified Lentz), using
// I_t(u,v) = 1 - I_{1-t}(v,u) above t = u/(u+v). ArgumentError outside
// t in [0,1], u > 0, v > 0.
double regularized_incomplete_beta(double t, double u, double v);

// S1 -> a(model) U_G, S2 -> (sqrt(V_z)/G_z) U_G, S3 -> U_G.
StrategyEstimate scale_estimate(Strategy strategy, const SampleDraw& sample,
                                const std::optional<ScaleModel>& model = std::nullopt,
                                const AuxiliaryFrame* aux = nullptr);

// sqrt(V_z) / G_z of the auxiliary population. DegenerateAuxError when z
// is constant.
double auxiliary_correction(const AuxiliaryFrame& aux);

struct VarianceEstimate {
  double sigma1_sq_hat = 0.0;
  double sigma2_sq_hat = 0.0;
  double var_hat = 0.0;
};

// Plug-in variance components; SizeError unless n >= 3 and N >= 4.
VarianceEstimate sigma_components_hat(const SampleDraw& s, StatKind kind,
                                      SumPath path = SumPath::Fast);

// Plug-in alpha and kappa (no auxiliary data). Needs n >= 4.
// DegenerateSampleError when the estimated sigma_1 is zero up to rounding.
// KappaMethod::PairSum is not available here (ArgumentError).
EdgeworthParams edgeworth_params_hat(const SampleDraw& s, StatKind kind,
                                     const EdgeworthOptions& options = {});

// alpha and kappa of the z-population; deterministic.
EdgeworthParams edgeworth_params_aux(const AuxiliaryFrame& aux, std::size_t n,
                                     StatKind kind,
                                     const EdgeworthOptions& options = {});

}  // namespace gmd
