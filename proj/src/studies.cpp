#include <cmath>
#include <cstdio>
#include <optional>

#include "gmd/errors.hpp"
#include "gmd/parallel.hpp"
#include "gmd/simkit.hpp"
#include "simkit_tags.hpp"

namespace gmd {

namespace {

std::string rho_label(double rho) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "S2_rho%g", rho);
  return buf;
}

ScaleModel model_for(const DistSpec& base) {
  if (base.family == DistSpec::Family::Normal) return ScaleModel::normal();
  return ScaleModel::gamma(base.a);
}

// Mean and sample standard deviation of the rows flagged as kept.
void summarize(const std::vector<std::vector<double>>& per_sample,
               const std::vector<char>& kept, std::size_t width, QuantileRow& row) {
  std::size_t m = 0;
  row.values.assign(width, 0.0);
  row.std_errors.assign(width, 0.0);
  for (std::size_t j = 0; j < per_sample.size(); ++j) {
    if (!kept[j]) continue;
    ++m;
    for (std::size_t i = 0; i < width; ++i) row.values[i] += per_sample[j][i];
  }
  row.excluded = per_sample.size() - m;
  if (m == 0) throw DegenerateError("no usable samples for row " + row.label);
  for (auto& v : row.values) v /= static_cast<double>(m);
  if (m < 2) return;
  for (std::size_t j = 0; j < per_sample.size(); ++j) {
    if (!kept[j]) continue;
    for (std::size_t i = 0; i < width; ++i) {
      const double d = per_sample[j][i] - row.values[i];
      row.std_errors[i] += d * d;
    }
  }
  for (auto& v : row.std_errors) v = std::sqrt(v / static_cast<double>(m - 1));
}

QuantileRow fixed_row(std::string label, const QuantileTable& t) {
  QuantileRow row;
  row.label = std::move(label);
  row.values = t.quantiles;
  row.excluded = t.excluded;
  return row;
}

}  // namespace

void StudyConfig::validate() const {
  const std::size_t N = scenario.N;
  if (n < 3 || n >= N) throw SizeError("study needs 3 <= n < N");
  if (N < 4) throw SizeError("study population needs at least four units");
  if (replications < 1) throw ArgumentError("replications must be at least 1");
  if (rho_targets.empty()) throw ArgumentError("at least one correlation target is required");
  for (double rho : rho_targets) {
    if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("correlation targets must lie in (0, 1)");
  }
  if (scenario.p_sequence.empty()) throw ArgumentError("empty outlier sequence");
  if (bootstrap_resamples < 1 || bootstrap_populations < 1) {
    throw ArgumentError("bootstrap sizes must be at least 1");
  }
  check_q_levels(q_levels);
}

BiasMseReport bias_mse_study(const StudyConfig& cfg) {
  cfg.validate();
  const auto cont = contaminate(cfg.scenario, cfg.seed);
  const double a1 = correction_factor(model_for(cfg.scenario.base));
  const std::size_t n_rho = cfg.rho_targets.size();
  const std::size_t methods = 2 + n_rho;
  const double N = static_cast<double>(cfg.scenario.N);

  BiasMseReport report;
  for (std::size_t level = 0; level < cont.frames.size(); ++level) {
    const auto& pop = cont.frames[level];
    const double p_over_N = static_cast<double>(cont.p_sequence[level]) / N;
    const double target = std::sqrt(population_scale(pop, StatKind::Var));

    std::vector<double> a2(n_rho);
    for (std::size_t r = 0; r < n_rho; ++r) {
      RandomStream aux_rng(cfg.seed, {tags::kAuxiliary, level, r});
      const auto aux = generate_auxiliary(pop, cfg.rho_targets[r], aux_rng);
      a2[r] = auxiliary_correction(aux);
      report.realized.push_back({p_over_N, cfg.rho_targets[r], *aux.correlation_with_x});
    }

    std::vector<double> errors(cfg.replications * methods);
    parallel_for(
        cfg.replications,
        [&](std::size_t rep) {
          RandomStream rng(cfg.seed, {tags::kBiasSample, level, rep});
          const SampleDraw s = srswor(pop, cfg.n, rng);
          const double ug = u_statistic(s, StatKind::Gmd);
          const double uv = u_statistic(s, StatKind::Var);
          double* e = &errors[rep * methods];
          e[0] = std::sqrt(std::max(uv, 0.0)) - target;
          e[1] = a1 * ug - target;
          for (std::size_t r = 0; r < n_rho; ++r) e[2 + r] = a2[r] * ug - target;
        },
        cfg.workers);

    for (std::size_t m = 0; m < methods; ++m) {
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        const double e = errors[rep * methods + m];
        sum += e;
        sum_sq += e * e;
      }
      const double R = static_cast<double>(cfg.replications);
      BiasMseRow row;
      row.p_over_N = p_over_N;
      row.method = m == 0 ? "sqrtUV" : m == 1 ? "S1" : rho_label(cfg.rho_targets[m - 2]);
      row.bias_x10 = 10.0 * sum / R;
      row.rmse_x10 = 10.0 * std::sqrt(sum_sq / R);
      report.rows.push_back(row);
    }
  }
  return report;
}

ApproximationReport approximation_study(const StudyConfig& cfg, StatKind kind) {
  cfg.validate();
  const auto cont = contaminate(cfg.scenario, cfg.seed);
  const std::size_t level = cont.frames.size() - 1;
  const auto& pop = cont.frames[level];
  const std::size_t N = cfg.scenario.N;
  const std::size_t width = cfg.q_levels.size();

  ApproximationReport report;
  report.kind = kind;
  report.q_levels = cfg.q_levels;
  report.p_over_N = static_cast<double>(cont.p_sequence[level]) / static_cast<double>(N);

  RandomStream aux_rng(cfg.seed, {tags::kAuxiliary, level, 0});
  const auto aux = generate_auxiliary(pop, cfg.rho_targets.front(), aux_rng);
  report.realized = {report.p_over_N, cfg.rho_targets.front(), *aux.correlation_with_x};

  const auto mc = mc_reference_cdf(pop, cfg.n, kind, cfg.mc_reference_R, cfg.q_levels,
                                   stream_id({cfg.seed, tags::kMcReference}), cfg.workers);
  report.rows.push_back(fixed_row("F_inv", mc));
  report.rows.push_back(fixed_row("Phi_inv", normal_table(cfg.q_levels)));
  report.rows.push_back(fixed_row(
      "H_inv", edgeworth_table(cfg.q_levels, edgeworth_params_true(pop, cfg.n, kind),
                               QuantileSource::EdgeworthTrue)));
  report.rows.push_back(fixed_row(
      "zH_inv", edgeworth_table(cfg.q_levels, edgeworth_params_aux(aux, cfg.n, kind),
                                QuantileSource::EdgeworthHatZ)));

  const std::size_t R = cfg.replications;
  std::vector<std::vector<double>> hat(R), boot(R);
  std::vector<char> hat_ok(R, 0), boot_ok(R, 0);
  parallel_for(
      R,
      [&](std::size_t j) {
        RandomStream rng(cfg.seed, {tags::kSample, j});
        const SampleDraw s = srswor(pop, cfg.n, rng);
        try {
          hat[j] = edgeworth_table(cfg.q_levels, edgeworth_params_hat(s, kind),
                                   QuantileSource::EdgeworthHatA)
                       .quantiles;
          hat_ok[j] = 1;
        } catch (const DegenerateError&) {
        } catch (const NumericalError&) {
        }
        BootstrapPlan plan;
        plan.outer_populations = cfg.bootstrap_populations;
        plan.inner_resamples = cfg.bootstrap_resamples;
        plan.seed = stream_id({cfg.seed, tags::kBootstrap, j});
        try {
          boot[j] = bootstrap_distribution(s, kind, plan, cfg.q_levels, 1).quantiles;
          boot_ok[j] = 1;
        } catch (const DegenerateError&) {
        }
      },
      cfg.workers);

  QuantileRow hat_row;
  hat_row.label = "Hhat_inv";
  summarize(hat, hat_ok, width, hat_row);
  report.rows.push_back(hat_row);
  QuantileRow boot_row;
  boot_row.label = "Ftilde_inv";
  summarize(boot, boot_ok, width, boot_row);
  report.rows.push_back(boot_row);
  return report;
}

}  // namespace gmd
