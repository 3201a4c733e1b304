#include "gmd/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmd/approx.hpp"
#include "gmd/errors.hpp"
#include "gmd/estimate.hpp"
#include "gmd/table_io.hpp"

namespace gmd::cli {

namespace {

using nlohmann::json;

const std::vector<double> kDefaultLevels{0.01, 0.05, 0.10, 0.90, 0.95, 0.99};

StatKind parse_kind(const std::string& s) {
  if (s == "gmd") return StatKind::Gmd;
  if (s == "var") return StatKind::Var;
  throw ArgumentError("unknown kind '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "s1") return Strategy::S1;
  if (s == "s2") return Strategy::S2;
  if (s == "s3") return Strategy::S3;
  throw ArgumentError("unknown strategy '" + s + "'");
}

ScaleModel parse_model(const std::string& s) {
  if (s == "normal") return ScaleModel::normal();
  if (s == "exponential") return ScaleModel::exponential();
  if (s.rfind("gamma:", 0) == 0) {
    const std::string k = s.substr(6);
    char* end = nullptr;
    const double shape = std::strtod(k.c_str(), &end);
    if (k.empty() || end != k.c_str() + k.size()) {
      throw ArgumentError("bad gamma shape in '" + s + "'");
    }
    return ScaleModel::gamma(shape);
  }
  throw ArgumentError("unknown model '" + s + "'");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::S1: return "s1";
    case Strategy::S2: return "s2";
    case Strategy::S3: return "s3";
  }
  return "?";
}

DistSpec parse_dist(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "normal") {
    return DistSpec::normal(j.value("mu", 0.0), j.at("sigma_sq").get<double>());
  }
  if (family == "gamma") {
    return DistSpec::gamma(j.at("shape").get<double>(), j.at("scale").get<double>());
  }
  throw ArgumentError("unknown distribution family '" + family + "'");
}

json dist_json(const DistSpec& d) {
  if (d.family == DistSpec::Family::Normal) {
    return {{"family", "normal"}, {"mu", d.a}, {"sigma_sq", d.b}};
  }
  return {{"family", "gamma"}, {"shape", d.a}, {"scale", d.b}};
}

json config_json(const StudyConfig& c) {
  return {{"scenario",
           {{"base", dist_json(c.scenario.base)},
            {"outlier", dist_json(c.scenario.outlier)},
            {"N", c.scenario.N},
            {"p_sequence", c.scenario.p_sequence}}},
          {"n", c.n},
          {"rho_targets", c.rho_targets},
          {"replications", c.replications},
          {"mc_reference_R", c.mc_reference_R},
          {"bootstrap_resamples", c.bootstrap_resamples},
          {"bootstrap_populations", c.bootstrap_populations},
          {"q_levels", c.q_levels},
          {"seed", c.seed}};
}

StudyConfig config_from_json(const json& j) {
  StudyConfig c;
  const json& sc = j.at("scenario");
  c.scenario.base = parse_dist(sc.at("base"));
  c.scenario.outlier = sc.contains("outlier") ? parse_dist(sc.at("outlier")) : c.scenario.base;
  c.scenario.N = sc.at("N").get<std::size_t>();
  c.scenario.p_sequence = sc.value("p_sequence", std::vector<std::size_t>{0});
  c.n = j.at("n").get<std::size_t>();
  c.rho_targets = j.value("rho_targets", c.rho_targets);
  c.replications = j.value("replications", c.replications);
  c.mc_reference_R = j.value("mc_reference_R", c.mc_reference_R);
  c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  c.bootstrap_populations = j.value("bootstrap_populations", c.bootstrap_populations);
  c.q_levels = j.value("q_levels", c.q_levels);
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

json realized_json(const std::vector<RealizedRho>& rs) {
  json out = json::array();
  for (const auto& r : rs) {
    out.push_back({{"p_over_N", r.p_over_N},
                   {"rho_target", r.rho_target},
                   {"rho_realized", r.rho_realized}});
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path.string());
  f << text;
}

// Runs a study and writes <out>/<name>.csv plus <out>/manifest.json.
void run_study(const std::string& name, const StudyConfig& cfg, bool bias_mse,
               const std::vector<StatKind>& kinds, const std::string& out_dir,
               json manifest, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  std::vector<RealizedRho> realized;
  json files = json::array();
  if (bias_mse) {
    const auto report = bias_mse_study(cfg);
    std::ostringstream os;
    write_bias_mse_report(os, report);
    const std::string file = name + ".csv";
    write_file(std::filesystem::path(out_dir) / file, os.str());
    files.push_back(file);
    realized = report.realized;
  } else {
    for (StatKind kind : kinds) {
      const auto report = approximation_study(cfg, kind);
      std::ostringstream os;
      write_approximation_report(os, report);
      const std::string file =
          kinds.size() == 1 ? name + ".csv" : name + "_" + std::string(to_string(kind)) + ".csv";
      write_file(std::filesystem::path(out_dir) / file, os.str());
      files.push_back(file);
      realized.push_back(report.realized);
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["seed"] = cfg.seed;
  manifest["config"] = config_json(cfg);
  manifest["outputs"] = files;
  manifest["realized_rho"] = realized_json(realized);
  manifest["wall_time_seconds"] = seconds;
  write_file(std::filesystem::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& f : files) out << (std::filesystem::path(out_dir) / f.get<std::string>()).string() << '\n';
}

std::vector<double> read_data(const std::string& path, bool header) {
  return read_csv_column(path, header);
}

AuxiliaryFrame read_aux(const std::string& path) {
  return AuxiliaryFrame::from_values(read_csv_column(path, true, "z"));
}

std::string na_or(const std::optional<double>& v) {
  return v ? format_number(*v) : "NA";
}

int dispatch(CLI::App& app, CLI::App* estimate, CLI::App* approx, CLI::App* simulate,
             CLI::App* reproduce, std::ostream& out);

}  // namespace

CannedStudy canned_study(const std::string& table, const std::string& scale,
                         std::uint64_t seed) {
  if (scale != "desk" && scale != "paper") throw ArgumentError("unknown scale '" + scale + "'");
  static const std::vector<std::string> names{"t1", "t2", "t3", "t4", "t5",
                                              "t6", "t7", "t8", "t9", "t10"};
  std::size_t idx = 0;
  for (; idx < names.size() && names[idx] != table; ++idx) {
  }
  if (idx == names.size()) throw ArgumentError("unknown table '" + table + "'");

  CannedStudy c;
  c.table = table;
  StudyConfig& cfg = c.config;
  // t1, t3, t4, t7, t8 use the normal populations; the rest the gamma ones.
  const bool normal = idx == 0 || idx == 2 || idx == 3 || idx == 6 || idx == 7;
  if (normal) {
    cfg.scenario.base = DistSpec::normal(0.0, 1.0);
    cfg.scenario.outlier = DistSpec::normal(0.0, 9.0);
  } else {
    cfg.scenario.base = DistSpec::gamma(3.0, 1.0 / std::sqrt(3.0));
    cfg.scenario.outlier = DistSpec::gamma(3.0, std::sqrt(3.0));
  }
  cfg.scenario.N = 1000;
  cfg.n = 200;
  cfg.seed = seed;
  if (idx < 2) {
    c.bias_mse = true;
    cfg.scenario.p_sequence = {0, 20, 40, 60, 80, 100};
    cfg.rho_targets = {0.9, 0.7, 0.5};
    cfg.replications = 10000;
    return c;
  }
  c.kind = idx % 2 == 0 ? StatKind::Gmd : StatKind::Var;
  cfg.scenario.p_sequence = idx < 6 ? std::vector<std::size_t>{0}
                                    : std::vector<std::size_t>{0, 20, 40, 60};
  cfg.rho_targets = {0.7};
  cfg.replications = 1000;
  cfg.mc_reference_R = scale == "desk" ? 100000 : 1000000;
  cfg.bootstrap_resamples = 10000;
  return c;
}

namespace {

struct Options {
  std::string data, aux, strategy = "s3", model, kind = "gmd", method = "normal",
                         config, out_dir = ".", table, scale = "desk";
  std::optional<std::size_t> n_total, replications, mc_r, resamples;
  std::vector<double> q_levels;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  bool header = false;
};

Options opt;

int run_estimate(std::ostream& out) {
  if (!opt.n_total) throw ArgumentError("--n-total is required");
  const SampleDraw s(read_data(opt.data, opt.header), *opt.n_total);
  const Strategy strategy = parse_strategy(opt.strategy);
  std::optional<ScaleModel> model;
  if (!opt.model.empty()) model = parse_model(opt.model);
  std::optional<AuxiliaryFrame> aux;
  if (!opt.aux.empty()) aux = read_aux(opt.aux);
  const auto est = scale_estimate(strategy, s, model, aux ? &*aux : nullptr);

  std::optional<double> s_sq, sigma1, sigma2, var_hat, alpha, kappa;
  if (s.size() >= 3) {
    s_sq = jackknife_variance(s, StatKind::Gmd);
    if (s.parent_size() >= 4) {
      const auto v = sigma_components_hat(s, StatKind::Gmd);
      sigma1 = v.sigma1_sq_hat;
      sigma2 = v.sigma2_sq_hat;
      var_hat = v.var_hat;
    }
  }
  if (s.size() >= 4 && s.parent_size() >= 5) {
    try {
      const auto p = edgeworth_params_hat(s, StatKind::Gmd);
      alpha = p.alpha;
      kappa = p.kappa;
    } catch (const DegenerateError&) {
    }
  }
  out << "field,value\n"
      << "strategy," << strategy_name(strategy) << '\n'
      << "point," << format_number(est.point) << '\n'
      << "correction_a," << format_number(est.correction_a) << '\n'
      << "target," << (est.target == ScaleTarget::G ? "G" : "sqrtV") << '\n'
      << "sigma1_sq_hat," << na_or(sigma1) << '\n'
      << "sigma2_sq_hat," << na_or(sigma2) << '\n'
      << "var_hat," << na_or(var_hat) << '\n'
      << "jackknife_s_sq," << na_or(s_sq) << '\n'
      << "alpha_hat," << na_or(alpha) << '\n'
      << "kappa_hat," << na_or(kappa) << '\n';
  return kOk;
}

int run_approx(std::ostream& out) {
  const std::vector<double> q = opt.q_levels.empty() ? kDefaultLevels : opt.q_levels;
  check_q_levels(q);
  const StatKind kind = parse_kind(opt.kind);
  if (opt.method == "normal") {
    write_quantile_table(out, normal_table(q));
    return kOk;
  }
  if (opt.method != "edgeworth" && opt.method != "edgeworth-aux" && opt.method != "bootstrap") {
    throw ArgumentError("unknown method '" + opt.method + "'");
  }
  if (!opt.n_total) throw ArgumentError("--n-total is required");
  if (opt.data.empty()) throw ArgumentError("--data is required");
  const SampleDraw s(read_data(opt.data, opt.header), *opt.n_total);
  if (opt.method == "edgeworth") {
    write_quantile_table(
        out, edgeworth_table(q, edgeworth_params_hat(s, kind), QuantileSource::EdgeworthHatA));
  } else if (opt.method == "edgeworth-aux") {
    if (opt.aux.empty()) throw ArgumentError("--aux is required for edgeworth-aux");
    const auto aux = read_aux(opt.aux);
    if (aux.z_values.size() != s.parent_size()) {
      throw DataError("auxiliary file must hold N values");
    }
    write_quantile_table(out, edgeworth_table(q, edgeworth_params_aux(aux, s.size(), kind),
                                              QuantileSource::EdgeworthHatZ));
  } else {
    BootstrapPlan plan;
    plan.seed = opt.seed;
    if (opt.resamples) plan.inner_resamples = *opt.resamples;
    write_quantile_table(out, bootstrap_distribution(s, kind, plan, q, opt.workers));
  }
  return kOk;
}

int run_simulate(std::ostream& out) {
  std::ifstream f(opt.config);
  if (!f) throw DataError("cannot open " + opt.config);
  const json j = json::parse(f);
  StudyConfig cfg = config_from_json(j);
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  const std::string study = j.value("study", std::string("approximation"));
  std::vector<StatKind> kinds;
  const std::string k = j.value("kind", std::string("both"));
  if (k == "both") {
    kinds = {StatKind::Gmd, StatKind::Var};
  } else {
    kinds = {parse_kind(k)};
  }
  if (study != "bias_mse" && study != "approximation") {
    throw ArgumentError("unknown study '" + study + "'");
  }
  json manifest = {{"command", "simulate"}, {"study", study}};
  run_study(study == "bias_mse" ? "bias_mse" : "approximation", cfg, study == "bias_mse", kinds,
            opt.out_dir, manifest, out);
  return kOk;
}

int run_reproduce(std::ostream& out) {
  CannedStudy c = canned_study(opt.table, opt.scale, opt.seed);
  if (opt.replications) c.config.replications = *opt.replications;
  if (opt.mc_r) c.config.mc_reference_R = *opt.mc_r;
  if (opt.resamples) c.config.bootstrap_resamples = *opt.resamples;
  c.config.workers = opt.workers;
  json manifest = {{"command", "reproduce"}, {"table", c.table}, {"scale", opt.scale}};
  run_study(c.table, c.config, c.bias_mse, {c.kind}, opt.out_dir, manifest, out);
  return kOk;
}

int dispatch(CLI::App&, CLI::App* estimate, CLI::App* approx, CLI::App* simulate,
             CLI::App* reproduce, std::ostream& out) {
  if (*estimate) return run_estimate(out);
  if (*approx) return run_approx(out);
  if (*simulate) return run_simulate(out);
  if (*reproduce) return run_reproduce(out);
  throw ArgumentError("no command given");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  opt = Options{};
  CLI::App app{"Finite-population scale estimation with Gini's mean difference", "gmdscale"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub) {
    sub->add_option("--workers", opt.workers, "Worker threads (default: GMD_WORKERS or all cores)");
  };

  auto* estimate = app.add_subcommand("estimate", "Scale estimate and plug-in parameters");
  estimate->add_option("--data", opt.data, "Sample CSV (first column)")->required();
  estimate->add_option("--aux", opt.aux, "Auxiliary CSV with a column named z");
  estimate->add_option("--n-total", opt.n_total, "Population size N")->required();
  estimate->add_option("--strategy", opt.strategy, "s1|s2|s3");
  estimate->add_option("--model", opt.model, "normal|exponential|gamma:k");
  estimate->add_flag("--header", opt.header, "Data file has a header line");

  auto* approx = app.add_subcommand("approx", "Quantiles of an approximation to F_nS");
  approx->add_option("--data", opt.data, "Sample CSV (first column)");
  approx->add_option("--aux", opt.aux, "Auxiliary CSV with a column named z");
  approx->add_option("--n-total", opt.n_total, "Population size N");
  approx->add_option("--kind", opt.kind, "gmd|var");
  approx->add_option("--method", opt.method, "normal|edgeworth|edgeworth-aux|bootstrap");
  approx->add_option("--q", opt.q_levels, "Quantile levels")->delimiter(',');
  approx->add_option("--seed", opt.seed, "Seed (bootstrap)");
  approx->add_option("--resamples", opt.resamples, "Bootstrap resamples");
  approx->add_flag("--header", opt.header, "Data file has a header line");
  add_common(approx);

  auto* simulate = app.add_subcommand("simulate", "Run a study from a JSON config");
  simulate->add_option("--config", opt.config, "JSON study config")->required();
  simulate->add_option("--out", opt.out_dir, "Output directory")->required();
  simulate->add_option("--seed", opt.seed, "Seed")->required();
  add_common(simulate);

  auto* reproduce = app.add_subcommand("reproduce", "Run a canned table setup");
  reproduce->add_option("--table", opt.table, "t1..t10")->required();
  reproduce->add_option("--scale", opt.scale, "desk|paper");
  reproduce->add_option("--out", opt.out_dir, "Output directory")->required();
  reproduce->add_option("--seed", opt.seed, "Seed")->required();
  reproduce->add_option("--replications", opt.replications, "Override sample-loop replications");
  reproduce->add_option("--mc-r", opt.mc_r, "Override Monte Carlo reference size");
  reproduce->add_option("--resamples", opt.resamples, "Override bootstrap resamples");
  add_common(reproduce);

  std::vector<std::string> argv_store{"gmdscale"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return dispatch(app, estimate, approx, simulate, reproduce, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: bad config: " << e.what() << '\n';
    return kUsage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace gmd::cli
