#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "gmd/errors.hpp"
#include "gmd/estimate.hpp"
#include "oracles.hpp"

using namespace gmd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// E|X - Y| for iid Gamma(k, 1) is 2 Gamma(k + 1/2) / (sqrt(pi) Gamma(k)).
double gamma_unbiasing(double k) {
  return std::sqrt(k) * std::sqrt(M_PI) * std::tgamma(k) / (2.0 * std::tgamma(k + 0.5));
}

std::vector<double> draw(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::gamma_distribution<double> d(2.5, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

double moment(const std::vector<double>& x, int k) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double m = 0.0;
  for (double v : x) m += std::pow(v - mean, k);
  return m / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("correction factors") {
  CHECK_THAT(correction_factor(ScaleModel::normal()), WithinRel(std::sqrt(M_PI) / 2.0, 1e-15));
  CHECK(correction_factor(ScaleModel::exponential()) == 1.0);
  CHECK_THAT(correction_factor(ScaleModel::gamma(3.0)), WithinRel(8.0 * std::sqrt(3.0) / 15.0, 1e-12));
  for (double k : {0.3, 0.5, 1.0, 2.0, 3.0, 7.5, 20.0, 120.0}) {
    CHECK_THAT(correction_factor(ScaleModel::gamma(k)), WithinRel(gamma_unbiasing(k), 1e-11));
  }
  CHECK_THROWS_AS(correction_factor(ScaleModel::gamma(0.0)), ArgumentError);
  CHECK_THROWS_AS(correction_factor(ScaleModel::gamma(-1.0)), ArgumentError);
}

TEST_CASE("regularized incomplete beta") {
  CHECK_THAT(regularized_incomplete_beta(0.5, 4.0, 3.0), WithinRel(11.0 / 32.0, 1e-14));
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  for (double u : {0.5, 1.0, 2.5, 4.0, 11.0, 60.0}) {
    for (double v : {0.7, 1.0, 3.0, 9.5, 50.0}) {
      for (double t : {0.01, 0.2, 0.5, 0.73, 0.99}) {
        CHECK_THAT(regularized_incomplete_beta(t, u, v),
                   WithinAbs(boost::math::ibeta(u, v, t), 1e-13));
      }
    }
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(1.5, 1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 1.0, -2.0), ArgumentError);
}

TEST_CASE("strategies") {
  const SampleDraw s(std::vector<double>{1, 2, 4}, 6);
  const auto s3 = scale_estimate(Strategy::S3, s);
  CHECK(s3.point == 2.0);
  CHECK(s3.target == ScaleTarget::G);
  const auto s1 = scale_estimate(Strategy::S1, s, ScaleModel::normal());
  CHECK_THAT(s1.point, WithinRel(std::sqrt(M_PI), 1e-15));
  CHECK(s1.target == ScaleTarget::SqrtV);

  // With z = x the S2 correction is sqrt(V)/G of the population itself.
  const std::vector<double> x{0, 1, 2, 5, 1, 4};
  const auto aux = AuxiliaryFrame::from_values(x);
  const double a = auxiliary_correction(aux);
  const auto pop = build_population(x);
  CHECK_THAT(a, WithinRel(std::sqrt(population_scale(pop, StatKind::Var)) /
                              population_scale(pop, StatKind::Gmd), 1e-14));
  CHECK_THAT(scale_estimate(Strategy::S2, s, std::nullopt, &aux).point, WithinRel(2.0 * a, 1e-15));

  CHECK_THROWS_AS(scale_estimate(Strategy::S1, s), ArgumentError);
  CHECK_THROWS_AS(scale_estimate(Strategy::S2, s), ArgumentError);
  const auto flat = AuxiliaryFrame::from_values(std::vector<double>(6, 1.0));
  CHECK_THROWS_AS(scale_estimate(Strategy::S2, s, std::nullopt, &flat), DegenerateAuxError);
  CHECK_THROWS_AS(AuxiliaryFrame::from_values({1.0, NAN}), DataError);
}

TEST_CASE("plug-in variance components") {
  const SampleDraw s(std::vector<double>{1, 2, 4}, 6);
  CHECK_THAT(sigma_components_hat(s, StatKind::Var).sigma1_sq_hat, WithinRel(49.0 / 162.0, 1e-14));

  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto x = draw(6 + 9 * seed, seed);
    const std::size_t n = x.size(), N = 4 * n + 3;
    const SampleDraw sd(x, N);
    const double dn = static_cast<double>(n), dN = static_cast<double>(N);
    const auto fast = sigma_components_hat(sd, StatKind::Gmd);
    const auto naive = sigma_components_hat(sd, StatKind::Gmd, SumPath::Naive);
    CHECK_THAT(fast.sigma1_sq_hat, WithinRel(naive.sigma1_sq_hat, 1e-11));
    CHECK_THAT(fast.sigma2_sq_hat, WithinAbs(naive.sigma2_sq_hat, 1e-11 * fast.sigma1_sq_hat));

    // Literal bracket over sample spacings with A_i = (2i - n)/n.
    const auto d = sd.spacings();
    double b1 = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double wi = (2.0 * i - dn) / dn * d[i - 1];
      b1 += i * (dn - i) * wi * wi;
      for (std::size_t j = i + 1; j < n; ++j) b1 += 2.0 * i * (dn - j) * wi * (2.0 * j - dn) / dn * d[j - 1];
    }
    const double r = dN / (dN - 2.0);
    CHECK_THAT(fast.sigma1_sq_hat, WithinRel(4.0 / std::pow(dn, 4) * r * r * b1, 1e-11));

    const double m2 = moment(x, 2), m4 = moment(x, 4);
    const auto var = sigma_components_hat(sd, StatKind::Var);
    CHECK_THAT(var.sigma1_sq_hat, WithinRel(r * r / (dn * dn) * (m4 - m2 * m2), 1e-11));
    CHECK_THAT(var.var_hat, WithinRel(combine_variance(n, N, var.sigma1_sq_hat, var.sigma2_sq_hat), 1e-15));
  }
}

TEST_CASE("plug-in Edgeworth parameters") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto x = draw(8 + 7 * seed, seed + 10);
    const std::size_t n = x.size(), N = 5 * n;
    const double dn = static_cast<double>(n), dN = static_cast<double>(N);
    const double r3 = std::pow(dN / (dN - 2.0), 3);
    const double tau_sq = dn * (1.0 - dn / dN);
    const SampleDraw sd(x, N);

    // VAR: direct transcription in sample moments.
    const double m2 = moment(x, 2), m3 = moment(x, 3), m4 = moment(x, 4), m6 = moment(x, 6);
    const double s1 = sigma_components_hat(sd, StatKind::Var).sigma1_sq_hat;
    const double s13 = std::pow(s1, 1.5);
    const auto pv = edgeworth_params_hat(sd, StatKind::Var);
    CHECK_THAT(pv.alpha, WithinRel(r3 / (dn * dn * dn) * (2 * m2 * m2 * m2 - 3 * m4 * m2 + m6) / s13, 1e-10));
    const double bracket = -(dN - 2) * m3 * m3 - (2 * dN - 1) / (dN - 1) * m4 * m2 +
                           dN / (dN - 1) * m2 * m2 * m2 + m6;
    CHECK_THAT(pv.kappa, WithinRel(tau_sq * 2 / (dn * dn * dn * (dn - 1)) * r3 / (dN - 1) * bracket / s13, 1e-10));

    // GMD: the sample brackets equal the population brackets of the sample
    // viewed as a population of size n (any subsample size n' works).
    const auto as_pop = build_population(x);
    const std::size_t np = 3;
    const double dnp = 3.0;
    const auto t = edgeworth_params_true(as_pop, np, StatKind::Gmd);
    const auto comps = sigma_components(as_pop, np, StatKind::Gmd);
    const double st3 = std::pow(comps.sigma1_sq, 1.5);
    const double b3 = -t.alpha * st3 * std::pow(dnp, 3) * std::pow(dn - 2.0, 3) / 8.0;
    const double k_sum = -t.kappa * st3 / t.tau_sq * std::pow(dnp, 3) * (dnp - 1.0) *
                         (dn - 1.0) * (dn - 1.0) * std::pow(dn - 2.0, 3) / (16.0 * dn);
    const double sg = sigma_components_hat(sd, StatKind::Gmd).sigma1_sq_hat;
    const double sg3 = std::pow(sg, 1.5);
    const auto pg = edgeworth_params_hat(sd, StatKind::Gmd);
    CHECK_THAT(pg.alpha, WithinRel(-8.0 / std::pow(dn, 6) * r3 * b3 / sg3, 1e-9));
    CHECK_THAT(pg.kappa, WithinRel(-tau_sq * 16.0 / (std::pow(dn, 5) * std::pow(dn - 1, 3)) * r3 * k_sum / sg3, 1e-9));

    EdgeworthOptions triple;
    triple.kappa_method = KappaMethod::TripleSum;
    CHECK_THAT(edgeworth_params_hat(sd, StatKind::Gmd, triple).kappa, WithinRel(pg.kappa, 1e-9));
  }
}

TEST_CASE("plug-in estimates track the population values on large samples") {
  std::mt19937_64 g(77);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> x(3000);
  for (auto& v : x) v = d(g);
  const auto pop = build_population(x);
  std::vector<double> sample(x.begin(), x.begin() + 1500);  // iid draws, so a random subset
  const SampleDraw s(sample, x.size());
  const std::size_t n = 1500;
  for (auto kind : {StatKind::Gmd, StatKind::Var}) {
    const auto truth = sigma_components(pop, n, kind);
    const auto hat = sigma_components_hat(s, kind);
    CHECK_THAT(hat.sigma1_sq_hat, WithinRel(truth.sigma1_sq, 0.15));
    const auto pt = edgeworth_params_true(pop, n, kind);
    const auto ph = edgeworth_params_hat(s, kind);
    CHECK_THAT(ph.alpha, WithinRel(pt.alpha, 0.25));
    CHECK_THAT(ph.kappa, WithinAbs(pt.kappa, 0.15));
  }
}

TEST_CASE("auxiliary Edgeworth parameters use the z population") {
  const auto z = draw(40, 3);
  const auto aux = AuxiliaryFrame::from_values(z);
  for (auto kind : {StatKind::Gmd, StatKind::Var}) {
    const auto a = edgeworth_params_aux(aux, 10, kind);
    const auto b = edgeworth_params_true(build_population(z), 10, kind);
    CHECK(a.alpha == b.alpha);
    CHECK(a.kappa == b.kappa);
  }
  const auto flat = AuxiliaryFrame::from_values(std::vector<double>(40, 2.0));
  CHECK_THROWS_AS(edgeworth_params_aux(flat, 10, StatKind::Gmd), DegenerateAuxError);
}

TEST_CASE("plug-in errors") {
  const SampleDraw flat(std::vector<double>(8, 1.5), 30);
  CHECK_THROWS_AS(edgeworth_params_hat(flat, StatKind::Gmd), DegenerateSampleError);
  CHECK_THROWS_AS(edgeworth_params_hat(flat, StatKind::Var), DegenerateSampleError);
  const SampleDraw three(std::vector<double>{1, 2, 4}, 30);
  CHECK_THROWS_AS(edgeworth_params_hat(three, StatKind::Gmd), SizeError);
  const SampleDraw two(std::vector<double>{1, 2}, 30);
  CHECK_THROWS_AS(sigma_components_hat(two, StatKind::Gmd), SizeError);
  const SampleDraw ok(std::vector<double>{1, 2, 4, 9}, 30);
  EdgeworthOptions pair;
  pair.kappa_method = KappaMethod::PairSum;
  CHECK_THROWS_AS(edgeworth_params_hat(ok, StatKind::Gmd, pair), ArgumentError);
}
