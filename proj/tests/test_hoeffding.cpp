#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "gmd/errors.hpp"
#include "gmd/hoeffding.hpp"
#include "oracles.hpp"
#include "spacing_sums.hpp"

using namespace gmd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_population(std::size_t N, unsigned seed) {
  std::mt19937_64 g(seed);
  std::vector<double> v(N);
  if (seed % 3 == 0) {
    std::gamma_distribution<double> d(2.0, 1.0);
    for (auto& x : v) x = d(g);
  } else if (seed % 3 == 1) {
    std::normal_distribution<double> d(0.0, 1.0);
    for (auto& x : v) x = d(g);
  } else {
    std::uniform_int_distribution<int> d(0, 9);  // ties
    for (auto& x : v) x = d(g);
  }
  return v;
}

const std::vector<double> kAnchor{0, 1, 2, 5};

}  // namespace

TEST_CASE("influence functions match their conditional-expectation definitions") {
  for (unsigned seed = 1; seed <= 6; ++seed) {
    const auto x = random_population(6 + 4 * seed, seed);
    const auto pop = build_population(x);
    const std::vector<double> sorted(pop.values().begin(), pop.values().end());
    const std::size_t N = sorted.size();
    for (std::size_t n : {std::size_t{2}, N / 2, N - 2}) {
      for (auto kind : {StatKind::Gmd, StatKind::Var}) {
        const auto ref = oracle::decompose(sorted, n, kind);
        const auto g1 = influence_first(pop, n, kind);
        const SecondInfluence g2(pop, n, kind);
        double scale1 = 0.0, scale2 = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          scale1 = std::max(scale1, std::fabs(ref.g1[k]));
          for (std::size_t l = 0; l < N; ++l) scale2 = std::max(scale2, std::fabs(ref.g2[k][l]));
        }
        for (std::size_t k = 0; k < N; ++k) {
          CHECK_THAT(g1[k], WithinAbs(ref.g1[k], 1e-11 * scale1));
          for (std::size_t l = 0; l < N; ++l) {
            if (k == l) continue;
            CHECK_THAT(g2(k, l), WithinAbs(ref.g2[k][l], 1e-10 * scale2));
            CHECK_THAT(influence_second(pop, n, kind, k, l), WithinAbs(ref.g2[k][l], 1e-10 * scale2));
          }
        }
      }
    }
  }
}

TEST_CASE("decomposition identities") {
  for (std::size_t N : {5u, 40u, 200u}) {
    const auto pop = build_population(random_population(N, static_cast<unsigned>(N)));
    for (std::size_t n : {std::size_t{2}, std::max<std::size_t>(2, N / 3), N - 1}) {
      for (auto kind : {StatKind::Gmd, StatKind::Var}) {
        const auto g1 = influence_first(pop, n, kind);
        const SecondInfluence g2(pop, n, kind);
        double sum = 0.0, sq = 0.0, abs_sum = 0.0;
        for (double g : g1) {
          sum += g;
          sq += g * g;
          abs_sum += std::fabs(g);
        }
        CHECK(std::fabs(sum) <= 1e-12 * abs_sum);
        double g2_sq = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          double row = 0.0, row_abs = 0.0;
          for (std::size_t l = 0; l < N; ++l) {
            if (l == k) continue;
            row += g2(k, l);
            row_abs += std::fabs(g2(k, l));
            if (l > k) g2_sq += g2(k, l) * g2(k, l);
          }
          CHECK(std::fabs(row) <= 1e-11 * row_abs + 1e-300);
        }
        const auto comps = sigma_components(pop, n, kind);
        const double dN = static_cast<double>(N);
        CHECK_THAT(sq / dN, WithinRel(comps.sigma1_sq, 1e-9));
        if (comps.sigma2_sq != 0.0) {
          CHECK_THAT(g2_sq / (dN * (dN - 1.0) / 2.0), WithinRel(comps.sigma2_sq, 1e-9));
        }
      }
    }
  }
}

TEST_CASE("naive and fast bracket sums agree") {
  for (std::size_t N : {4u, 9u, 31u, 120u}) {
    const auto pop = build_population(random_population(N, static_cast<unsigned>(N) + 1));
    const auto d = pop.spacings();
    CHECK_THAT(detail::sigma1_bracket(d, SumPath::Fast),
               WithinRel(detail::sigma1_bracket(d, SumPath::Naive), 1e-11));
    CHECK_THAT(detail::sigma2_bracket(d, SumPath::Fast),
               WithinRel(detail::sigma2_bracket(d, SumPath::Naive), 1e-11));
    CHECK_THAT(detail::alpha_bracket(d, SumPath::Fast),
               WithinRel(detail::alpha_bracket(d, SumPath::Naive), 1e-10));
    CHECK_THAT(detail::kappa_bracket(d, SumPath::Fast),
               WithinRel(detail::kappa_bracket(d, SumPath::Naive), 1e-9));
    for (std::size_t n : {std::size_t{2}, N / 2}) {
      for (auto kind : {StatKind::Gmd, StatKind::Var}) {
        const auto a = sigma_components(pop, n, kind, SumPath::Fast);
        const auto b = sigma_components(pop, n, kind, SumPath::Naive);
        CHECK_THAT(a.sigma1_sq, WithinRel(b.sigma1_sq, 1e-11));
        CHECK_THAT(a.sigma2_sq, WithinAbs(b.sigma2_sq, 1e-11 * a.sigma1_sq));
      }
    }
  }
}

TEST_CASE("kappa coefficient case table") {
  // Hand evaluations of each branch at M = 10.
  const long M = 10;
  CHECK_THAT(detail::kappa_coefficient(3, 5, 7, M), WithinRel(90.0, 1e-15));
  CHECK_THAT(detail::kappa_coefficient(3, 5, 4, M), WithinRel(138.0, 1e-15));
  CHECK_THAT(detail::kappa_coefficient(5, 3, 7, M), WithinRel(216.0, 1e-15));
  CHECK_THAT(detail::kappa_coefficient(4, 6, 2, M), WithinRel(52.8, 1e-14));
  CHECK_THAT(detail::kappa_coefficient(5, 3, 4, M), WithinRel(216.0, 1e-15));
  CHECK_THAT(detail::kappa_coefficient(5, 3, 2, M), WithinRel(52.0, 1e-15));
  CHECK_THAT(detail::kappa_coefficient(4, 4, 2, M), WithinRel(108.0, 1e-15));
}

TEST_CASE("variance of U over all samples") {
  const std::vector<std::vector<double>> suite{
      kAnchor, {1, 2, 4, 7, 11}, {3, 3, 5, 9, 10, 10}, {0, 0.5, 2.5, 3, 7, 7.5, 12},
      {-4, -1, 0, 0, 2, 6, 6.5, 13}};
  for (const auto& x : suite) {
    const auto pop = build_population(x);
    for (std::size_t n = 2; n < x.size(); ++n) {
      for (auto kind : {StatKind::Gmd, StatKind::Var}) {
        const auto m = oracle::enumerate_u(x, n, kind);
        CHECK_THAT(m.mean, WithinRel(population_scale(pop, kind), 1e-12));
        CHECK_THAT(u_variance(pop, n, kind), WithinRel(m.variance, 1e-10));
      }
    }
  }
  const auto pop = build_population(kAnchor);
  CHECK_THAT(u_variance(pop, 2, StatKind::Var), WithinRel(343.0 / 18.0, 1e-13));
  CHECK_THAT(u_variance(pop, 2, StatKind::Gmd), WithinRel(20.0 / 9.0, 1e-13));
  const auto v = sigma_components(pop, 2, StatKind::Var);
  CHECK_THAT(v.sigma1_sq, WithinRel(12.25, 1e-13));
  CHECK_THAT(v.sigma2_sq, WithinRel(49.0 / 18.0, 1e-13));
}

TEST_CASE("Edgeworth parameters: closed form against definitions") {
  const auto anchor = build_population(kAnchor);
  const auto p = edgeworth_params_true(anchor, 2, StatKind::Var);
  CHECK_THAT(p.alpha, WithinRel(27.0 / 42.875, 1e-13));
  CHECK_THAT(p.kappa, WithinRel(181.0 / 18.0 / 42.875, 1e-13));

  for (unsigned seed = 1; seed <= 6; ++seed) {
    const std::size_t N = 7 + 5 * seed;
    const auto x = random_population(N, seed + 40);
    const auto pop = build_population(x);
    const std::vector<double> sorted(pop.values().begin(), pop.values().end());
    for (std::size_t n : {std::size_t{2}, N / 2, N - 2}) {
      for (auto kind : {StatKind::Gmd, StatKind::Var}) {
        const auto ref = oracle::moments(oracle::decompose(sorted, n, kind), n);
        const auto closed = edgeworth_params_true(pop, n, kind);
        CHECK_THAT(closed.alpha, WithinAbs(ref.alpha, 1e-9 * (1.0 + std::fabs(ref.alpha))));
        CHECK_THAT(closed.kappa, WithinAbs(ref.kappa, 1e-9 * (1.0 + std::fabs(ref.kappa))));
        const auto lib_oracle = edgeworth_params_oracle(pop, n, kind);
        CHECK_THAT(lib_oracle.kappa, WithinAbs(ref.kappa, 1e-9 * (1.0 + std::fabs(ref.kappa))));
        for (auto method : {KappaMethod::TripleSum, KappaMethod::PairSum}) {
          EdgeworthOptions o;
          o.kappa_method = method;
          CHECK_THAT(edgeworth_params_true(pop, n, kind, o).kappa,
                     WithinAbs(closed.kappa, 1e-9 * (1.0 + std::fabs(closed.kappa))));
        }
      }
    }
  }
}

TEST_CASE("simplified VAR kappa approaches the full one as N grows") {
  std::mt19937_64 g(11);
  std::gamma_distribution<double> d(3.0, 1.0);
  std::vector<double> big(4000);
  for (auto& x : big) x = d(g);
  double previous = INFINITY;
  for (std::size_t N : {20u, 200u, 2000u}) {
    // Same shape at every N: equally spaced quantiles of one large draw.
    std::vector<double> sorted(big);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> x(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = sorted[(2 * i + 1) * sorted.size() / (2 * N)];
    const auto pop = build_population(x);
    EdgeworthOptions simple;
    simple.simplified_var_kappa = true;
    const std::size_t n = N / 5;
    const double full = edgeworth_params_true(pop, n, StatKind::Var).kappa;
    const double approx = edgeworth_params_true(pop, n, StatKind::Var, simple).kappa;
    const double gap = std::fabs(full - approx);
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("argument and degeneracy checks") {
  const auto pop = build_population(std::vector<double>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(influence_first(pop, 1, StatKind::Gmd), ArgumentError);
  CHECK_THROWS_AS(influence_first(pop, 5, StatKind::Gmd), ArgumentError);
  CHECK_THROWS_AS(SecondInfluence(pop, 2, StatKind::Var)(1, 1), ArgumentError);
  CHECK_THROWS_AS(SecondInfluence(pop, 2, StatKind::Var)(0, 5), ArgumentError);
  CHECK_THROWS_AS(u_variance(build_population(std::vector<double>{1, 2, 3}), 2, StatKind::Gmd),
                  ArgumentError);
  const auto flat = build_population(std::vector<double>(6, 2.0));
  CHECK_THROWS_AS(edgeworth_params_true(flat, 3, StatKind::Gmd), DegenerateError);
  CHECK_THROWS_AS(edgeworth_params_true(flat, 3, StatKind::Var), DegenerateError);
  CHECK(u_variance(flat, 3, StatKind::Var) == 0.0);
}
