#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "gb3reg/gb3.hpp"
#include "gb3reg/rng.hpp"
#include "oracles.hpp"

using namespace gb3reg;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(Gb3Params{0.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(validate(Gb3Params{-2.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(validate(Gb3Params{1.0, 0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(validate(Gb3Params{1.0, 1.0, -0.5}), std::domain_error);
  CHECK_THROWS_AS(validate(Gb3Params{std::nan(""), 1.0, 1.0}), std::domain_error);
  CHECK_NOTHROW(validate(Gb3Params{3.5, 0.2, 40.0}));

  CHECK_THROWS_AS(validate(QuantileGb3Params{0.0, 1.0, 1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(validate(QuantileGb3Params{1.0, 1.0, 1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(validate(QuantileGb3Params{0.5, 1.0, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(validate(QuantileGb3Params{0.5, -1.0, 1.0, 0.5}), std::domain_error);
  CHECK_NOTHROW(validate(QuantileGb3Params{0.07, 2.0, 3.0, 0.25}));
}

TEST_CASE("lambda = 1 reduces to the ordinary beta") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> us(0.3, 20.0), uy(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double a = us(gen), b = us(gen), y = uy(gen);
    CHECK(gb3_logpdf(y, {1.0, a, b}) ==
          doctest::Approx(oracle::beta_logpdf(y, a, b)).epsilon(1e-12));
  }
  // CDF against the exact binomial closed form at integer shapes
  std::uniform_int_distribution<int> ui(1, 8);
  for (int i = 0; i < 100; ++i) {
    const int a = ui(gen), b = ui(gen);
    const double y = uy(gen);
    CHECK(gb3_cdf(y, {1.0, double(a), double(b)}) ==
          doctest::Approx(oracle::binomial_inc_beta(y, a, b)).epsilon(1e-11));
  }
}

TEST_CASE("uniform-shape closed forms") {
  // alpha = beta = 1 makes the underlying beta uniform, so
  // F(y) = lambda y / (1 + (lambda - 1) y) and the quantile inverts it.
  for (double lam : {0.2, 1.0, 3.7, 45.0}) {
    for (double y : {0.02, 0.31, 0.5, 0.88}) {
      const double expect = lam * y / (1.0 + (lam - 1.0) * y);
      CHECK(gb3_cdf(y, {lam, 1.0, 1.0}) == doctest::Approx(expect).epsilon(1e-13));
      CHECK(gb3_quantile(expect, {lam, 1.0, 1.0}) == doctest::Approx(y).epsilon(1e-12));
    }
  }
  // symmetric shapes at lambda = 2: beta(2,2) median is 1/2, so the
  // distribution median is z/(lambda(1-z)+z) = 1/3
  CHECK(gb3_quantile(0.5, {2.0, 2.0, 2.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("complement maps to swapped shapes and inverted lambda") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> us(0.4, 12.0), ul(0.1, 8.0);
  for (int i = 0; i < 150; ++i) {
    const double lam = ul(gen), a = us(gen), b = us(gen);
    // y on a grid of exactly representable complements
    for (double y : {0.015625, 0.25, 0.5, 0.8125, 0.984375}) {
      const Gb3Params fwd{lam, a, b};
      const Gb3Params rev{1.0 / lam, b, a};
      CHECK(gb3_pdf(y, fwd) == doctest::Approx(gb3_pdf(1.0 - y, rev)).epsilon(1e-10));
      CHECK(gb3_cdf(y, fwd) + gb3_cdf(1.0 - y, rev) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("cdf and quantile are inverse maps") {
  const double lams[] = {0.15, 1.0, 2.5, 19.0};
  const double shapes[] = {0.6, 1.0, 3.2, 14.0};
  for (double lam : lams)
    for (double a : shapes)
      for (double b : shapes) {
        const Gb3Params p{lam, a, b};
        for (double tau = 0.05; tau < 1.0; tau += 0.09) {
          const double q = gb3_quantile(tau, p);
          CHECK(q > 0.0);
          CHECK(q < 1.0);
          CHECK(gb3_cdf(q, p) == doctest::Approx(tau).epsilon(1e-9));
        }
        for (double y : {0.03, 0.4, 0.97}) {
          const double u = gb3_cdf(y, p);
          if (u <= 1e-12 || u >= 1.0 - 1e-12) continue;
          CHECK(gb3_quantile(u, p) == doctest::Approx(y).epsilon(1e-8));
        }
      }
}

TEST_CASE("pdf integrates to one") {
  const Gb3Params grid[] = {{0.3, 0.7, 0.6},  {1.0, 2.0, 2.0},  {2.2, 1.0, 4.5},
                            {5.0, 3.3, 0.8},  {0.08, 6.0, 2.1}, {12.0, 0.55, 9.0},
                            {1.7, 24.0, 31.0}};
  for (const auto& p : grid) {
    const double mass =
        oracle::integrate01([&](double y, double) { return gb3_pdf(y, p); });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cdf equals the integral of the pdf") {
  const Gb3Params p{2.6, 1.4, 3.8};
  for (double y0 : {0.11, 0.37, 0.74}) {
    // substitute y = y0 u so the quadrature runs over (0, 1)
    const double mass = oracle::integrate01(
        [&](double u, double) { return y0 * gb3_pdf(y0 * u, p); });
    CHECK(gb3_cdf(y0, p) == doctest::Approx(mass).epsilon(1e-11));
  }
}

TEST_CASE("pdf matches the first-kind generalized beta cross-parameterization") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> us(0.3, 15.0), ul(0.05, 12.0), uy(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const double lam = ul(gen), a = us(gen), b = us(gen), y = uy(gen);
    const double mu = a / (a + b);
    const double sigma = 1.0 / std::sqrt(a + b + 1.0);
    const double lhs = gb3_pdf(y, {lam, a, b});
    const double rhs = gb1_pdf(y, mu, sigma, 1.0 / lam, 1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
  CHECK_THROWS_AS(gb1_pdf(0.5, 1.5, 0.5, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(gb1_pdf(0.5, 0.5, 1.2, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(gb1_pdf(0.5, 0.5, 0.5, -1.0, 1.0), std::domain_error);
}

TEST_CASE("cdf edges, monotonicity, and quantile domain") {
  const Gb3Params p{3.1, 1.8, 0.9};
  CHECK(gb3_cdf(0.0, p) == 0.0);
  CHECK(gb3_cdf(-0.4, p) == 0.0);
  CHECK(gb3_cdf(1.0, p) == 1.0);
  CHECK(gb3_cdf(1.7, p) == 1.0);
  double prev = 0.0;
  for (double y = 0.02; y < 1.0; y += 0.02) {
    const double u = gb3_cdf(y, p);
    CHECK(u >= prev);
    prev = u;
  }
  CHECK(gb3_quantile(0.0, p) == 0.0);
  CHECK(gb3_quantile(1.0, p) == 1.0);
  CHECK_THROWS_AS(gb3_quantile(-0.1, p), std::domain_error);
  CHECK_THROWS_AS(gb3_quantile(1.1, p), std::domain_error);
  CHECK(gb3_logpdf(0.0, p) == -std::numeric_limits<double>::infinity());
  CHECK(gb3_logpdf(1.0, p) == -std::numeric_limits<double>::infinity());
  CHECK(gb3_pdf(0.0, p) == 0.0);
}

TEST_CASE("lambda_from_quantile places the tau-quantile at mu") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> um(0.02, 0.98), us(0.4, 10.0), ut(0.05, 0.95);
  for (int i = 0; i < 200; ++i) {
    const QuantileGb3Params p{um(gen), us(gen), us(gen), ut(gen)};
    const double lam = lambda_from_quantile(p);
    CHECK(lam > 0.0);
    CHECK(gb3_cdf(p.mu, {lam, p.alpha, p.beta}) == doctest::Approx(p.tau).epsilon(1e-10));
    CHECK(gb3_quantile(p.tau, {lam, p.alpha, p.beta}) == doctest::Approx(p.mu).epsilon(1e-9));
  }
}

TEST_CASE("quantile-parameterized wrappers agree with the plain form") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> um(0.05, 0.95), us(0.5, 8.0), uy(0.01, 0.99);
  BetaQuantileCache cache;
  for (int i = 0; i < 100; ++i) {
    const QuantileGb3Params p{um(gen), us(gen), us(gen), 0.25};
    const double lam = lambda_from_quantile(p);
    const Gb3Params g{lam, p.alpha, p.beta};
    const double y = uy(gen);
    CHECK(qgb3_logpdf(y, p) == doctest::Approx(gb3_logpdf(y, g)).epsilon(1e-11));
    CHECK(qgb3_cdf(y, p) == doctest::Approx(gb3_cdf(y, g)).epsilon(1e-11));
    CHECK(qgb3_quantile(0.7, p) == doctest::Approx(gb3_quantile(0.7, g)).epsilon(1e-10));
    // cached overloads reproduce the plain ones exactly
    CHECK(qgb3_logpdf(y, p, cache) == qgb3_logpdf(y, p));
    CHECK(qgb3_cdf(y, p, cache) == qgb3_cdf(y, p));
  }
  // mu is the tau-quantile by construction
  const QuantileGb3Params p{0.3, 2.0, 5.0, 0.25};
  CHECK(qgb3_cdf(0.3, p) == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(qgb3_quantile(0.25, p) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("beta quantile cache memoizes without changing values") {
  BetaQuantileCache cache;
  const Tolerance tol{1e-12, 1e-15, 200};
  const double direct = inv_inc_beta(0.25, 2.0, 3.0, tol);
  CHECK(cache.get(2.0, 3.0, 0.25, tol) == direct);
  CHECK(cache.size() == 1);
  CHECK(cache.get(2.0, 3.0, 0.25, tol) == direct);
  CHECK(cache.size() == 1);
  // a different bit pattern is a different key
  CHECK(cache.get(2.0, 3.0, 0.75, tol) == inv_inc_beta(0.75, 2.0, 3.0, tol));
  CHECK(cache.size() == 2);
  cache.clear();
  CHECK(cache.size() == 0);
}

TEST_CASE("sampler matches the distribution function") {
  Rng rng(20240817);
  const Gb3Params p{2.5, 1.7, 3.1};
  std::vector<double> draws(20000);
  for (auto& d : draws) {
    d = gb3_sample(p, rng);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
  const double dstat =
      oracle::ks_statistic(draws, [&](double y) { return gb3_cdf(y, p); });
  CHECK_FALSE(oracle::ks_reject_5pct(dstat, draws.size()));
}

TEST_CASE("quantile-form sampler matches its distribution function") {
  Rng rng(771);
  const QuantileGb3Params p{0.12, 1.3, 4.0, 0.25};
  std::vector<double> draws(20000);
  for (auto& d : draws) d = gb3_sample(p, rng);
  const double dstat =
      oracle::ks_statistic(draws, [&](double y) { return qgb3_cdf(y, p); });
  CHECK_FALSE(oracle::ks_reject_5pct(dstat, draws.size()));
}

TEST_CASE("sampling is reproducible from the seed") {
  const Gb3Params p{0.8, 2.2, 1.1};
  Rng r1(99), r2(99);
  for (int i = 0; i < 50; ++i) CHECK(gb3_sample(p, r1) == gb3_sample(p, r2));
}
