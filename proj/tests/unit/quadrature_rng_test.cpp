#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <set>

#include "ier/quadrature.hpp"
#include "ier/rng.hpp"

using namespace ier;

TEST(Quadrature, GaussLegendreExactForPolynomials) {
  for (int n : {1, 4, 16, 33}) {
    const auto rule = gauss_legendre(n, 0.0, 2.0);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      const double exact = std::pow(2.0, p + 1) / (p + 1);
      EXPECT_NEAR(rule.integrate([&](double x) { return std::pow(x, p); }), exact, 1e-13 * exact) << n << ' ' << p;
    }
  }
}

TEST(Quadrature, NodesInsideAndWeightsPositive) {
  const auto rule = composite_gauss_legendre(1.0, 3.0, 5, 7);
  ASSERT_EQ(rule.size(), 35u);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_GT(rule.nodes[i], 1.0);
    EXPECT_LT(rule.nodes[i], 3.0);
    EXPECT_GT(rule.weights[i], 0.0);
    total += rule.weights[i];
  }
  EXPECT_NEAR(total, 2.0, 1e-14);
}

TEST(Quadrature, CompositeRuleMatchesAdaptiveKronrod) {
  auto g = [](double x) { return std::cos(7.0 * x) * std::exp(-x) / (1.0 + x * x); };
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 10.0, 20, 1e-14);
  EXPECT_NEAR(composite_gauss_legendre(0.0, 10.0, 40, 16).integrate(g), oracle, 1e-13);
}

TEST(Rng, CounterUniformIsDeterministicAndInRange) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(42, streams::edges, i, i * 3);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, counter_uniform(42, streams::edges, i, i * 3));
  }
}

TEST(Rng, StreamsSeedsAndCountersDiffer) {
  std::set<double> seen;
  for (std::uint64_t s : {0ULL, 1ULL})
    for (std::uint64_t st : {streams::edges, streams::weights, streams::degrees})
      for (std::uint64_t i = 0; i < 50; ++i)
        for (std::uint64_t j = 0; j < 4; ++j) seen.insert(counter_uniform(s, st, i, j));
  EXPECT_EQ(seen.size(), 2u * 3u * 50u * 4u);
  EXPECT_NE(counter_uniform(1, streams::edges, 2, 3), counter_uniform(1, streams::edges, 3, 2));
}

TEST(Rng, MomentsOfUniformWithinCltBounds) {
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  CounterRng rng(2024, streams::checks);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    s += u;
    s2 += u * u;
  }
  // standard errors: sqrt(1/12 / n) and sqrt(4/45 / n)
  EXPECT_LT(std::abs(s / n - 0.5), 5.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_LT(std::abs(s2 / n - 1.0 / 3.0), 5.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST(Rng, LagOneCorrelationSmall) {
  const int n = 100000;
  CounterRng rng(5, streams::monte_carlo, 9);
  double prev = rng.uniform(), acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    acc += (prev - 0.5) * (u - 0.5);
    prev = u;
  }
  EXPECT_LT(std::abs(acc / n), 5.0 / 12.0 / std::sqrt(n));
}
