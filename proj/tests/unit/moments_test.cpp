#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "ier/errors.hpp"
#include "ier/moments.hpp"

using namespace ier;

namespace {

long long catalan(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Tree walks 1 -> ... -> k -> 1 over every vertex labelling of the k steps.
// Each contributes lambda^(|V| - 1 - k/2) times the brute-force density of
// its tree over the discrete law.
double walk_moment(int k, double lambda, const Kernel& f, const std::vector<double>& atoms,
                   const std::vector<double>& probs) {
  double total = 0.0;
  for_each_set_partition(k, [&](const Partition& sigma) {
    const auto& label = sigma.labels();
    std::set<std::pair<int, int>> edges;
    for (int t = 0; t < k; ++t) {
      const int a = label[t], b = label[(t + 1) % k];
      if (a == b) return;
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    const int v = static_cast<int>(sigma.block_count());
    if (static_cast<int>(edges.size()) != v - 1) return;
    std::vector<std::size_t> idx(v, 0);
    double t = 0.0;
    while (true) {
      double w = 1.0;
      for (int i = 0; i < v; ++i) w *= probs[idx[i]];
      for (const auto& [a, b] : edges) w *= f(atoms[idx[a]], atoms[idx[b]]);
      t += w;
      int i = 0;
      while (i < v && ++idx[i] == atoms.size()) idx[i++] = 0;
      if (i == v) break;
    }
    total += std::pow(lambda, v - 1 - k / 2.0) * t;
  });
  return total;
}

}  // namespace

TEST(Moments, TrivialOrders) {
  const auto f = Kernel::grg();
  const auto mu = WeightModel::uniform01();
  EXPECT_EQ(limiting_moment(0, 3.0, f, mu).value, 1.0);
  for (int k = 1; k <= 11; k += 2) EXPECT_EQ(limiting_moment(k, 3.0, f, mu).value, 0.0);
}

TEST(Moments, SecondMomentIsKernelIntegral) {
  const auto f = Kernel::finite_rank({ScalarFunction::saturating(), ScalarFunction::linear()});
  const auto mu = WeightModel::discrete({0.5, 1.0, 1.5}, {0.2, 0.3, 0.5});
  double integral = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) integral += mu.masses()[a] * mu.masses()[b] * f(mu.nodes()[a], mu.nodes()[b]);
  for (double lambda : {0.5, 7.0, kInfiniteLambda}) EXPECT_NEAR(limiting_moment(2, lambda, f, mu).value, integral, 1e-15);
}

TEST(Moments, HomogeneousExpansion) {
  const auto one = Kernel::constant(1.0);
  const auto mu = WeightModel::dirac(1.0);
  for (double l : {0.7, 2.0, 10.0, 123.0}) {
    EXPECT_NEAR(limiting_moment(4, l, one, mu).value, 2.0 + 1.0 / l, 1e-13);
    EXPECT_NEAR(limiting_moment(6, l, one, mu).value, 5.0 + 6.0 / l + 1.0 / (l * l), 1e-12);
    EXPECT_NEAR(limiting_moment(8, l, one, mu).value, 14.0 + 28.0 / l + 14.0 / (l * l) + 1.0 / (l * l * l), 1e-11);
  }
}

TEST(Moments, MatchTreeWalkEnumeration) {
  const std::vector<double> atoms{0.5, 1.0, 1.5}, probs{0.2, 0.3, 0.5};
  const auto mu = WeightModel::discrete(atoms, probs);
  const auto f = Kernel::grg();
  for (int k = 2; k <= 8; k += 2)
    for (double lambda : {0.8, 5.0}) {
      const double expected = walk_moment(k, lambda, f, atoms, probs);
      EXPECT_NEAR(limiting_moment(k, lambda, f, mu).value, expected, 1e-12 * expected) << k << ' ' << lambda;
    }
}

TEST(Moments, HomogeneousTreeWalksUpToTen) {
  const auto one = Kernel::constant(1.0);
  for (double lambda : {1.5, 4.0}) {
    const double expected = walk_moment(10, lambda, one, {1.0}, {1.0});
    EXPECT_NEAR(limiting_moment(10, lambda, one, WeightModel::dirac(1.0)).value, expected, 1e-12 * expected);
  }
}

TEST(Moments, DecompositionAddsUp) {
  const auto r = limiting_moment(8, 3.0, Kernel::norros_riettu(), WeightModel::uniform01());
  EXPECT_NEAR(r.nc2_part + r.remainder, r.value, 1e-14);
  EXPECT_EQ(r.per_partition.size(), 57u);
  for (const auto& c : r.per_partition) EXPECT_TRUE(is_special_symmetric(c.partition));
}

TEST(Moments, DenseMomentsOfConstantKernelAreCatalan) {
  for (int h = 0; h <= 6; ++h)
    EXPECT_EQ(dense_moment(2 * h, Kernel::constant(1.0), WeightModel::dirac(1.0)), static_cast<double>(catalan(h)));
}

TEST(Moments, DenseFourthMomentRankOne) {
  const auto mu = WeightModel::discrete({0.5, 1.0, 1.5}, {0.2, 0.3, 0.5});
  const double m1 = mu.integrate([](double x) { return x; });
  const double m2 = mu.integrate([](double x) { return x * x; });
  EXPECT_NEAR(dense_moment(4, Kernel::rank1(ScalarFunction::linear()), mu), 2.0 * m2 * m1 * m1, 1e-14);
}

TEST(Moments, InfiniteLambdaIsDenseMoment) {
  const auto f = Kernel::chung_lu();
  const auto mu = WeightModel::uniform01(16);
  for (int k = 2; k <= 8; k += 2)
    EXPECT_NEAR(limiting_moment(k, kInfiniteLambda, f, mu).value, dense_moment(k, f, mu), 1e-14);
}

TEST(Moments, ApproachDenseAtRateOneOverLambda) {
  const auto f = Kernel::grg();
  const auto mu = WeightModel::discrete({0.5, 1.0, 1.5}, {0.2, 0.3, 0.5});
  for (int k = 4; k <= 8; k += 2) {
    const double dense = dense_moment(k, f, mu);
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {10.0, 100.0, 1000.0}) {
      const double scaled = lambda * std::abs(limiting_moment(k, lambda, f, mu).value - dense);
      EXPECT_LE(scaled, previous * (1.0 + 1e-12));
      previous = scaled;
    }
  }
}

TEST(Moments, FreeMultiplicativeMatchesDenseRankOne) {
  const auto mu = WeightModel::discrete({0.5, 1.0, 1.5}, {0.2, 0.3, 0.5});
  for (int k = 2; k <= 12; k += 2)
    EXPECT_NEAR(free_mult_semicircle_moment(k, mu), dense_moment(k, Kernel::rank1(ScalarFunction::linear()), mu),
                1e-10 * dense_moment(k, Kernel::rank1(ScalarFunction::linear()), mu));
  EXPECT_THROW(free_mult_semicircle_moment(3, mu), DomainError);
}

TEST(Moments, Errors) {
  const auto one = Kernel::constant(1.0);
  const auto mu = WeightModel::dirac(1.0);
  EXPECT_THROW(limiting_moment(14, 1.0, one, mu), ResourceError);
  EXPECT_THROW(limiting_moment(4, 0.0, one, mu), DomainError);
  EXPECT_THROW(limiting_moment(-2, 1.0, one, mu), DomainError);
}
