#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ier/bessel.hpp"
#include "ier/errors.hpp"
#include "ier/moments.hpp"
#include "ier/stieltjes.hpp"

using namespace ier;
using cd = std::complex<double>;

namespace {

// Semicircle transform with the root chosen in the upper half plane.
cd semicircle_oracle(cd z) {
  cd root = std::sqrt(z * z - 4.0);
  cd s = (-z + root) / 2.0;
  if (s.imag() < 0.0) s = (-z - root) / 2.0;
  return s;
}

// sum_{m<terms} (-1)^m (x/2)^(2m+1) / (m! (m+1)!) in exact rationals.
double bessel_j1_rational(long x_num, long x_den, int terms) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational half_x(x_num, 2 * x_den);
  cpp_rational term = half_x, sum = 0;
  for (int m = 0; m < terms; ++m) {
    sum += term;
    term *= -half_x * half_x / cpp_rational((m + 1) * (m + 2));
  }
  return static_cast<double>(sum);
}

// Independent Nystrom solve of the homogeneous recursion
// phi(u) = 1 - sqrt(u) int J(2 sqrt(uv)) / sqrt(v) e^(ivz) e^(lambda (phi(v / lambda) - 1)) dv
// in s = sqrt(v), 20-point Gauss on equal panels.
struct OneDimensional {
  std::vector<double> s, w;  // nodes and weights in s
  std::vector<cd> phi;       // phi(s_m^2 / lambda)
  cd z;
  double lambda;

  OneDimensional(cd z_, double lambda_, int panels) : z(z_), lambda(lambda_) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const double top = std::sqrt(30.0 / z.imag()), h = top / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * h;
      for (std::size_t i = 0; i < rule::abscissa().size(); ++i)
        for (double sign : {-1.0, 1.0}) {
          s.push_back(mid + sign * 0.5 * h * rule::abscissa()[i]);
          w.push_back(0.5 * h * rule::weights()[i]);
        }
    }
    phi.assign(s.size(), 1.0);
    for (int it = 0; it < 1000; ++it) {
      std::vector<cd> next(s.size());
      for (std::size_t j = 0; j < s.size(); ++j) next[j] = at(s[j] * s[j] / lambda);
      double step = 0.0;
      for (std::size_t j = 0; j < s.size(); ++j) step = std::max(step, std::abs(next[j] - phi[j]));
      phi = std::move(next);
      if (step < 1e-14) return;
    }
    ADD_FAILURE() << "one-dimensional oracle did not converge";
  }

  // 1 - sqrt(u) sum_m 2 J(2 sqrt(u) s_m) e^(i s_m^2 z) e^(lambda (phi_m - 1)) w_m
  cd at(double u) const {
    cd acc = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m)
      acc += 2.0 * std::cyl_bessel_j(1.0, 2.0 * std::sqrt(u) * s[m]) * std::exp(cd(0.0, 1.0) * s[m] * s[m] * z) *
             std::exp(lambda * (phi[m] - 1.0)) * w[m];
    return 1.0 - std::sqrt(u) * acc;
  }

  cd stieltjes() const {
    cd acc = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m)
      acc += 2.0 * s[m] * std::exp(cd(0.0, 1.0) * s[m] * s[m] * z) * std::exp(lambda * (phi[m] - 1.0)) * w[m];
    return cd(0.0, 1.0) * acc;
  }
};

SolverConfig solver_at(cd z, double lambda) {
  SolverConfig c;
  c.z = z;
  c.lambda = lambda;
  return c;
}

}  // namespace

TEST(Bessel, MatchesStandardLibrary) {
  for (double x = 0.0; x <= 60.0; x += 0.0137) EXPECT_NEAR(bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-10) << x;
  EXPECT_EQ(bessel_j1(0.0), 0.0);
  EXPECT_THROW(bessel_j1(-1e-3), DomainError);
}

TEST(Bessel, ExactRationalSeriesAtTwo) {
  const double oracle = bessel_j1_rational(2, 1, 50);
  EXPECT_NEAR(oracle, 0.5767248078, 1e-10);
  EXPECT_NEAR(bessel_j1(2.0), oracle, 1e-14);
  EXPECT_NEAR(bessel_j1(7.5), bessel_j1_rational(15, 2, 50), 1e-12);
}

TEST(Bessel, BoundedByOne) {
  for (int i = 0; i < 10000; ++i) EXPECT_LE(std::abs(bessel_j1(i * 0.01)), 1.0);
}

TEST(Bessel, ExponentialIdentity) {
  for (cd z : {cd(0.0, 2.0), cd(1.0, 3.0)}) {
    EXPECT_EQ(verify_exponential_identity(0.0, z), 0.0);
    for (double u : {0.1, 0.5, 1.0}) EXPECT_LE(verify_exponential_identity(u, z), 1e-6) << u << ' ' << z;
  }
  EXPECT_THROW(verify_exponential_identity(1.0, cd(1.0, 0.0)), DomainError);
}

TEST(PhiNorm, WeightedSupNorm) {
  PhiGrid a;
  a.y_nodes = {1.0};
  a.u_nodes = {0.0, 3.0};
  a.values = {0.0, 0.0};
  a.lambda = 1.0;
  auto b = a;
  EXPECT_EQ(weighted_sup_norm(a, b), 0.0);
  b.values = {cd(0.0, 0.6), 0.0};
  EXPECT_NEAR(weighted_sup_norm(a, b), 0.6, 1e-15);
  b.values = {0.0, cd(0.6, 0.0)};
  EXPECT_NEAR(weighted_sup_norm(a, b), 0.3, 1e-15);
  b.u_nodes = {0.0, 2.0};
  EXPECT_THROW(weighted_sup_norm(a, b), DomainError);
}

TEST(ApplyF, ZeroAtOriginIsDegree) {
  const auto mu = WeightModel::discrete({0.5, 1.0, 2.0}, {0.3, 0.3, 0.4});
  const FixedPointProblem p(solver_at({0.5, 2.0}, 4.0), Kernel::grg(), mu);
  auto phi = p.initial();
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> r(-0.3, 0.0);
  for (auto& v : phi.values) v += cd(r(gen), r(gen));
  const auto next = p.apply(phi);
  ASSERT_EQ(next.u_nodes.front(), 0.0);
  for (std::size_t y = 0; y < next.y_nodes.size(); ++y) EXPECT_EQ(next.at(y, 0), cd(p.degrees()[y]));
}

TEST(ApplyF, ZeroKernelGivesZero) {
  const auto cfg = solver_at({0.0, 2.0}, 3.0);
  const FixedPointProblem p(cfg, Kernel::constant(0.0), WeightModel::uniform01(8));
  for (cd v : p.apply(p.initial()).values) EXPECT_EQ(v, cd(0.0));
  const auto sol = solve_fixed_point(p);
  EXPECT_EQ(sol.iterations, 1);
  for (cd v : sol.phi.values) EXPECT_EQ(v, cd(0.0));
}

TEST(ApplyF, OneStepMatchesAdaptiveQuadrature) {
  // f = 1, lambda = 1, z = 2i, phi_0 = 1: the exponential factor is 1 and
  // F(u) = 1 - sqrt(u) int_0^inf J(2 sqrt(uv)) / sqrt(v) e^(-2v) dv.
  const FixedPointProblem p(solver_at({0.0, 2.0}, 1.0), Kernel::constant(1.0), WeightModel::dirac(1.0));
  const auto next = p.apply(p.initial());
  for (std::size_t j = 0; j < next.u_nodes.size(); j += 7) {
    const double u = next.u_nodes[j];
    auto g = [u](double s) { return 2.0 * std::cyl_bessel_j(1.0, 2.0 * std::sqrt(u) * s) * std::exp(-2.0 * s * s); };
    const double oracle =
        1.0 - std::sqrt(u) * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                                 g, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
    EXPECT_NEAR(std::abs(next.at(0, j) - oracle), 0.0, 1e-6) << u;
  }
}

TEST(FixedPoint, HomogeneousReductionMatchesOneDimensionalSolve) {
  for (auto [z, lambda] : {std::pair{cd(0.0, 2.0), 5.0}, std::pair{cd(1.0, 1.5), 10.0}}) {
    auto cfg = solver_at(z, lambda);
    cfg.tol = 1e-13;
    const FixedPointProblem p(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0));
    const auto sol = solve_fixed_point(p);
    const OneDimensional oracle(z, lambda, 24);
    EXPECT_LT(std::abs(p.stieltjes(sol.phi) - oracle.stieltjes()), 1e-8);
    double worst = 0.0;
    for (std::size_t j = 0; j < sol.phi.u_nodes.size(); ++j)
      worst = std::max(worst, std::abs(sol.phi.at(0, j) - oracle.at(sol.phi.u_nodes[j])) /
                                  std::sqrt(1.0 + sol.phi.u_nodes[j]));
    EXPECT_LT(worst, 1e-8) << z << ' ' << lambda;
  }
}

TEST(FixedPoint, ContractionCertificateAtLargeEta) {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> r(-1.0, 1.0), shrink(0.0, 1.0);
  for (const auto& f : {Kernel::constant(1.0), Kernel::grg(), Kernel::rank1(ScalarFunction::saturating())})
    for (double eta : {5.0, 8.0})
      for (double lambda : {2.0, 20.0}) {
        const FixedPointProblem p(solver_at({0.7, eta}, lambda), f, WeightModel::uniform01(8));
        const auto base = p.apply(p.initial());
        for (int trial = 0; trial < 5; ++trial) {
          auto a = base, b = base;
          for (std::size_t i = 0; i < a.values.size(); ++i) {
            // perturbations that keep Re(phi) <= d_f
            a.values[i] += 0.2 * cd(-shrink(gen), r(gen)) / lambda;
            b.values[i] += 0.2 * cd(-shrink(gen), r(gen)) / lambda;
          }
          const double ratio = weighted_sup_norm(p.apply(a), p.apply(b)) / weighted_sup_norm(a, b);
          EXPECT_LT(ratio, 1.0) << eta << ' ' << lambda;
        }
      }
}

TEST(FixedPoint, SolutionIsBoundedAndVerified) {
  const auto mu = WeightModel::discrete({0.5, 1.0, 1.5}, {0.2, 0.3, 0.5});
  for (const auto& f : {Kernel::grg(), Kernel::norros_riettu(), Kernel::constant(1.0)})
    for (double lambda : {1.0, 5.0, 20.0})
      for (cd z : {cd(0.0, 2.0), cd(-1.0, 1.0), cd(2.5, 0.7)}) {
        auto cfg = solver_at(z, lambda);
        cfg.damping = 0.5;
        cfg.max_iter = 3000;
        const FixedPointProblem p(cfg, f, mu);
        const auto sol = solve_fixed_point(p);
        EXPECT_LT(sol.residual, cfg.tol);
        EXPECT_LE(p.max_exponential(sol.phi), 1.0 + 1e-8);
        const cd st = p.stieltjes(sol.phi);
        EXPECT_GT(st.imag(), 0.0);
        EXPECT_LE(std::abs(st) * z.imag(), 1.0 + 1e-12);
      }
}

TEST(FixedPoint, ConstantKernelSolutionDoesNotDependOnWeight) {
  auto cfg = solver_at({0.0, 2.0}, 50.0);
  const auto sol = solve_fixed_point(cfg, Kernel::constant(1.0), WeightModel::discrete({0.2, 1.0, 3.0}, {0.3, 0.3, 0.4}));
  const std::size_t nu = sol.phi.u_nodes.size();
  for (std::size_t y = 1; y < 3; ++y)
    for (std::size_t j = 0; j < nu; ++j) EXPECT_LT(std::abs(sol.phi.at(y, j) - sol.phi.at(0, j)), cfg.tol);
  EXPECT_LT(std::abs(stieltjes_sparse(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0)) -
                     semicircle_oracle({0.0, 2.0})),
            2e-2);
}

TEST(FixedPoint, LambdaSweepApproachesDenseLimit) {
  const auto f = Kernel::constant(1.0);
  const auto mu = WeightModel::dirac(1.0);
  const cd dense = stieltjes_dense({0.0, 2.0}, f, mu).value;
  double previous = std::numeric_limits<double>::infinity();
  for (double lambda : {5.0, 10.0, 20.0, 50.0}) {
    const double gap = std::abs(stieltjes_sparse(solver_at({0.0, 2.0}, lambda), f, mu) - dense);
    EXPECT_LT(gap, previous) << lambda;
    previous = gap;
  }
}

TEST(FixedPoint, GNDerivativeAtZeroIsStieltjes) {
  const auto cfg = solver_at({0.3, 2.0}, 10.0);
  const auto mu = WeightModel::discrete({0.5, 1.5}, {0.5, 0.5});
  const FixedPointProblem p(cfg, Kernel::grg(), mu);
  const auto phi = solve_fixed_point(p).phi;
  EXPECT_EQ(p.limit_GN(phi, 0.0), cd(1.0));
  const double h = 1e-6;
  const cd derivative = (p.limit_GN(phi, h) - 1.0) / h;
  EXPECT_LT(std::abs(derivative - cd(0.0, 1.0) * p.stieltjes(phi)), 1e-3);
  EXPECT_LE(std::abs(p.limit_GN(phi, 0.5)), 1.0);
}

TEST(FixedPoint, Errors) {
  auto cfg = solver_at({0.0, 0.0}, 1.0);
  EXPECT_THROW(FixedPointProblem(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0)), DomainError);
  cfg = solver_at({0.0, 2.0}, 1.0);
  cfg.v_max = 10.0;
  EXPECT_THROW(FixedPointProblem(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0)), ConfigError);
  cfg = solver_at({0.0, 2.0}, 1.0);
  cfg.tol = 0.0;
  EXPECT_THROW(FixedPointProblem(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0)), ConfigError);
  cfg = solver_at({0.0, 2.0}, 10.0);
  cfg.tol = 1e-15;
  cfg.max_iter = 2;
  try {
    solve_fixed_point(cfg, Kernel::constant(1.0), WeightModel::dirac(1.0));
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Dense, SemicircleAndRankOneOnDirac) {
  const cd want{0.0, std::numbers::sqrt2 - 1.0};
  const auto one = stieltjes_dense({0.0, 2.0}, Kernel::constant(1.0), WeightModel::dirac(1.0));
  EXPECT_LT(std::abs(one.value - want), 1e-8);
  EXPECT_LT(std::abs(semicircle_stieltjes({0.0, 2.0}) - want), 1e-15);
  const auto xy = stieltjes_dense({0.0, 2.0}, Kernel::rank1(ScalarFunction::linear()), WeightModel::dirac(1.0));
  EXPECT_EQ(xy.value, one.value);
  for (cd z : {cd(0.4, 0.3), cd(-3.0, 0.05), cd(1.9, 0.01)})
    EXPECT_LT(std::abs(semicircle_stieltjes(z) - semicircle_oracle(z)), 1e-13) << z;
}

TEST(Dense, ContourMomentsMatchDenseMoments) {
  // m_k = -(1/2 pi) int R^(k+1) e^(i(k+1)t) St(R e^(it)) dt on a circle
  // enclosing the support; the lower half follows from St(conj z) = conj St(z).
  const auto f = Kernel::grg();
  const auto mu = WeightModel::discrete({0.5, 1.0, 2.0}, {0.3, 0.4, 0.3});
  const double radius = 3.0;
  const int points = 128;
  std::vector<cd> st(points / 2);
  for (int j = 0; j < points / 2; ++j)
    st[j] = stieltjes_dense(std::polar(radius, (j + 0.5) * 2.0 * std::numbers::pi / points), f, mu).value;
  for (int k = 0; k <= 6; ++k) {
    double m = 0.0;
    for (int j = 0; j < points / 2; ++j) {
      const double t = (j + 0.5) * 2.0 * std::numbers::pi / points;
      m += 2.0 * (std::pow(radius, k + 1) * std::exp(cd(0.0, (k + 1) * t)) * st[j]).real();
    }
    m *= -1.0 / points;
    const double expected = k % 2 ? 0.0 : (k == 0 ? 1.0 : dense_moment(k, f, mu));
    EXPECT_NEAR(m, expected, 1e-6 * std::max(1.0, expected)) << k;
  }
}

TEST(Density, SemicircleInversion) {
  const std::function<cd(cd)> sc = semicircle_stieltjes;
  EXPECT_NEAR(density_from_stieltjes(sc, {0.0}, 0.01)[0], 1.0 / std::numbers::pi, 2e-3);
  EXPECT_NEAR(density_from_stieltjes(sc, {10.0}, 0.01)[0], 0.0, 1e-2);
  std::vector<double> grid;
  for (double x = -6.0; x <= 6.0 + 1e-12; x += 0.005) grid.push_back(x);
  const auto rho = density_from_stieltjes(sc, grid, 0.05);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) integral += 0.5 * (rho[i] + rho[i + 1]) * (grid[i + 1] - grid[i]);
  EXPECT_NEAR(integral, 1.0, 2e-2);
  for (double r : rho) EXPECT_GE(r, -1e-8);
  EXPECT_THROW(density_from_stieltjes(sc, grid, 0.0), DomainError);
}

TEST(Density, DenseSolverDensityTracksSemicircle) {
  const auto one = Kernel::constant(1.0);
  const auto mu = WeightModel::dirac(1.0);
  const std::function<cd(cd)> dense = [&](cd z) { return stieltjes_dense(z, one, mu).value; };
  std::vector<double> grid;
  for (double x = -2.5; x <= 2.5 + 1e-12; x += 0.1) grid.push_back(x);
  const auto rho = density_from_stieltjes(dense, grid, 0.01);
  for (std::size_t i = 0; i < grid.size(); ++i)
    EXPECT_NEAR(rho[i], semicircle_oracle({grid[i], 0.01}).imag() / std::numbers::pi, 1e-8) << grid[i];
}
