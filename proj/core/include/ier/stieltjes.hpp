#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ier/kernels.hpp"
#include "ier/quadrature.hpp"

namespace ier {

using cplx = std::complex<double>;

/// Discretisation and iteration controls of the sparse fixed point.
struct SolverConfig {
  cplx z{0.0, 2.0};
  double lambda = 10.0;
  /// Truncation of the v-integral; 0 selects 30 / Im z. Must satisfy
  /// v_max * Im z >= 30.
  double v_max = 0.0;
  /// Composite Gauss-Legendre in s = sqrt(v) on [0, sqrt(v_max)].
  int panels = 32;
  int nodes_per_panel = 16;
  double tol = 1e-10;
  int max_iter = 500;
  /// phi <- (1 - damping) phi + damping F(phi); 1 is the plain iteration.
  double damping = 1.0;
};

/// Largest v-grid accepted (the Bessel kernel table is n_v^2 doubles).
inline constexpr std::size_t kMaxVNodes = 4096;

/// phi(y, u) on the weight nodes y and the u-grid {0} U {v_m / lambda}, so
/// phi(y, v / lambda) is read off the grid without interpolation.
struct PhiGrid {
  std::vector<double> y_nodes;
  std::vector<double> u_nodes;
  std::vector<cplx> values;  // row-major: values[y * u_nodes.size() + j]
  cplx z;
  double lambda = 0.0;

  cplx& at(std::size_t y, std::size_t j) { return values[y * u_nodes.size() + j]; }
  cplx at(std::size_t y, std::size_t j) const { return values[y * u_nodes.size() + j]; }
};

/// max over the grid of |a - b| / sqrt(1 + u). DomainError on grid mismatch.
double weighted_sup_norm(const PhiGrid& a, const PhiGrid& b);
/// Norm of a single grid (distance to zero).
double weighted_sup_norm(const PhiGrid& a);

/// The map F_z for fixed (z, lambda, f, mu) with everything independent of
/// phi precomputed: weight nodes, d_f, f on the node grid, the v rule and the
/// real Bessel kernel sqrt(u_j) J(2 sqrt(u_j v_m)) / sqrt(v_m) * w_m.
class FixedPointProblem {
 public:
  FixedPointProblem(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu);

  const SolverConfig& config() const noexcept { return cfg_; }
  double v_max() const noexcept { return v_max_; }
  double u_max() const noexcept { return u_nodes_.back(); }
  /// e^(-30) e^(lambda C_f): bound on the dropped v-tail.
  double truncation_bound() const noexcept { return truncation_bound_; }
  const std::vector<double>& y_nodes() const noexcept { return y_; }
  const std::vector<double>& y_masses() const noexcept { return mass_; }
  const std::vector<double>& degrees() const noexcept { return degree_; }
  const QuadratureRule& v_rule() const noexcept { return v_rule_; }

  /// phi_0(y, u) = d_f(y).
  PhiGrid initial() const;
  PhiGrid apply(const PhiGrid& phi) const;
  /// i sum_y mu_y e^(-lambda d(y)) int e^(ivz) e^(lambda phi(y, v / lambda)) dv
  cplx stieltjes(const PhiGrid& phi) const;
  /// 1 - sqrt(u) sum_y mu_y e^(-lambda d(y)) int J(2 sqrt(uv)) / sqrt(v) e^(ivz) e^(lambda phi) dv
  cplx limit_GN(const PhiGrid& phi, double u) const;
  /// max over the grid of |exp(lambda (phi - d))|.
  double max_exponential(const PhiGrid& phi) const;

 private:
  // E[y][m] = exp(lambda (phi(y, v_m / lambda) - d(y))) exp(i v_m z)
  std::vector<cplx> integrand(const PhiGrid& phi) const;
  void check_grid(const PhiGrid& phi) const;

  SolverConfig cfg_;
  double v_max_ = 0.0;
  double truncation_bound_ = 0.0;
  std::vector<double> y_, mass_, degree_;
  std::vector<double> kernel_;  // f(y_a, y_b)
  QuadratureRule v_rule_;       // nodes v_m, weights w_m in v
  std::vector<double> u_nodes_;
  std::vector<double> bessel_;  // (n_v + 1) x n_v
  std::vector<cplx> phase_;     // exp(i v_m z)
};

struct FixedPointSolution {
  PhiGrid phi;
  double residual = 0.0;  // weighted_sup_norm(phi, F(phi)) of the returned phi
  int iterations = 0;
  std::vector<double> step_norms;  // ||F(phi_n) - phi_n|| per iteration
};

PhiGrid apply_F(const PhiGrid& phi, const SolverConfig& cfg, const Kernel& f, const WeightModel& mu);

/// Iterates phi <- F(phi) from phi_0 = d_f until the step norm drops below
/// cfg.tol. ConvergenceError when the step ratio stays >= 0.99 for 10
/// consecutive steps (advises a larger Im z) or after cfg.max_iter steps.
FixedPointSolution solve_fixed_point(const FixedPointProblem& problem);
FixedPointSolution solve_fixed_point(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu);

cplx stieltjes_sparse(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu);
cplx limit_GN(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu, double u);

struct DenseStieltjes {
  cplx value;
  std::vector<double> y_nodes;
  std::vector<cplx> h;  // H(z, y) on y_nodes
  int iterations = 0;
  double residual = 0.0;
};

struct DenseSolverOptions {
  double damping = 0.5;
  double tol = 1e-12;
  int max_iter = 200000;
  /// Below this Im z the solve is continued from Im z = continuation_start
  /// down to the target, warm-starting each step.
  double continuation_start = 1.0;
  int continuation_steps = 40;
};

/// Solves H(z, x) = -1 / (z + int f(x, y) H(z, y) mu(dy)) by damped
/// iteration from H = -1/z and returns int H dmu.
DenseStieltjes stieltjes_dense(cplx z, const Kernel& f, const WeightModel& mu, const DenseSolverOptions& opt = {});

/// (1/pi) Im transform(x + i eta) on the grid.
std::vector<double> density_from_stieltjes(const std::function<cplx(cplx)>& transform, const std::vector<double>& x_grid,
                                           double eta);

/// Stieltjes transform of the standard semicircle law, branch with Im > 0.
cplx semicircle_stieltjes(cplx z);

}  // namespace ier
