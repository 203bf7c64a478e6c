#include "ier/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ier/bessel.hpp"
#include "ier/errors.hpp"
#include "ier/parallel.hpp"

namespace ier {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string fmt(double x) { return std::to_string(x); }

}  // namespace

double weighted_sup_norm(const PhiGrid& a, const PhiGrid& b) {
  if (a.y_nodes != b.y_nodes || a.u_nodes != b.u_nodes || a.values.size() != b.values.size())
    throw DomainError("weighted_sup_norm: grids differ");
  const std::size_t nu = a.u_nodes.size();
  double worst = 0.0;
  for (std::size_t y = 0; y < a.y_nodes.size(); ++y)
    for (std::size_t j = 0; j < nu; ++j)
      worst = std::max(worst, std::abs(a.at(y, j) - b.at(y, j)) / std::sqrt(1.0 + a.u_nodes[j]));
  return worst;
}

double weighted_sup_norm(const PhiGrid& a) {
  const std::size_t nu = a.u_nodes.size();
  double worst = 0.0;
  for (std::size_t y = 0; y < a.y_nodes.size(); ++y)
    for (std::size_t j = 0; j < nu; ++j) worst = std::max(worst, std::abs(a.at(y, j)) / std::sqrt(1.0 + a.u_nodes[j]));
  return worst;
}

// ---------------------------------------------------------------------------
// FixedPointProblem

FixedPointProblem::FixedPointProblem(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu) : cfg_(cfg) {
  const double eta = cfg.z.imag();
  if (!(eta > 0.0)) throw DomainError("fixed point: Im z must be > 0");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) throw DomainError("fixed point: lambda must be finite and > 0");
  if (!(cfg.tol > 0.0)) throw ConfigError("fixed point: tol must be > 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw ConfigError("fixed point: damping must lie in (0, 1]");
  if (cfg.panels < 1 || cfg.nodes_per_panel < 1) throw ConfigError("fixed point: grid sizes must be positive");
  v_max_ = cfg.v_max > 0.0 ? cfg.v_max : 30.0 / eta;
  if (v_max_ * eta < 30.0 * (1.0 - 1e-12))
    throw ConfigError("fixed point: v_max * Im z = " + fmt(v_max_ * eta) + " < 30; increase v_max");
  const std::size_t nv = static_cast<std::size_t>(cfg.panels) * static_cast<std::size_t>(cfg.nodes_per_panel);
  if (nv > kMaxVNodes)
    throw ResourceError("fixed point: " + std::to_string(nv) + " v-nodes exceed the cap " + std::to_string(kMaxVNodes));

  const WeightModel nodes = mu.compressed();
  y_ = nodes.nodes();
  mass_ = nodes.masses();
  const std::size_t ny = y_.size();
  degree_.resize(ny);
  for (std::size_t a = 0; a < ny; ++a) degree_[a] = mean_degree_function(f, mu, y_[a]);
  kernel_.resize(ny * ny);
  for (std::size_t a = 0; a < ny; ++a)
    for (std::size_t b = a; b < ny; ++b) kernel_[a * ny + b] = kernel_[b * ny + a] = f(y_[a], y_[b]);
  truncation_bound_ = std::exp(-30.0 + cfg.lambda * f.bound(mu.support_max()));

  // v = s^2 removes the square-root behaviour of phi(y, v / lambda) at v = 0
  const auto s_rule = composite_gauss_legendre(0.0, std::sqrt(v_max_), cfg.panels, cfg.nodes_per_panel);
  v_rule_.nodes.resize(nv);
  v_rule_.weights.resize(nv);
  for (std::size_t m = 0; m < nv; ++m) {
    const double s = s_rule.nodes[m];
    v_rule_.nodes[m] = s * s;
    v_rule_.weights[m] = 2.0 * s * s_rule.weights[m];
  }
  u_nodes_.resize(nv + 1);
  u_nodes_[0] = 0.0;
  for (std::size_t m = 0; m < nv; ++m) u_nodes_[m + 1] = v_rule_.nodes[m] / cfg.lambda;

  bessel_.assign((nv + 1) * nv, 0.0);
  for (std::size_t j = 1; j <= nv; ++j) {
    const double su = std::sqrt(u_nodes_[j]);
    for (std::size_t m = 0; m < nv; ++m) {
      const double s = std::sqrt(v_rule_.nodes[m]);
      bessel_[j * nv + m] = su * bessel_j1(2.0 * su * s) / s * v_rule_.weights[m];
    }
  }
  phase_.resize(nv);
  for (std::size_t m = 0; m < nv; ++m) phase_[m] = std::exp(kI * v_rule_.nodes[m] * cfg.z);
}

PhiGrid FixedPointProblem::initial() const {
  PhiGrid phi;
  phi.y_nodes = y_;
  phi.u_nodes = u_nodes_;
  phi.z = cfg_.z;
  phi.lambda = cfg_.lambda;
  phi.values.resize(y_.size() * u_nodes_.size());
  for (std::size_t y = 0; y < y_.size(); ++y)
    for (std::size_t j = 0; j < u_nodes_.size(); ++j) phi.at(y, j) = degree_[y];
  return phi;
}

void FixedPointProblem::check_grid(const PhiGrid& phi) const {
  if (phi.y_nodes != y_ || phi.u_nodes != u_nodes_ || phi.values.size() != y_.size() * u_nodes_.size())
    throw DomainError("fixed point: grid does not belong to this problem");
}

std::vector<cplx> FixedPointProblem::integrand(const PhiGrid& phi) const {
  const std::size_t nv = v_rule_.size();
  std::vector<cplx> e(y_.size() * nv);
  for (std::size_t y = 0; y < y_.size(); ++y)
    for (std::size_t m = 0; m < nv; ++m)
      e[y * nv + m] = std::exp(cfg_.lambda * (phi.at(y, m + 1) - degree_[y])) * phase_[m];
  return e;
}

PhiGrid FixedPointProblem::apply(const PhiGrid& phi) const {
  check_grid(phi);
  const std::size_t ny = y_.size(), nv = v_rule_.size(), nu = nv + 1;
  const auto e = integrand(phi);

  // inner[y][j] = sqrt(u_j) int J(2 sqrt(u_j v)) / sqrt(v) e^(ivz) e^(lambda (phi - d)) dv
  std::vector<cplx> inner(ny * nu);
  parallel_for(ny, [&](std::size_t y) {
    const cplx* ey = &e[y * nv];
    for (std::size_t j = 0; j < nu; ++j) {
      const double* kj = &bessel_[j * nv];
      double re = 0.0, im = 0.0;
      for (std::size_t m = 0; m < nv; ++m) {
        re += kj[m] * ey[m].real();
        im += kj[m] * ey[m].imag();
      }
      inner[y * nu + j] = {re, im};
    }
  });

  PhiGrid out = phi;
  parallel_for(ny, [&](std::size_t x) {
    for (std::size_t j = 0; j < nu; ++j) {
      cplx s = 0.0;
      for (std::size_t y = 0; y < ny; ++y) s += mass_[y] * kernel_[x * ny + y] * inner[y * nu + j];
      out.at(x, j) = degree_[x] - s;
    }
  });
  return out;
}

cplx FixedPointProblem::stieltjes(const PhiGrid& phi) const {
  check_grid(phi);
  const std::size_t nv = v_rule_.size();
  const auto e = integrand(phi);
  cplx total = 0.0;
  for (std::size_t y = 0; y < y_.size(); ++y) {
    cplx s = 0.0;
    for (std::size_t m = 0; m < nv; ++m) s += v_rule_.weights[m] * e[y * nv + m];
    total += mass_[y] * s;
  }
  return kI * total;
}

cplx FixedPointProblem::limit_GN(const PhiGrid& phi, double u) const {
  check_grid(phi);
  if (!(u >= 0.0)) throw DomainError("limit_GN: u must be >= 0");
  if (u == 0.0) return 1.0;
  const std::size_t nv = v_rule_.size();
  const auto e = integrand(phi);
  const double su = std::sqrt(u);
  cplx total = 0.0;
  for (std::size_t y = 0; y < y_.size(); ++y) {
    cplx s = 0.0;
    for (std::size_t m = 0; m < nv; ++m) {
      const double sv = std::sqrt(v_rule_.nodes[m]);
      s += su * bessel_j1(2.0 * su * sv) / sv * v_rule_.weights[m] * e[y * nv + m];
    }
    total += mass_[y] * s;
  }
  return 1.0 - total;
}

double FixedPointProblem::max_exponential(const PhiGrid& phi) const {
  check_grid(phi);
  double worst = 0.0;
  for (std::size_t y = 0; y < y_.size(); ++y)
    for (std::size_t j = 0; j < u_nodes_.size(); ++j)
      worst = std::max(worst, std::exp(cfg_.lambda * (phi.at(y, j).real() - degree_[y])));
  return worst;
}

// ---------------------------------------------------------------------------
// Solver

PhiGrid apply_F(const PhiGrid& phi, const SolverConfig& cfg, const Kernel& f, const WeightModel& mu) {
  return FixedPointProblem(cfg, f, mu).apply(phi);
}

FixedPointSolution solve_fixed_point(const FixedPointProblem& problem) {
  const auto& cfg = problem.config();
  FixedPointSolution sol;
  PhiGrid phi = problem.initial();
  double previous = std::numeric_limits<double>::infinity();
  int slow = 0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    PhiGrid next = problem.apply(phi);
    const double step = weighted_sup_norm(next, phi);
    sol.step_norms.push_back(step);
    if (!std::isfinite(step))
      throw ConvergenceError("fixed point diverged (non-finite iterate); increase Im z", step, it);
    // the undamped step is the residual of the current iterate
    if (step < cfg.tol) {
      sol.iterations = it;
      sol.residual = step;
      sol.phi = std::move(phi);
      return sol;
    }
    if (std::isfinite(previous) && previous > 0.0) {
      slow = step / previous >= 0.99 ? slow + 1 : 0;
      if (slow >= 10)
        throw ConvergenceError("fixed point map is not contracting at Im z = " + fmt(cfg.z.imag()) +
                                   " (step ratio >= 0.99 for 10 steps); increase Im z",
                               step, it);
    }
    previous = step;
    if (cfg.damping < 1.0)
      for (std::size_t i = 0; i < next.values.size(); ++i)
        next.values[i] = (1.0 - cfg.damping) * phi.values[i] + cfg.damping * next.values[i];
    phi = std::move(next);
  }
  throw ConvergenceError("fixed point did not reach tol " + fmt(cfg.tol) + " in " + std::to_string(cfg.max_iter) +
                             " iterations",
                         previous, cfg.max_iter);
}

FixedPointSolution solve_fixed_point(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu) {
  return solve_fixed_point(FixedPointProblem(cfg, f, mu));
}

cplx stieltjes_sparse(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu) {
  const FixedPointProblem problem(cfg, f, mu);
  return problem.stieltjes(solve_fixed_point(problem).phi);
}

cplx limit_GN(const SolverConfig& cfg, const Kernel& f, const WeightModel& mu, double u) {
  const FixedPointProblem problem(cfg, f, mu);
  return problem.limit_GN(solve_fixed_point(problem).phi, u);
}

// ---------------------------------------------------------------------------
// Dense limit

namespace {

struct DenseState {
  std::vector<double> y, mass, kernel;
};

// Damped iteration at one z from the given start; returns iterations used.
int dense_iterate(const DenseState& s, cplx z, std::vector<cplx>& h, double damping, double tol, int max_iter,
                  double& residual) {
  const std::size_t n = s.y.size();
  std::vector<cplx> next(n);
  for (int it = 1; it <= max_iter; ++it) {
    residual = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      cplx acc = 0.0;
      for (std::size_t y = 0; y < n; ++y) acc += s.mass[y] * s.kernel[x * n + y] * h[y];
      next[x] = -1.0 / (z + acc);
      residual = std::max(residual, std::abs(next[x] - h[x]));
    }
    if (!std::isfinite(residual))
      throw ConvergenceError("dense solver diverged at Im z = " + fmt(z.imag()) + "; increase Im z", residual, it);
    if (residual < tol) {
      h = next;
      return it;
    }
    for (std::size_t x = 0; x < n; ++x) h[x] = (1.0 - damping) * h[x] + damping * next[x];
  }
  throw ConvergenceError("dense solver did not converge at Im z = " + fmt(z.imag()) + "; increase Im z", residual,
                         max_iter);
}

}  // namespace

DenseStieltjes stieltjes_dense(cplx z, const Kernel& f, const WeightModel& mu, const DenseSolverOptions& opt) {
  if (!(z.imag() > 0.0)) throw DomainError("stieltjes_dense: Im z must be > 0");
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) throw ConfigError("stieltjes_dense: damping must lie in (0, 1]");
  const WeightModel nodes = mu.compressed();
  DenseState s{nodes.nodes(), nodes.masses(), {}};
  const std::size_t n = s.y.size();
  s.kernel.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) s.kernel[a * n + b] = s.kernel[b * n + a] = f(s.y[a], s.y[b]);

  DenseStieltjes out;
  std::vector<cplx> h(n, -1.0 / z);
  double residual = 0.0;
  if (z.imag() < opt.continuation_start && opt.continuation_steps > 0) {
    const double ratio = std::pow(z.imag() / opt.continuation_start, 1.0 / opt.continuation_steps);
    h.assign(n, -1.0 / cplx(z.real(), opt.continuation_start));
    double eta = opt.continuation_start;
    for (int k = 0; k < opt.continuation_steps; ++k) {
      out.iterations += dense_iterate(s, {z.real(), eta}, h, opt.damping, std::max(opt.tol, 1e-9), opt.max_iter,
                                      residual);
      eta *= ratio;
    }
  }
  out.iterations += dense_iterate(s, z, h, opt.damping, opt.tol, opt.max_iter, residual);
  out.residual = residual;
  out.value = 0.0;
  for (std::size_t y = 0; y < n; ++y) out.value += s.mass[y] * h[y];
  out.y_nodes = std::move(s.y);
  out.h = std::move(h);
  return out;
}

std::vector<double> density_from_stieltjes(const std::function<cplx(cplx)>& transform, const std::vector<double>& x_grid,
                                           double eta) {
  if (!(eta > 0.0)) throw DomainError("density_from_stieltjes: eta must be > 0");
  std::vector<double> out(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) out[i] = transform({x_grid[i], eta}).imag() / std::numbers::pi;
  return out;
}

cplx semicircle_stieltjes(cplx z) {
  const cplx root = std::sqrt(z * z - 4.0);
  const cplx a = 0.5 * (-z + root);
  return a.imag() >= 0.0 ? a : 0.5 * (-z - root);
}

}  // namespace ier
