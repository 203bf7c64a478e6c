#include "ier/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "ier/errors.hpp"

namespace ier {

namespace {

// Returns P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  if (!(b > a)) throw DomainError("gauss_legendre: empty interval");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);

  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel) {
  if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  rule.weights.reserve(rule.nodes.capacity());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == panels) ? b : lo + h;
    const auto panel = gauss_legendre(nodes_per_panel, lo, hi);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

}  // namespace ier
