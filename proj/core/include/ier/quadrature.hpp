#pragma once

#include <vector>

namespace ier {

/// Nodes and weights of a fixed quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  template <class F>
  auto integrate(F&& fn) const {
    decltype(fn(0.0) * 1.0) sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += fn(nodes[i]) * weights[i];
    return sum;
  }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Gauss-Legendre rule repeated on `panels` equal sub-intervals of [a, b].
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel);

}  // namespace ier
