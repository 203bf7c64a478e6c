#include "ier/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ier/errors.hpp"
#include "ier/quadrature.hpp"

namespace ier {

double bessel_j1(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_j1: argument must be >= 0");
  if (x <= 12.0) {
    const double q = -0.25 * x * x;
    double term = 0.5 * x;
    double sum = term;
    for (int k = 1; k < 80; ++k) {
      term *= q / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  // P, Q of the Hankel expansion with mu = 4; stop at the smallest term.
  const double mu = 4.0;
  const double w = 8.0 * x;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * w);
    if (std::abs(term) >= last) break;
    last = std::abs(term);
    // k odd feeds Q with sign (+, -, +, ...), k even feeds P with (-, +, ...)
    if (k % 2 == 1)
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else
      p += ((k / 2) % 2 == 1 ? -1.0 : 1.0) * term;
    if (last < 1e-17) break;
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double verify_exponential_identity(double u, std::complex<double> z, int panels) {
  using cplx = std::complex<double>;
  if (!(z.imag() > 0.0)) throw DomainError("verify_exponential_identity: Im z must be > 0");
  if (!(u >= 0.0)) throw DomainError("verify_exponential_identity: u must be >= 0");
  if (u == 0.0) return 0.0;
  const cplx lhs = std::exp(cplx(0.0, u) * z);
  const cplx rate = cplx(0.0, -1.0) / z;  // exp(rate * v), Re rate < 0
  const double s_max = std::sqrt(30.0 / -rate.real());
  const auto rule = composite_gauss_legendre(0.0, s_max, panels, 16);
  // sqrt(u) J(2 sqrt(u v)) / sqrt(v) dv with v = s^2 becomes 2 sqrt(u) J(2 sqrt(u) s) ds
  const double su = std::sqrt(u);
  const cplx integral =
      rule.integrate([&](double s) { return 2.0 * su * bessel_j1(2.0 * su * s) * std::exp(rate * (s * s)); });
  return std::abs(lhs - (1.0 - integral));
}

}  // namespace ier
