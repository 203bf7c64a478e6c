#pragma once

#include <complex>

namespace ier {

/// Order-one Bessel function of the first kind for x >= 0: power series up to
/// x = 12, Hankel asymptotic expansion beyond. DomainError for x < 0.
double bessel_j1(double x);

/// Default panel count of the identity quadrature.
inline constexpr int kIdentityPanels = 64;

/// |exp(i u z) - (1 - sqrt(u) int_0^inf J(2 sqrt(uv)) / sqrt(v) exp(-i v / z) dv)|
/// with the integral evaluated by composite Gauss-Legendre in s = sqrt(v) on
/// [0, sqrt(30 / Im(-1/z))]. Exactly 0 at u = 0.
double verify_exponential_identity(double u, std::complex<double> z, int panels = kIdentityPanels);

}  // namespace ier
