// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace ggp {

// Principal-branch log Gamma, Lanczos approximation with reflection for
// Re z < 1/2. Stable for large |Im z| (contour integration use).
std::complex<double> log_gamma(std::complex<double> z);

// 1/Gamma(x) on the real line; zero at the poles x = 0, -1, -2, ...
double gamma_reciprocal(double x);

// Modified Bessel function of the first kind, ascending series.
// Requires x >= 0; throws OverflowError for x > 700.
double bessel_i(double nu, double x);

// Modified Bessel function of the second kind, K_{-nu} = K_nu.
// Reflection formula (pi/2)(I_{-nu} - I_nu)/sin(nu pi) for non-integer nu
// and small x; the uniform integral int_0^inf e^{-x cosh u} cosh(nu u) du
// otherwise (near-integer nu, and x >= 8 where the reflection cancels).
double bessel_k(double nu, double x);

// Right-hand side of the representation
//   K_{nu/p}(sqrt(x/t^zeta)) =
//     (|p|/2) (x t^zeta)^{-nu/2p} int_0^inf s^{nu-1}
//          exp(-x/(2 s^p) - s^p/(2 t^zeta)) ds
// (Gradshteyn & Ryzhik 3.471.9 family), evaluated by adaptive quadrature
// on the raw s axis. Independent cross-check path for bessel_k.
double bessel_k_integral(double nu, double p, double x, double t, double zeta);

// Gauss hypergeometric series F(a,b;c;z), |z| < 1.
double hyp2f1(double a, double b, double c, double z);

// Rising factorial (mu)_k.
double pochhammer(double mu, unsigned k);

// Regularized lower incomplete gamma P(a, x) (for distribution CDFs in tests).
double gamma_p(double a, double x);

} // namespace ggp
