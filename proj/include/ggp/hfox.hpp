// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace ggp {

struct HTerm {
    double a;     // parameter a_i or b_j
    double alpha; // weight alpha_i or beta_j, >= 0
};

// Order (m,n,p,q) with upper (a_i, alpha_i) and lower (b_j, beta_j) rows.
// Convention used throughout: the contour kernel is
//   K(eta) = prod_{j<=m} Gamma(b_j - eta beta_j) prod_{i<=n} Gamma(1 - a_i + eta alpha_i)
//          / [prod_{j>m} Gamma(1 - b_j + eta beta_j) prod_{i>n} Gamma(a_i - eta alpha_i)]
// and H(x) = (1/2 pi i) int_C K(eta) x^{eta} d eta, so that
//   int_0^inf x^{eta-1} H(x) dx = K(-eta) (the Gamma-product Mellin value).
struct HParams {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<HTerm> upper; // length p
    std::vector<HTerm> lower; // length q

    void validate() const;
    // sum of contour-decay weights; must be positive for a convergent
    // vertical-line integral
    double decay() const;
};

struct Contour {
    double abscissa = 0.0;    // saddle-point theta, left of every right pole
    double half_height = 0.0; // truncation T of the vertical line
    int panels = 0;           // unit-height Gauss-Legendre panels used
};

struct HEvalResult {
    double value = 0.0;
    double est_error = 0.0;
    Contour contour{};
    double t_used() const { return contour.half_height; }
};

// Closed-form Gamma-product Mellin transform of the H-function.
std::complex<double> h_mellin(const HParams& params, std::complex<double> eta);

// Mellin-Barnes quadrature on a vertical contour left of the right pole
// family; 64-point Gauss-Legendre panels per unit height, half-height
// doubled from 20 until the outermost panel contributes < tol (cap 400).
HEvalResult h_eval(const HParams& params, double x, double tol = 1e-10);

// Argument-power rule: H(x) = c * H'(x^c) with weights scaled by c.
HParams h_rescale_power(const HParams& params, double c);

// Index-shift rule: H(x) = x^{-c} * H''(x) with parameters shifted by
// c * weight.
HParams h_rescale_shift(const HParams& params, double c);

} // namespace ggp
