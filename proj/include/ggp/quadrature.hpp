// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>

namespace ggp {

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = false;
    int evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 2000;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval. Endpoints are never
// evaluated, so integrable endpoint singularities (log, x^p with p > -1)
// are handled by refinement.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// \int_a^\infty f, via x = a + u/(1-u) on (0,1).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt = {});

// \int_0^inf f by the double-exponential (exp-sinh) rule: x = exp(c sinh u).
// Handles algebraic behavior at both endpoints (x^p with p > -1 at the
// origin, x^{-q} with q > 1 at infinity), which defeats panel-based rules.
QuadResult integrate_exp_sinh(const std::function<double(double)>& f,
                              const QuadOptions& opt = {});

// \int_0^\infty x^{eta-1} f(x) dx for complex eta, exp-sinh rule.
std::complex<double> integrate_mellin(const std::function<double(double)>& f,
                                      std::complex<double> eta,
                                      const QuadOptions& opt = {});

} // namespace ggp
