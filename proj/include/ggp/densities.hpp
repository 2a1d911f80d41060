// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ggp/quadrature.hpp"

namespace ggp {

enum class Support {
    PositiveLine,     // (0, inf), possibly including the origin
    RealLine,         // symmetric about 0
    RealSpace,        // R^n, radial
    PositiveQuadrant, // (0, inf)^2
};

enum class OriginDivergence { None, Power, Logarithmic };

struct SupportBoundary {
    bool includes_origin = true;
    OriginDivergence divergence = OriginDivergence::None;
};

using LawParams = std::map<std::string, double>;

// A catalog entry: closed-form (or defining-integral) density evaluator.
struct DensityLaw {
    std::string id;
    std::string formula; // human-readable description of the evaluator
    Support support = Support::PositiveLine;
    int dim = 1;
    LawParams params;
    SupportBoundary boundary;
    std::function<double(const std::vector<double>& x, double t)> eval;

    double operator()(double x, double t) const { return eval({x}, t); }
};

// All catalog laws with their default parameters.
const std::vector<DensityLaw>& density_catalog();

// A catalog law with parameters overridden (unknown keys rejected).
DensityLaw make_law(const std::string& id, const LawParams& overrides = {});

// Adaptive quadrature of the density over its support (radial reduction
// for the R^n laws, tensor quadrature for the bivariate law).
double normalization_check(const DensityLaw& law, double t,
                           const QuadOptions& opt = {1e-12, 1e-9, 4000});

// int x^{eta-1} q(x, t) dx over (0, inf); real-line laws use the folded
// convention 2 int_0^inf.
std::complex<double> mellin_numeric(const DensityLaw& law, std::complex<double> eta,
                                    double t);

// E{G_{gamma,mu}(t1) G_{gamma,mu}(t2)} for the correlated bivariate family,
// via the closed hypergeometric formula. gamma < 0 selects the inverse branch.
double bivariate_gamma_covariance(double mu, double gamma, double rho, double t1,
                                  double t2);

// Correlated bivariate density at (x, y) with separate clocks t1, t2.
double bivariate_gamma_density(double x, double y, double t1, double t2, double mu,
                               double gamma, double rho);

} // namespace ggp
