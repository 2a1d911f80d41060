// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ggp/mellin.hpp"
#include "ggp/rng.hpp"

namespace ggp {

enum class NodeKind {
    GG,           // generalized Gamma marginal, raw clock c = t
    Brown,        // N(0, t)
    Fbm,          // N(0, t^{2H})
    Cauchy,       // scale-t Cauchy
    FoldedCauchy, // |Cauchy|
    BesselSq,     // squared Bessel from the origin: Gamma(delta/2, 2t)
    StableHalf,   // first-passage 1/2-stable, normalized as t^2 / Z^2
    StudentPos,   // t |T_nu| / sqrt(nu); folded Student's t at t = sqrt(nu)
    NormBG,       // euclidean norm of n Brownian coordinates sharing one
                  // Gamma(1/2, 2t) subordinator
    Compose,      // outer evaluated at the inner value (inner must be positive)
    Product,      // product of independent children at the common time
    TimeChange,   // base at time alpha * t^beta
    Power,        // |base|^exponent
    Scale,        // factor * base
    SumOfPowers,  // (sum_i child_i^{g_i})^{outer_root}
};

struct ProcessExpr;
using ExprPtr = std::shared_ptr<const ProcessExpr>;

struct ProcessExpr {
    NodeKind kind = NodeKind::GG;
    double mu = 0.0, gamma = 0.0, hurst = 0.0, nu = 0.0, delta = 0.0;
    int n = 0;
    double alpha = 1.0, beta = 1.0, exponent = 1.0, factor = 1.0, outer_root = 1.0;
    std::vector<double> gammas;
    std::vector<ExprPtr> children; // Compose: {outer, inner}; unary: {base}
};

// Leaf builders
ExprPtr gg(double gamma, double mu);
ExprPtr ggt(double gamma, double mu); // sugar: time_change(gg, 1, gamma)
ExprPtr brown();
ExprPtr fbm(double hurst);
ExprPtr cauchy();
ExprPtr folded_cauchy();
ExprPtr besselsq(double delta);
ExprPtr stable_half();
ExprPtr student_pos(double nu);
ExprPtr norm_bg(int n);

// Combinators
ExprPtr compose(ExprPtr outer, ExprPtr inner);
ExprPtr product(std::vector<ExprPtr> children);
// product of children each run at time t^{1/n}
ExprPtr product_split(std::vector<ExprPtr> children);
ExprPtr time_change(ExprPtr base, double alpha, double beta);
ExprPtr power(ExprPtr base, double exponent);
ExprPtr scale_expr(ExprPtr base, double factor);
ExprPtr sum_of_powers(std::vector<ExprPtr> children, std::vector<double> gammas,
                      double outer_root);

enum class SupportClass { Positive, Real };
SupportClass support_of(const ProcessExpr& e);

// Canonical serialization (also the CLI grammar) and its FNV-1a digest.
std::string to_string(const ProcessExpr& e);
std::uint64_t expr_digest(const ProcessExpr& e);
ExprPtr parse_expr(const std::string& text);

// Folded Mellin transform E|X(t)|^{eta-1} when the expression stays inside
// the Gamma-product family; nullopt for sums.
std::optional<MellinForm> to_mellin(const ProcessExpr& e);

double sample_one(const ProcessExpr& e, double t, Rng& rng);

struct SampleBatch {
    std::vector<double> values;
    double t = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t digest = 0;
};

SampleBatch sample_process(const ExprPtr& e, double t, std::size_t count,
                           std::uint64_t seed);
SampleBatch sample_gamma(double mu, double scale, std::size_t count, std::uint64_t seed);

struct PairBatch {
    std::vector<std::array<double, 2>> pairs;
    std::uint64_t seed = 0;
};

// Bivariate normal pairs with the fractional Brownian two-point covariance.
PairBatch sample_gaussian_pair(double hurst, double t1, double t2, std::size_t count,
                               std::uint64_t seed);

} // namespace ggp
