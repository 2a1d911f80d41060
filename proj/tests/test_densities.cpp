// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "ggp/densities.hpp"
#include "ggp/errors.hpp"
#include "ggp/mellin.hpp"
#include "ggp/process.hpp"
#include "ggp/quadrature.hpp"
#include "ggp/specfun.hpp"

using namespace ggp;

namespace {
constexpr double kPi = std::numbers::pi;

// Subordination oracle: int p(x|s) Q(s; t, mu, 1) ds with a Gaussian kernel.
double bg1_defining_integral(double x, double t, double mu) {
    auto res = integrate_to_inf(
        [&](double s) {
            const double e = -x * x / (2.0 * s) - s / t;
            if (e < -700.0) return 0.0;
            return std::exp(e) / std::sqrt(2.0 * kPi * s) * std::pow(s, mu - 1.0) /
                   (std::pow(t, mu) * std::tgamma(mu));
        },
        0.0, {1e-15, 1e-11, 4000});
    REQUIRE(res.converged);
    return res.value;
}

} // namespace

TEST_CASE("spot values of the flagship laws") {
    // mixed-sign two-fold law at mu=1/2, g=2, x=0: folded Cauchy at the origin
    const auto qaqa = make_law("qaqa", {{"mu", 0.5}, {"gamma", 2.0}});
    CHECK(qaqa({0.0}, 1.0) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    // and pointwise equal to 2t/(pi (x^2+t^2)) on a grid
    for (double x = 0.0; x <= 10.0; x += 0.37)
        for (double t : {0.5, 1.0, 2.0})
            CHECK(qaqa({x}, t) ==
                  doctest::Approx(2.0 * t / (kPi * (x * x + t * t))).epsilon(1e-12));

    const auto t1 = make_law("tdist1", {{"nu", 1.0}});
    CHECK(t1({1.0}, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));

    // two-fold tilde law diverges logarithmically at the origin
    const auto gt = make_law("gtilde_iter", {{"mu", 0.5}, {"gamma", 2.0}});
    CHECK(std::isinf(gt({0.0}, 1.0)));
    CHECK(gt.boundary.divergence == OriginDivergence::Logarithmic);
    CHECK(gt({1e-9}, 1.0) > gt({1e-4}, 1.0)); // increasing toward 0
}

TEST_CASE("tdist1 is the folded Student t at t = sqrt(nu)") {
    for (double nu : {1.0, 3.0, 7.0}) {
        const auto law = make_law("tdist1", {{"nu", nu}});
        const double c = std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu)) /
                         std::sqrt(nu * kPi);
        for (double x : {0.0, 0.3, 1.0, 2.5}) {
            const double student = 2.0 * c * std::pow(1.0 + x * x / nu, -0.5 * (nu + 1.0));
            CHECK(law({x}, std::sqrt(nu)) == doctest::Approx(student).epsilon(1e-12));
        }
    }
}

TEST_CASE("special_gg is symmetric in the shape pair") {
    const auto a = make_law("special_gg", {{"mu1", 0.6}, {"mu2", 1.4}, {"gamma", 1.5}});
    const auto b = make_law("special_gg", {{"mu1", 1.4}, {"mu2", 0.6}, {"gamma", 1.5}});
    for (double x : {0.2, 0.9, 2.4})
        for (double t : {0.5, 1.0, 2.0})
            CHECK(a({x}, t) == doctest::Approx(b({x}, t)).epsilon(1e-12));
}

TEST_CASE("every catalog law is normalized at t in {0.5, 1, 4}") {
    for (const auto& law : density_catalog()) {
        for (double t : {0.5, 1.0, 4.0}) {
            INFO(law.id, " at t=", t);
            CHECK(normalization_check(law, t) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("numeric Mellin transforms match the symbolic forms") {
    // folded Cauchy law at eta = 1.5, t = 1 -> sqrt 2
    const auto fc = make_law("qaqa", {{"mu", 0.5}, {"gamma", 2.0}});
    CHECK(mellin_numeric(fc, {1.5, 0.0}, 1.0).real() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));

    // plain Gamma at eta = 2, t = 3, mu = 2: the mean 6
    const auto g1 = make_law("gg", {{"mu", 2.0}, {"gamma", 1.0}});
    CHECK(mellin_numeric(g1, {2.0, 0.0}, 3.0).real() == doctest::Approx(6.0).epsilon(1e-8));

    // two-fold tilde law at eta = 1.8: Gamma^2(1.0)/Gamma^2(0.6)
    const auto gt = make_law("gtilde_iter", {{"mu", 0.6}, {"gamma", 2.0}});
    const double expected = std::pow(std::tgamma(1.0) / std::tgamma(0.6), 2.0);
    CHECK(mellin_numeric(gt, {1.8, 0.0}, 1.0).real() ==
          doctest::Approx(expected).epsilon(1e-7));

    // five strip points for every law with a registered symbolic form
    struct Pair {
        DensityLaw law;
        MellinForm form;
    };
    std::vector<Pair> pairs;
    pairs.push_back({make_law("gg", {{"mu", 0.9}, {"gamma", 1.6}}),
                     mellin_of_gg({0.9, 1.6, {1, 1}})});
    pairs.push_back({make_law("ggt", {{"mu", 0.8}, {"gamma", -1.5}}),
                     mellin_of_gg({0.8, -1.5, {1, -1.5}})});
    pairs.push_back({fc, mellin_of_folded_cauchy()});
    pairs.push_back({make_law("gtilde_iter", {{"mu", 0.7}, {"gamma", 1.5}}),
                     *to_mellin(*compose(ggt(1.5, 0.7), ggt(1.5, 0.7)))});
    pairs.push_back({make_law("gg_g1", {{"mu", 0.8}, {"gamma", 1.5}}),
                     *to_mellin(*compose(gg(1.5, 0.8), gg(1, 0.8)))});
    pairs.push_back({make_law("qaqa", {{"mu", 0.7}, {"gamma", 1.8}}),
                     *to_mellin(*compose(ggt(1.8, 0.7), ggt(-1.8, 0.7)))});
    pairs.push_back({make_law("bg1", {{"mu", 1.2}}),
                     *to_mellin(*compose(brown(), gg(1, 1.2)))});
    pairs.push_back({make_law("tdist1", {{"nu", 3.0}}), *to_mellin(*student_pos(3.0))});
    pairs.push_back({make_law("bsq0", {{"delta", 3.0}}),
                     *to_mellin(*besselsq(3.0))});
    for (const auto& [law, form] : pairs) {
        double lo = form.strip().lo, hi = form.strip().hi;
        if (std::isinf(lo)) lo = hi - 2.0;
        if (std::isinf(hi)) hi = lo + 2.0;
        for (int k = 1; k <= 5; ++k) {
            const double eta = lo + (hi - lo) * k / 6.0;
            const auto numeric = mellin_numeric(law, {eta, 0.0}, 1.3);
            const auto symbolic = form.eval({eta, 0.0}, 1.3);
            CHECK(numeric.real() ==
                  doctest::Approx(symbolic.real()).epsilon(1e-7));
        }
    }
}

TEST_CASE("Brownian-over-Gamma constant is fixed by the defining integral") {
    for (double mu : {0.5, 1.0, 1.7}) {
        const auto law = make_law("bg1", {{"mu", mu}});
        for (double x : {0.4, 1.1, 2.2})
            for (double t : {0.7, 1.0, 2.5})
                CHECK(law({x}, t) ==
                      doctest::Approx(bg1_defining_integral(x, t, mu)).epsilon(1e-9));
        // constants seen elsewhere for this law are A = 2 and A = 2^{1-mu};
        // the defining integral forces A* = 2^{(1-2mu)/2}, off by the fixed
        // ratios recorded here (the latter by exactly 1/sqrt(2))
        const double oracle_a = std::exp2(0.5 * (1.0 - 2.0 * mu));
        CHECK(oracle_a / 2.0 == doctest::Approx(std::exp2(-0.5 - mu)));
        CHECK(oracle_a / std::exp2(1.0 - mu) == doctest::Approx(std::exp2(-0.5)));
    }
    // at mu = 1/2 the law collapses to (1/pi) sqrt(2/t) K_0(|x| sqrt(2/t))
    const auto half = make_law("bg1", {{"mu", 0.5}});
    for (double x : {0.3, 1.0})
        CHECK(half({x}, 1.5) ==
              doctest::Approx(std::sqrt(2.0 / 1.5) / kPi *
                              bessel_k(0.0, x * std::sqrt(2.0 / 1.5)))
                  .epsilon(1e-12));
}

TEST_CASE("plane exponential form agrees with the n=2 Bessel form") {
    const auto k = make_law("bg1_nd", {{"mu", 0.5}, {"n", 2.0}});
    const auto e = make_law("bg1_2d_exp");
    for (double x : {0.3, 1.0, 2.0})
        for (double t : {0.5, 1.0, 2.0})
            CHECK(k.eval({x, 0.4}, t) ==
                  doctest::Approx(e.eval({x, 0.4}, t)).epsilon(1e-10));
}

TEST_CASE("origin handling follows the support rule") {
    // g mu2 > 1 includes the origin with a finite limit
    const auto incl = make_law("special_gg", {{"mu1", 1.2}, {"mu2", 1.8}, {"gamma", 1.5}});
    CHECK(incl.boundary.includes_origin);
    CHECK(incl({0.0}, 1.0) == 0.0);
    const auto excl = make_law("special_gg", {{"mu1", 0.4}, {"mu2", 1.8}, {"gamma", 1.5}});
    CHECK_FALSE(excl.boundary.includes_origin);
    CHECK(std::isinf(excl({0.0}, 1.0)));
    CHECK_THROWS_AS(make_law("gg")({-0.5}, 1.0), DomainError);
    CHECK_THROWS_AS(make_law("qaqa", {{"delta", 1.0}}), DomainError); // unknown key
}

TEST_CASE("bivariate covariance closed form") {
    // gamma = 1 reduction: mu (mu + rho) t1 t2
    CHECK(bivariate_gamma_covariance(1.0, 1.0, 0.5, 1.0, 1.0) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(bivariate_gamma_covariance(1.3, 1.0, 0.4, 2.0, 3.0) ==
          doctest::Approx(1.3 * (1.3 + 0.4) * 6.0).epsilon(1e-10));
    // rho = 0: product of the marginal means
    const double mu = 0.9, g = 1.7;
    const double mean = std::tgamma(mu + 1.0 / g) / std::tgamma(mu);
    CHECK(bivariate_gamma_covariance(mu, g, 0.0, 1.0, 1.0) ==
          doctest::Approx(mean * mean).epsilon(1e-10));
    CHECK_THROWS_AS(bivariate_gamma_covariance(1.0, 1.0, 1.0, 1.0, 1.0),
                    DivergenceError);

    // against 2-d quadrature of the bivariate density, both branches
    auto quad_cov = [](double mu, double g, double rho, double t1, double t2) {
        return integrate_exp_sinh(
                   [&](double x) {
                       return x * integrate_exp_sinh(
                                      [&](double y) {
                                          return y * bivariate_gamma_density(
                                                         x, y, t1, t2, mu, g, rho);
                                      },
                                      {1e-13, 1e-10, 3000})
                                      .value;
                   },
                   {1e-12, 1e-9, 3000})
            .value;
    };
    CHECK(quad_cov(1.0, 1.0, 0.5, 1.0, 1.0) ==
          doctest::Approx(bivariate_gamma_covariance(1.0, 1.0, 0.5, 1.0, 1.0))
              .epsilon(1e-4));
    // inverse branch, gamma < 0 (needs mu > 1/|gamma| for finite moments)
    CHECK(quad_cov(1.4, -2.0, 0.3, 1.0, 1.5) ==
          doctest::Approx(bivariate_gamma_covariance(1.4, -2.0, 0.3, 1.0, 1.5))
              .epsilon(1e-4));
}
