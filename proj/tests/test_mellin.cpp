// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "ggp/errors.hpp"
#include "ggp/mellin.hpp"
#include "ggp/process.hpp"
#include "ggp/rng.hpp"

using namespace ggp;

namespace {

MellinForm gg_form(double gamma, double mu) { return mellin_of_gg({mu, gamma, {1, 1}}); }
MellinForm ggt_form(double gamma, double mu) {
    return mellin_of_gg({mu, gamma, {1, gamma}});
}

double real_eval(const MellinForm& f, double eta, double t) {
    return f.eval({eta, 0.0}, t).real();
}

} // namespace

TEST_CASE("generalized Gamma transforms") {
    // gamma = 1: value at eta = 2 is the mean mu t
    const double mu = 1.4;
    const MellinForm g1 = gg_form(1.0, mu);
    CHECK(real_eval(g1, 2.0, 3.0) == doctest::Approx(mu * 3.0).epsilon(1e-13));

    // tilde clock: t-power is t^{eta-1} regardless of gamma
    for (double g : {0.5, 2.0, -2.0}) {
        const MellinForm f = ggt_form(g, 0.7);
        CHECK(f.t_slope == doctest::Approx(1.0));
        CHECK(f.t_offset == doctest::Approx(-1.0));
    }

    // inverse family gamma = -2, mu = 1/2: factor Gamma((1-eta)/2 + 1/2),
    // strip Re eta < 2
    const MellinForm inv = gg_form(-2.0, 0.5);
    REQUIRE(inv.factors().size() == 1);
    CHECK(inv.factors()[0].slope == doctest::Approx(-0.5));
    CHECK(inv.factors()[0].offset == doctest::Approx(1.0));
    CHECK(inv.strip().hi == doctest::Approx(2.0));
    CHECK(std::isinf(inv.strip().lo));

    // gamma > 0 strip: Re eta > 1 - mu gamma
    CHECK(gg_form(2.0, 0.7).strip().lo == doctest::Approx(1.0 - 1.4));
}

TEST_CASE("folded Cauchy transform") {
    const MellinForm c = mellin_of_folded_cauchy();
    CHECK(real_eval(c, 1.0, 7.3) == doctest::Approx(1.0).epsilon(1e-13)); // total mass
    CHECK(real_eval(c, 1.5, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(c.strip().lo == doctest::Approx(0.0));
    CHECK(c.strip().hi == doctest::Approx(2.0));
    // unit-clock variant drops the t dependence
    const MellinForm u = mellin_of_folded_cauchy(true);
    CHECK(real_eval(u, 1.5, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("product: two tilde factors at the square-root clock") {
    const double mu = 0.6, g = 2.0;
    const MellinForm half = apply_clock(ggt_form(g, mu), 1.0, 0.5);
    const MellinForm prod = product(half, half);
    // Gamma^2((eta-1)/g + mu) / Gamma^2(mu) * t^{eta-1}
    const double eta = 1.8;
    const double expected =
        std::pow(std::tgamma((eta - 1.0) / g + mu) / std::tgamma(mu), 2.0);
    CHECK(real_eval(prod, eta, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(prod.t_slope == doctest::Approx(1.0));

    // unit form is the identity
    const MellinForm f = gg_form(1.7, 0.9);
    const MellinForm same = product(f, MellinForm::unit());
    CHECK(equal_on_strip(f, same).max_rel_dev == doctest::Approx(0.0));
}

TEST_CASE("mixed-sign product strip is pole-derived") {
    // Gamma((eta-1)/g + mu) Gamma((1-eta)/g + mu) t^{eta-1} / Gamma^2(mu):
    // the poles bound 1 - g mu < Re eta < 1 + g mu. A lower bound of 0,
    // sometimes stated for this transform, matches only when g mu = 1.
    const double mu = 0.6, g = 2.0;
    const MellinForm prod = product(apply_clock(ggt_form(g, mu), 1.0, 0.5),
                                    apply_clock(ggt_form(-g, mu), 1.0, 0.5));
    CHECK(prod.strip().lo == doctest::Approx(1.0 - g * mu));
    CHECK(prod.strip().hi == doctest::Approx(1.0 + g * mu));
}

TEST_CASE("subordination") {
    // identity subordination: deterministic clock form t^{eta-1}
    MellinForm clock;
    clock.t_slope = 1.0;
    clock.t_offset = -1.0;
    const MellinForm f = gg_form(2.0, 0.7);
    const MellinForm sub = subordinate(f, clock);
    CHECK(equal_on_strip(f, sub).max_rel_dev < 1e-15);

    // tilde chain equals the square-root product
    const MellinForm chain = subordinate(ggt_form(2.0, 0.5), ggt_form(2.0, 0.5));
    const MellinForm half = apply_clock(ggt_form(2.0, 0.5), 1.0, 0.5);
    auto eq = equal_on_strip(chain, product(half, half));
    CHECK(eq.equal);

    // raw clocks compose exponents: t^{(eta-1)/(g1 g2)}
    const MellinForm raw = subordinate(gg_form(2.0, 0.7), gg_form(3.0, 0.7));
    CHECK(raw.t_slope == doctest::Approx(1.0 / 6.0));
    CHECK(raw.t_offset == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("power map") {
    // [Gamma]^{1/g} has the generalized transform
    auto eq1 =
        equal_on_strip(power_map(gg_form(1.0, 0.8), 1.0 / 2.5), gg_form(2.5, 0.8));
    CHECK(eq1.equal);
    // beta = 1 is the identity
    const MellinForm f = gg_form(1.3, 1.1);
    CHECK(equal_on_strip(power_map(f, 1.0), f).max_rel_dev < 1e-15);
    // reciprocal maps to the inverse family
    auto eq2 = equal_on_strip(power_map(gg_form(2.0, 0.7), -1.0), gg_form(-2.0, 0.7));
    CHECK(eq2.equal);
    // round trip reproduces evaluations
    const MellinForm rt = power_map(power_map(f, 1.9), 1.0 / 1.9);
    CHECK(equal_on_strip(f, rt).max_rel_dev < 1e-12);
}

TEST_CASE("scaling") {
    // time scaling by a equals space scaling by a^{1/g}
    const double a = 2.7, g = 1.6;
    const MellinForm f = gg_form(g, 0.9);
    auto eq = equal_on_strip(scale(f, a, ScaleMode::Time),
                             scale(f, std::pow(a, 1.0 / g), ScaleMode::Space));
    CHECK(eq.equal);
    CHECK(equal_on_strip(scale(f, 1.0, ScaleMode::Time), f).max_rel_dev < 1e-15);
    // Cauchy: space scale by a = time scale by a
    const MellinForm c = mellin_of_folded_cauchy();
    CHECK(equal_on_strip(scale(c, 3.0, ScaleMode::Space), scale(c, 3.0, ScaleMode::Time))
              .equal);
}

TEST_CASE("equal_on_strip: four-fold chain and the negative control") {
    // chain of four tilde factors, alternating sign, mu = 1/2
    auto chain = subordinate(
        ggt_form(2.0, 0.5),
        subordinate(ggt_form(-2.0, 0.5),
                    subordinate(ggt_form(2.0, 0.5), ggt_form(-2.0, 0.5))));
    MellinForm prod = MellinForm::unit();
    for (double g : {2.0, -2.0, 2.0, -2.0})
        prod = product(prod, apply_clock(ggt_form(g, 0.5), 1.0, 0.25));
    auto eq = equal_on_strip(chain, prod);
    CHECK(eq.equal);
    CHECK(eq.max_rel_dev < 1e-9);

    // f = f: zero deviation
    CHECK(equal_on_strip(chain, chain).max_rel_dev == doctest::Approx(0.0));

    // raw-clock vs tilde-clock iteration differ for gamma = 2
    auto raw = subordinate(gg_form(2.0, 0.5), gg_form(2.0, 0.5));
    auto tilde = subordinate(ggt_form(2.0, 0.5), ggt_form(2.0, 0.5));
    auto neq = equal_on_strip(raw, tilde);
    CHECK_FALSE(neq.equal);
    CHECK(neq.max_rel_dev > 1e-3);

    // disjoint strips must raise
    MellinForm right;
    right.push_factor(1.0, -2.5, 1); // Re eta > 2.5
    MellinForm left;
    left.push_factor(-1.0, 1.0, 1); // Re eta < 1
    CHECK_THROWS_AS(equal_on_strip(right, left), EmptyStripError);
}

TEST_CASE("moments") {
    const double mu = 1.7;
    auto m1 = moment(gg_form(1.0, mu), 1, 2.0);
    REQUIRE(m1.has_value());
    CHECK(*m1 == doctest::Approx(mu * 2.0).epsilon(1e-13));

    // folded Cauchy first moment sits on the strip boundary: infinite
    CHECK_FALSE(moment(mellin_of_folded_cauchy(), 1, 1.0).has_value());

    // Brownian-over-Gamma fourth moment at mu = 1, t = 1 equals 6
    auto form = to_mellin(*compose(brown(), gg(1.0, 1.0)));
    REQUIRE(form.has_value());
    auto m4 = moment(*form, 4, 1.0);
    REQUIRE(m4.has_value());
    CHECK(*m4 == doctest::Approx(6.0).epsilon(1e-12));
    // normalization: zeroth moment is 1 for every density-backed form
    CHECK(*moment(*form, 0, 0.7) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("algebra closure over random chains") {
    Rng rng(777);
    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        MellinForm f = gg_form(rng.uniform01() < 0.3 ? -(0.5 + 2.0 * rng.uniform01())
                                                     : 0.5 + 2.0 * rng.uniform01(),
                               0.3 + 2.0 * rng.uniform01());
        try {
            const int depth = 1 + static_cast<int>(rng.uniform01() * 4.0);
            for (int d = 0; d < depth; ++d) {
                const double u = rng.uniform01();
                const MellinForm g =
                    gg_form(0.5 + 2.0 * rng.uniform01(), 0.3 + 2.0 * rng.uniform01());
                if (u < 0.3)
                    f = product(f, apply_clock(g, 1.0, 0.5));
                else if (u < 0.55)
                    f = subordinate(f, g);
                else if (u < 0.8)
                    f = power_map(f, rng.uniform01() < 0.5
                                         ? 1.0 / (0.4 + rng.uniform01())
                                         : -(0.4 + rng.uniform01()));
                else
                    f = scale(f, 0.5 + 2.0 * rng.uniform01(),
                              rng.uniform01() < 0.5 ? ScaleMode::Time
                                                    : ScaleMode::Space);
            }
        } catch (const EmptyStripError&) {
            continue; // admissible outcome for incompatible strips
        }
        ++built;
        REQUIRE(f.strip().lo < f.strip().hi);
        // real and positive on the real axis inside the strip
        double lo = f.strip().lo, hi = f.strip().hi;
        if (std::isinf(lo)) lo = hi - 2.0;
        if (std::isinf(hi)) hi = lo + 2.0;
        const double eta = 0.5 * (lo + hi);
        const auto v = f.eval({eta, 0.0}, 1.3);
        CHECK(v.real() > 0.0);
        CHECK(std::abs(v.imag()) <= 1e-12 * std::abs(v.real()));
    }
    CHECK(built > 100);
}

TEST_CASE("serialization carries the full form") {
    const auto j = gg_form(-2.0, 0.5).to_json();
    CHECK(j.contains("const_log"));
    CHECK(j.contains("eta_scale_log"));
    CHECK(j.at("t_slope").get<double>() == doctest::Approx(-0.5));
    CHECK(j.at("factors").size() == 1);
    CHECK(j.at("strip").at("lo").is_null()); // unbounded below
    CHECK(j.at("strip").at("hi").get<double>() == doctest::Approx(2.0));
}
