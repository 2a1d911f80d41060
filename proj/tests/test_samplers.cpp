// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "ggp/errors.hpp"
#include "ggp/process.hpp"
#include "ggp/specfun.hpp"
#include "ggp/verify.hpp"

using namespace ggp;

namespace {

double mean_of(const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m += (v[i] - m) / (i + 1.0);
    return m;
}

// one-sample KS against a CDF
double ks_one_sample(std::vector<double> v, const std::function<double(double)>& cdf) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max(d, std::max(std::abs((i + 1.0) / n - f), std::abs(i / n - f)));
    }
    return d;
}

} // namespace

TEST_CASE("gamma variates: moments and distribution") {
    // exponential special case
    auto expo = sample_gamma(1.0, 2.0, 200000, 11);
    CHECK(mean_of(expo.values) == doctest::Approx(2.0).epsilon(0.02));

    auto g2 = sample_gamma(2.0, 1.0, 1000000, 12);
    CHECK(std::abs(mean_of(g2.values) - 2.0) < 3.0 * std::sqrt(2.0 / 1e6));

    // KS against the regularized incomplete-gamma CDF at alpha = 0.01
    auto batch = sample_gamma(0.7, 1.5, 100000, 13);
    const double d = ks_one_sample(batch.values,
                                   [](double x) { return gamma_p(0.7, x / 1.5); });
    const double crit = 1.628 / std::sqrt(1e5); // alpha = 0.01
    CHECK(d < crit);

    // small shapes go through the boost branch
    auto tiny = sample_gamma(0.05, 1.0, 200000, 14);
    CHECK(mean_of(tiny.values) == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("batches are reproducible and shard-stable") {
    const auto e = compose(ggt(2, 0.5), ggt(-2, 0.5));
    const auto a = sample_process(e, 1.0, 10000, 42);
    const auto b = sample_process(e, 1.0, 10000, 42);
    CHECK(a.values == b.values);
    CHECK(a.digest == expr_digest(*e));
    // a longer batch starts with the same shards
    const auto c = sample_process(e, 1.0, 12000, 42);
    CHECK(std::equal(a.values.begin(), a.values.end(), c.values.begin()));
    // different seeds differ
    CHECK(sample_process(e, 1.0, 100, 43).values != a.values);
}

TEST_CASE("scale node acts realization by realization") {
    const auto base = gg(2, 0.5);
    const auto scaled = scale_expr(base, 3.0);
    const auto a = sample_process(base, 1.0, 5000, 7);
    const auto b = sample_process(scaled, 1.0, 5000, 7);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(b.values[i] == doctest::Approx(3.0 * a.values[i]).epsilon(1e-15));
}

TEST_CASE("expression grammar round trip") {
    const std::string text = "compose(ggt(2,0.5),ggt(-2,0.5))";
    const auto e = parse_expr(text);
    CHECK(to_string(*e) ==
          "compose(timechange(gg(2,0.5),1,2),timechange(gg(-2,0.5),1,-2))");
    CHECK(expr_digest(*parse_expr(to_string(*e))) == expr_digest(*e));
    CHECK_THROWS_AS(parse_expr("compose(brown)"), ExprError);
    CHECK_THROWS_AS(parse_expr("gg(2,0.5) trailing"), ExprError);
    CHECK_THROWS_AS(parse_expr("unknown(1)"), ExprError);
    // a real-valued clock is rejected
    CHECK_THROWS_AS(parse_expr("compose(brown,cauchy)"), ExprError);
}

TEST_CASE("composition laws agree with split-time products (two-sample KS)") {
    const std::size_t n = 100000;
    // tilde iteration vs square-root product
    {
        const auto lhs = compose(ggt(2, 0.5), ggt(2, 0.5));
        const auto rhs = product_split({ggt(2, 0.5), ggt(2, 0.5)});
        auto a = sample_process(lhs, 1.0, n, 101);
        auto b = sample_process(rhs, 1.0, n, 202);
        CHECK(ks_two_sample(a.values, b.values).p_value > 0.01);
    }
    // power collapse: [G_g]^g = G_1
    {
        auto a = sample_process(power(gg(2.5, 0.8), 2.5), 1.0, n, 103);
        auto b = sample_process(gg(1, 0.8), 1.0, n, 204);
        CHECK(ks_two_sample(a.values, b.values).p_value > 0.01);
    }
    // Brownian motion at a first-passage clock is Cauchy
    {
        auto a = sample_process(compose(brown(), stable_half()), 1.0, n, 105);
        auto b = sample_process(cauchy(), 1.0, n, 206);
        CHECK(ks_two_sample(a.values, b.values).p_value > 0.01);
    }
}

TEST_CASE("empirical Mellin values match the symbolic forms") {
    const std::size_t n = 100000;
    std::vector<ExprPtr> exprs = {compose(ggt(2, 0.5), ggt(-2, 0.5)),
                                  compose(brown(), besselsq(2)), norm_bg(3)};
    for (const auto& e : exprs) {
        auto form = to_mellin(*e);
        REQUIRE(form.has_value());
        auto batch = sample_process(e, 1.3, n, 31);
        for (double eta : {1.3, 1.7}) {
            double m = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v = std::pow(std::abs(batch.values[i]), eta - 1.0);
                const double d = v - m;
                m += d / (i + 1.0);
                s2 += d * (v - m);
            }
            const double se = std::sqrt(s2 / (n - 1.0) / n);
            const double expected = form->eval({eta, 0.0}, 1.3).real();
            CHECK(std::abs(m - expected) < 4.0 * se);
        }
    }
}

TEST_CASE("gaussian pairs carry the two-point covariance") {
    // H = 1/2, equal times: perfectly correlated standard normals
    auto same = sample_gaussian_pair(0.5, 1.0, 1.0, 1000, 5);
    for (const auto& p : same.pairs) CHECK(p[0] == doctest::Approx(p[1]));

    // H = 1/2: covariance is min(t1, t2)
    auto bm = sample_gaussian_pair(0.5, 1.0, 2.0, 1000000, 6);
    double acc = 0.0;
    for (const auto& p : bm.pairs) acc += p[0] * p[1];
    CHECK(acc / 1e6 == doctest::Approx(1.0).epsilon(0.01));

    // H = 0.3 at (1, 1.5)
    auto fr = sample_gaussian_pair(0.3, 1.0, 1.5, 1000000, 7);
    double m = 0.0, s2 = 0.0;
    std::size_t i = 0;
    for (const auto& p : fr.pairs) {
        const double v = p[0] * p[1];
        const double d = v - m;
        m += d / (++i);
        s2 += d * (v - m);
    }
    const double expected =
        0.5 * (1.0 + std::pow(1.5, 0.6) - std::pow(0.5, 0.6));
    CHECK(std::abs(m - expected) < 4.0 * std::sqrt(s2 / (i - 1.0) / i));
}

TEST_CASE("support violations are rejected") {
    CHECK_THROWS_AS(compose(gg(1, 1), brown()), ExprError);
    CHECK_THROWS_AS(sum_of_powers({brown()}, {3.0}, 1.0), ExprError);
    CHECK_NOTHROW(sum_of_powers({brown()}, {2.0}, 1.0));
    Rng rng(1);
    CHECK_THROWS_AS(sample_one(*brown(), -1.0, rng), DomainError);
}
