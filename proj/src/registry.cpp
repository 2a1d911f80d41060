// SPDX-License-Identifier: Apache-2.0
//
// The case registry: every equality-in-distribution and every governing
// equation the library verifies, with pinned parameters.
#include <cmath>

#include "ggp/verify.hpp"

namespace ggp {
namespace {

// ------------------------------------------------------------- 1-d stencils

struct View1D {
    const std::vector<double>& q;
    const std::vector<double>& xs;
    const std::vector<double>& ts;
    int nt;
    double hx, ht;

    double at(int i, int j) const { return q[static_cast<std::size_t>(i) * nt + j]; }
    double dt(int i, int j) const { return (at(i, j + 1) - at(i, j - 1)) / (2.0 * ht); }
    double dx(int i, int j) const { return (at(i + 1, j) - at(i - 1, j)) / (2.0 * hx); }
    double dxx(int i, int j) const {
        return (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (hx * hx);
    }
    double dxxx(int i, int j) const {
        return (at(i + 2, j) - 2.0 * at(i + 1, j) + 2.0 * at(i - 1, j) - at(i - 2, j)) /
               (2.0 * hx * hx * hx);
    }
};

// Max |residual| over a fixed physical interior: the margin is measured in
// base-grid cells so that coarse and refined runs compare the same region
// (otherwise the refined max creeps toward the boundary and spoils the
// observed order).
template <typename Residual>
double sweep_1d(const std::vector<double>& q, const std::vector<double>& xs,
                const std::vector<double>& ts, int nx, int nt, int base_nx,
                int base_nt, Residual residual) {
    View1D v{q, xs, ts, nt, xs[1] - xs[0], ts[1] - ts[0]};
    const int fx = (nx - 1) / (base_nx - 1);
    const int ft = (nt - 1) / (base_nt - 1);
    double worst = 0.0;
    for (int i = 2 * fx; i < nx - 2 * fx; ++i)
        for (int j = ft; j < nt - ft; ++j)
            worst = std::max(worst, std::abs(residual(v, i, j)));
    return worst;
}

// d/dx of a field given by a lambda i' -> value, centred at i
template <typename Field>
double d_dx(const View1D& v, Field field, int i) {
    return (field(i + 1) - field(i - 1)) / (2.0 * v.hx);
}

} // namespace

const std::vector<IdentityCase>& identity_registry() {
    static const std::vector<IdentityCase> cases = [] {
        std::vector<IdentityCase> reg;
        auto add = [&](IdentityCase c) { reg.push_back(std::move(c)); };
        auto two = [](ExprPtr a, ExprPtr b) { return std::vector<ExprPtr>{a, b}; };
        auto three = [](ExprPtr a, ExprPtr b, ExprPtr c) {
            return std::vector<ExprPtr>{a, b, c};
        };

        // two-fold tilde iterations vs products at split times
        add({"qbn", compose(ggt(2, 0.5), ggt(2, 0.5)),
             product_split(two(ggt(2, 0.5), ggt(2, 0.5))), true, false, false, 1.0,
             "tilde iteration = product at the square-root clock"});
        add({"sfg", compose(ggt(-2, 0.7), ggt(-2, 0.7)),
             product_split(two(ggt(-2, 0.7), ggt(-2, 0.7))), true, false, false, 1.0,
             "inverse-family variant of qbn"});
        add({"product_gtilde", compose(ggt(2, 0.6), ggt(-2, 0.6)),
             product_split(two(ggt(2, 0.6), ggt(-2, 0.6))), true, false, false, 1.0,
             "mixed-sign tilde iteration"});
        add({"product_gtilde2", compose(ggt(-1.5, 0.8), ggt(1.5, 0.8)),
             product_split(two(ggt(-1.5, 0.8), ggt(1.5, 0.8))), true, false, false, 1.0,
             "mirror of product_gtilde"});
        add({"sub_c", folded_cauchy(), compose(ggt(2, 0.5), ggt(-2, 0.5)), true, false,
             false, 1.0, "folded Cauchy as a mixed tilde iteration"});
        add({"iiio", folded_cauchy(), power(time_change(folded_cauchy(), 1.0, -1.0), -1.0),
             true, false, false, 1.0, "folded Cauchy time inversion"});
        add({"p4p",
             compose(ggt(2, 0.5),
                     compose(ggt(-2, 0.5), compose(ggt(2, 0.5), ggt(-2, 0.5)))),
             product_split({ggt(2, 0.5), ggt(-2, 0.5), ggt(2, 0.5), ggt(-2, 0.5)}), true,
             false, false, 1.0, "four-fold tilde chain vs fourth-root product"});

        // scaled Cauchy chains, n = 3
        auto cauchy_chain3 =
            compose(cauchy(), compose(folded_cauchy(), folded_cauchy()));
        auto cauchy_prod3 = [&](double a) {
            const double a3 = std::cbrt(a);
            return product(three(time_change(cauchy(), a3, 1.0 / 3.0),
                                 time_change(cauchy(), a3, 1.0 / 3.0),
                                 time_change(cauchy(), a3, 1.0 / 3.0)));
        };
        add({"m234_a05", scale_expr(cauchy_chain3, 0.5), cauchy_prod3(0.5), true, false,
             true, 1.0, "scaled three-fold Cauchy chain, a = 1/2"});
        add({"m234_a2", scale_expr(cauchy_chain3, 2.0), cauchy_prod3(2.0), true, false,
             true, 1.0, "scaled three-fold Cauchy chain, a = 2"});

        add({"gdig", compose(gg(1.7, 0.9), gg(1, 0.9)),
             product_split(two(gg(1.7, 0.9), gg(1.7, 0.9))), true, false, false, 1.0,
             "guide over a plain Gamma clock"});
        add({"bbn", compose(gg(2, 0.5), scale_expr(time_change(gg(1, 0.5), 2.0, 1.0), 2.0)),
             product(two(time_change(brown(), 1.0, 0.5), time_change(brown(), 1.0, 0.5))),
             true, false, true, 1.0,
             "half-normal guide over a doubled Gamma clock = |B1 B2| at sqrt t"});
        add({"prodgn", compose(gg(2.5, 0.6), compose(gg(1, 0.6), gg(1, 0.6))),
             product_split(three(gg(2.5, 0.6), gg(2.5, 0.6), gg(2.5, 0.6))), true, false,
             false, 1.0, "guide over two Gamma clocks vs cube-root product"});
        {
            const double a = 1.8, g1 = 2.5;
            const double a3 = std::cbrt(a);
            add({"selfg",
                 scale_expr(compose(gg(g1, 0.6), compose(gg(1, 0.6), gg(1, 0.6))),
                            std::pow(a, 1.0 / g1)),
                 product(three(time_change(gg(g1, 0.6), a3, 1.0 / 3.0),
                               time_change(gg(g1, 0.6), a3, 1.0 / 3.0),
                               time_change(gg(g1, 0.6), a3, 1.0 / 3.0))),
                 true, false, false, 1.0, "self-similarity of the iterated guide"});
        }
        add({"selfgcomp", power(compose(gg(2, 0.7), gg(3, 0.7)), 2.0),
             compose(gg(1, 0.7), gg(3, 0.7)), true, false, false, 1.0,
             "guide exponent moves out of an iteration"});
        add({"properties_g_pow", power(gg(1, 0.8), 1.0 / 2.5), gg(2.5, 0.8), true, false,
             false, 1.0, "Gamma^(1/g) = generalized Gamma"});
        add({"properties_g_pow_inv", power(gg(0.5, 1.2), 0.5), gg(1, 1.2), true, false,
             false, 1.0, "generalized Gamma^g = Gamma"});
        add({"invaaaa", power(gg(2, 0.7), -1.0), gg(-2, 0.7), true, false, false, 1.0,
             "reciprocal maps to the inverse family"});

        // infinite-divisibility sums (outside the Mellin algebra)
        add({"prop_somma",
             sum_of_powers({gg(1, 0.6), gg(2, 0.6), gg(-2, 0.6), gg(0.5, 0.6)},
                           {1.0, 2.0, -2.0, 0.5}, 1.0),
             gg(1, 2.4), false, false, false, 1.0,
             "sum of powered components is Gamma with stacked shape"});
        add({"gen_g",
             sum_of_powers(three(gg(2, 0.5), gg(2, 0.5), gg(2, 0.5)), {2.0, 2.0, 2.0},
                           0.5),
             gg(2, 1.5), false, false, false, 1.0,
             "generalized Bessel construction, n = 3"});
        add({"bessel_sum",
             sum_of_powers(three(brown(), brown(), brown()), {2.0, 2.0, 2.0}, 0.5),
             time_change(gg(2, 1.5), 2.0, 1.0), false, false, false, 1.0,
             "Brownian norm = half-Gamma at the doubled clock"});

        for (double t : {0.5, 2.0}) {
            add({t < 1.0 ? "mqqqq_t05" : "mqqqq_t2", folded_cauchy(),
                 compose(gg(2, 0.5), time_change(gg(-1, 0.5), 1.0, -2.0)), true, false,
                 false, t, "folded Cauchy as a guide over an inverse clock at 1/t^2"});
        }
        add({"equiv_c", compose(brown(), stable_half()), cauchy(), true, false, false,
             1.0, "Brownian motion at a first-passage clock is Cauchy"});
        add({"jjla", norm_bg(2), power(compose(brown(), besselsq(2)), 1.0), true, false,
             false, 1.0, "norm of the jointly subordinated plane = |B(BSQ_2)|"});

        // fractional Brownian compositions
        add({"llkk", compose(fbm(0.8), power(fbm(0.8), 1.0 / 0.8)),
             product(two(fbm(0.4), fbm(0.4))), true, false, true, 1.0,
             "one fractional iteration as a same-time product"});
        {
            const double h = 0.6;
            add({"ghghg",
                 compose(fbm(h), power(compose(fbm(h), power(fbm(h), 1.0 / h)), 1.0 / h)),
                 product(three(fbm(h / 3), fbm(h / 3), fbm(h / 3))), true, false, true,
                 1.7, "three-fold fractional iteration, H = 0.6"});
        }
        {
            const double h1 = 0.7, h2 = 0.4, h3 = 0.6;
            add({"h1",
                 compose(brown(),
                         compose(gg(1.0 / h1, 0.5),
                                 scale_expr(time_change(gg(1.0 / h2, 0.5), 2.0,
                                                        2.0 * h3),
                                            2.0))),
                 compose(fbm(h1), power(compose(fbm(h2), power(fbm(h3), 1.0)), 1.0)),
                 true, false, true, 1.0,
                 "iterated fractional chain as a Gamma chain with doubled clocks"});
        }

        // Student construction
        add({"student_nu1", compose(ggt(2, 0.5), ggt(-2, 0.5)), student_pos(1.0), true,
             false, false, 1.0, "T(1): folded Cauchy clock form vs Student sampler"});
        add({"student_nu3", compose(ggt(2, 0.5), ggt(-2, 1.5)), student_pos(3.0), true,
             false, false, std::sqrt(3.0), "T(3) at t = sqrt(3)"});

        // negative control: raw-clock vs tilde-clock iterations differ
        add({"neg_gg_vs_ggt", compose(gg(2, 0.5), gg(2, 0.5)),
             compose(ggt(2, 0.5), ggt(2, 0.5)), true, true, false, 1.0,
             "control: the two clock conventions agree only at gamma = 1"});
        return reg;
    }();
    return cases;
}

const std::vector<PdeCase>& pde_registry() {
    static const std::vector<PdeCase> cases = [] {
        std::vector<PdeCase> reg;

        // t q_t = -(1/g) (x q)_x
        {
            PdeCase c;
            c.id = "pde_first_order";
            c.note = "transport form of the raw-clock density";
            c.x0 = 0.4;
            c.x1 = 3.0;
            c.t0 = 0.5;
            c.t1 = 2.0;
            c.nx = 201;
            c.nt = 33;
            c.law = make_law("gg", {{"mu", 0.7}, {"gamma", 2.0}});
            const double g = 2.0;
            c.assemble = [g, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(q, xs, ts, nx, nt, bx, bt,
                                [&](const View1D& v, int i, int j) {
                                    const auto xq = [&](int k) {
                                        return v.xs[k] * v.at(k, j);
                                    };
                                    return v.ts[j] * v.dt(i, j) +
                                           (1.0 / g) * d_dx(v, xq, i);
                                });
            };
            reg.push_back(std::move(c));
        }

        // q_t = x q_xx - (mu - 2) q_x
        {
            PdeCase c;
            c.id = "pde_gamma";
            c.note = "second-order equation of the Gamma marginal";
            c.x0 = 0.5;
            c.x1 = 5.0;
            c.t0 = 0.5;
            c.t1 = 2.0;
            c.nx = 401;
            c.nt = 41;
            const double mu = 2.0;
            c.law = make_law("gg", {{"mu", mu}, {"gamma", 1.0}});
            c.assemble = [mu, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(q, xs, ts, nx, nt, bx, bt,
                                [&](const View1D& v, int i, int j) {
                                    return v.dt(i, j) - v.xs[i] * v.dxx(i, j) +
                                           (mu - 2.0) * v.dx(i, j);
                                });
            };
            reg.push_back(std::move(c));
        }

        // q_t = (1/g^2) [ (x^{2-g} q_x)_x - (g mu - 1) (x^{1-g} q)_x ]
        {
            PdeCase c;
            c.id = "pde_gg";
            c.note = "general raw-clock equation";
            c.x0 = 0.4;
            c.x1 = 3.0;
            c.t0 = 0.5;
            c.t1 = 2.0;
            c.nx = 241;
            c.nt = 33;
            const double mu = 1.1, g = 1.5;
            c.law = make_law("gg", {{"mu", mu}, {"gamma", g}});
            c.assemble = [mu, g, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(
                    q, xs, ts, nx, nt, bx, bt, [&](const View1D& v, int i, int j) {
                        const auto flux = [&](int k) {
                            return std::pow(v.xs[k], 2.0 - g) * v.dx(k, j);
                        };
                        const auto drift = [&](int k) {
                            return std::pow(v.xs[k], 1.0 - g) * v.at(k, j);
                        };
                        return v.dt(i, j) -
                               (d_dx(v, flux, i) -
                                (g * mu - 1.0) * d_dx(v, drift, i)) /
                                   (g * g);
                    });
            };
            reg.push_back(std::move(c));
        }

        // 4 q_t = (2 mu - 3) q_xx - x q_xxx, x != 0
        {
            PdeCase c;
            c.id = "pde_bg1";
            c.note = "third-order equation of the Brownian-over-Gamma marginal";
            c.x0 = 0.3;
            c.x1 = 3.0;
            c.t0 = 0.5;
            c.t1 = 2.0;
            c.nx = 241;
            c.nt = 33;
            c.singular_at_origin = true;
            const double mu = 1.25;
            c.law = make_law("bg1", {{"mu", mu}});
            c.assemble = [mu, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(q, xs, ts, nx, nt, bx, bt,
                                [&](const View1D& v, int i, int j) {
                                    return 4.0 * v.dt(i, j) -
                                           (2.0 * mu - 3.0) * v.dxx(i, j) +
                                           v.xs[i] * v.dxxx(i, j);
                                });
            };
            reg.push_back(std::move(c));
        }

        // q_t = -H t^{2H-1} (2 q_xx + x q_xxx), x != 0
        {
            PdeCase c;
            c.id = "pde_k0_fbm";
            c.note = "fractional-clock K0 marginal";
            c.x0 = 0.3;
            c.x1 = 2.5;
            c.t0 = 0.6;
            c.t1 = 1.8;
            c.nx = 241;
            c.nt = 33;
            c.singular_at_origin = true;
            const double hurst = 0.7;
            c.law = make_law("k0_fbm", {{"H", hurst}});
            c.assemble = [hurst, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(
                    q, xs, ts, nx, nt, bx, bt, [&](const View1D& v, int i, int j) {
                        const double w = hurst * std::pow(v.ts[j], 2.0 * hurst - 1.0);
                        return v.dt(i, j) +
                               w * (2.0 * v.dxx(i, j) + v.xs[i] * v.dxxx(i, j));
                    });
            };
            reg.push_back(std::move(c));
        }

        // q_t = -(1/2) (x q_x)_xx at the doubled clock, mu = 1/2
        {
            PdeCase c;
            c.id = "pde_wpde";
            c.note = "one-dimensional squared-clock special case";
            c.x0 = 0.3;
            c.x1 = 2.5;
            c.t0 = 0.5;
            c.t1 = 1.5;
            c.nx = 241;
            c.nt = 33;
            c.singular_at_origin = true;
            c.law = make_law("bg1", {{"mu", 0.5}});
            c.time_dilation = 2.0;
            c.assemble = [bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>&, const std::vector<double>& ts,
                             int nx, int nt) {
                return sweep_1d(q, xs, ts, nx, nt, bx, bt,
                                [&](const View1D& v, int i, int j) {
                                    const auto g = [&](int k) {
                                        return v.xs[k] * v.dx(k, j);
                                    };
                                    const double d2g =
                                        (g(i + 1) - 2.0 * g(i) + g(i - 1)) /
                                        (v.hx * v.hx);
                                    return v.dt(i, j) + 0.5 * d2g;
                                });
            };
            reg.push_back(std::move(c));
        }

        // 4 q_t = (2 mu - n) Lap q - Lap (x . grad q), n = 2
        {
            PdeCase c;
            c.id = "pde_bg1_2d";
            c.note = "plane Brownian-over-Gamma equation";
            c.dim = 2;
            c.x0 = 0.8;
            c.x1 = 2.4;
            c.y0 = 0.8;
            c.y1 = 2.4;
            c.t0 = 0.6;
            c.t1 = 1.6;
            c.nx = 65;
            c.nt = 21;
            c.singular_at_origin = true;
            const double mu = 1.3;
            c.law = make_law("bg1_nd", {{"mu", mu}, {"n", 2.0}});
            c.assemble = [mu, bx = c.nx, bt = c.nt](
                             const std::vector<double>& q, const std::vector<double>& xs,
                             const std::vector<double>& ys,
                             const std::vector<double>& ts, int nx, int nt) {
                const int ny = static_cast<int>(ys.size());
                const double hx = xs[1] - xs[0];
                const double ht = ts[1] - ts[0];
                const int fx = (nx - 1) / (bx - 1);
                const int ft = (nt - 1) / (bt - 1);
                auto at = [&](int i, int k, int j) {
                    return q[(static_cast<std::size_t>(i) * ny + k) * nt + j];
                };
                auto lap = [&](auto field, int i, int k) {
                    return (field(i + 1, k) + field(i - 1, k) + field(i, k + 1) +
                            field(i, k - 1) - 4.0 * field(i, k)) /
                           (hx * hx);
                };
                double worst = 0.0;
                for (int i = 2 * fx; i < nx - 2 * fx; ++i)
                    for (int k = 2 * fx; k < ny - 2 * fx; ++k)
                        for (int j = ft; j < nt - ft; ++j) {
                            auto qf = [&](int a, int b) { return at(a, b, j); };
                            auto xgrad = [&](int a, int b) {
                                const double qx =
                                    (at(a + 1, b, j) - at(a - 1, b, j)) / (2.0 * hx);
                                const double qy =
                                    (at(a, b + 1, j) - at(a, b - 1, j)) / (2.0 * hx);
                                return xs[a] * qx + ys[b] * qy;
                            };
                            const double dt =
                                (at(i, k, j + 1) - at(i, k, j - 1)) / (2.0 * ht);
                            const double r = 4.0 * dt - (2.0 * mu - 2.0) * lap(qf, i, k) +
                                             lap(xgrad, i, k);
                            worst = std::max(worst, std::abs(r));
                        }
                return worst;
            };
            reg.push_back(std::move(c));
        }
        return reg;
    }();
    return cases;
}

} // namespace ggp
