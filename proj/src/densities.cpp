// SPDX-License-Identifier: Apache-2.0
#include "ggp/densities.hpp"

#include <cmath>
#include <numbers>

#include "ggp/errors.hpp"
#include "ggp/specfun.hpp"

namespace ggp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfVal = std::numeric_limits<double>::infinity();

double get(const LawParams& p, const std::string& key) { return p.at(key); }

// z^{(1-mu)/2} I_{mu-1}(2 sqrt z) = sum_k z^k / (k! Gamma(mu+k)); entire in z.
double scaled_bessel_i_series(double mu, double z) {
    double term = gamma_reciprocal(mu);
    double sum = term;
    for (int k = 1; k < 600; ++k) {
        term *= z / (k * (mu + k - 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw NonConvergenceError("bivariate density: series cap reached");
}

// Generalized Gamma density Q(x; c, mu, gamma); gamma < 0 is the inverse
// family.
double gg_density(double x, double c, double mu, double gamma) {
    if (x < 0.0) throw DomainError("gg density: x must be >= 0");
    if (x == 0.0) {
        if (gamma < 0.0 || mu * gamma > 1.0) return 0.0;
        if (mu * gamma == 1.0) return gamma / (std::pow(c, mu) * std::tgamma(mu));
        return kInfVal;
    }
    const double logv = std::log(std::abs(gamma)) + (mu * gamma - 1.0) * std::log(x) -
                        std::pow(x, gamma) / c - mu * std::log(c) - std::lgamma(mu);
    return std::exp(logv);
}

double gtilde_iter_density(double x, double t, double mu, double gamma) {
    if (x < 0.0) throw DomainError("gtilde_iter: x must be >= 0");
    if (x == 0.0) return gamma < 0.0 || mu * gamma > 1.0 ? 0.0 : kInfVal;
    const double log_z = gamma * std::log(x / t);
    if (log_z > 14.0) return 0.0; // K_0 argument beyond 2.4e3
    const double log_pref = std::log(2.0 * std::abs(gamma)) + mu * log_z - std::log(x) -
                            2.0 * std::lgamma(mu);
    if (log_z < -690.0) { // argument underflows; K_0(w) ~ -log(w/2) - EulerGamma
        const double k0 = -0.5 * log_z - 0.57721566490153286;
        const double lv = log_pref + std::log(k0);
        return lv < -745.0 ? 0.0 : std::exp(std::min(lv, 700.0));
    }
    return std::exp(log_pref) * bessel_k(0.0, 2.0 * std::exp(0.5 * log_z));
}

double qaqa_density(double x, double t, double mu, double gamma) {
    if (x < 0.0) throw DomainError("qaqa: x must be >= 0");
    const double lc = std::lgamma(2.0 * mu) - 2.0 * std::lgamma(mu);
    if (x == 0.0) {
        if (mu * gamma > 1.0) return 0.0;
        if (mu * gamma == 1.0) return gamma * std::exp(lc) * std::pow(t, -mu * gamma);
        return kInfVal;
    }
    return gamma * std::exp(lc) * std::pow(x, mu * gamma - 1.0) * std::pow(t, mu * gamma) /
           std::pow(std::pow(x, gamma) + std::pow(t, gamma), 2.0 * mu);
}

double tdist0_density(double x, double t, double mu1, double mu2, double gamma) {
    if (x < 0.0) throw DomainError("tdist0: x must be >= 0");
    const double lc = std::lgamma(mu1 + mu2) - std::lgamma(mu1) - std::lgamma(mu2);
    if (x == 0.0) {
        if (gamma * mu1 > 1.0) return 0.0;
        if (gamma * mu1 == 1.0) return gamma * std::exp(lc) * std::pow(t, -gamma * mu1);
        return kInfVal;
    }
    return gamma * std::exp(lc) * std::pow(x, gamma * mu1 - 1.0) * std::pow(t, gamma * mu2) /
           std::pow(std::pow(x, gamma) + std::pow(t, gamma), mu1 + mu2);
}

double gg_g1_density(double x, double t, double mu, double gamma) {
    if (x < 0.0) throw DomainError("gg_g1: x must be >= 0");
    if (x == 0.0) return mu * gamma > 1.0 ? 0.0 : kInfVal;
    const double log_z = gamma * std::log(x) - std::log(t);
    if (log_z > 14.0) return 0.0;
    const double log_pref = std::log(2.0 * gamma) + (mu * gamma - 1.0) * std::log(x) -
                            mu * std::log(t) - 2.0 * std::lgamma(mu);
    if (log_z < -690.0) {
        const double k0 = -0.5 * log_z - 0.57721566490153286;
        const double lv = log_pref + std::log(k0);
        return lv < -745.0 ? 0.0 : std::exp(std::min(lv, 700.0));
    }
    return std::exp(log_pref) * bessel_k(0.0, 2.0 * std::exp(0.5 * log_z));
}

double special_gg_density(double x, double t, double mu1, double mu2, double gamma) {
    if (x < 0.0) throw DomainError("special_gg: x must be >= 0");
    const double mn = std::min(mu1, mu2);
    const double ad = std::abs(mu2 - mu1);
    if (x == 0.0) {
        if (gamma * mn > 1.0) return 0.0;
        if (gamma * mn < 1.0) return kInfVal;
        // small-x limit through K_nu(z) ~ Gamma(nu) 2^{nu-1} z^{-nu}
        return gamma * std::exp(ad * std::numbers::ln2 + std::lgamma(ad) -
                                std::lgamma(mu1) - std::lgamma(mu2) - mn * std::log(t));
    }
    const double log_z = gamma * std::log(x) - std::log(t);
    if (log_z > 14.0) return 0.0;
    const double log_pref = std::log(2.0 * gamma) + 0.5 * (mu1 + mu2) * log_z -
                            std::log(x) - std::lgamma(mu1) - std::lgamma(mu2);
    if (log_z < -690.0) { // K_nu(w) ~ Gamma(|nu|) 2^{|nu|-1} w^{-|nu|}, nu != 0
        const double lv = log_pref + std::lgamma(ad) + (ad - 1.0) * std::numbers::ln2 -
                          ad * (0.5 * log_z + std::numbers::ln2);
        return lv < -745.0 ? 0.0 : std::exp(std::min(lv, 700.0));
    }
    return std::exp(log_pref) * bessel_k(mu2 - mu1, 2.0 * std::exp(0.5 * log_z));
}

// Defining integral of the iterated law with guide exponent g1 over a
// generalized Gamma clock with exponent g2:
//   g1 g2 x^{mu g1 - 1} / (t^mu Gamma^2(mu)) int s^{mu g2 - mu - 1}
//       exp(-x^{g1}/s - s^{g2}/t) ds
double gg_iter_density(double x, double t, double mu, double g1, double g2) {
    if (x < 0.0) throw DomainError("gg_iter: x must be >= 0");
    if (x == 0.0) return mu * g1 > 1.0 ? 0.0 : kInfVal;
    const double a = std::pow(x, g1);
    // anchor the transform at the saddle of -a/s - s^{g2}/t so the support
    // is visible to the coarse nodes for every x
    const double s_star = std::pow(a * t / g2, 1.0 / (1.0 + g2));
    QuadOptions opt{1e-300, 1e-10, 3000};
    auto inner = integrate_to_inf(
        [&](double sigma) {
            const double s = s_star * sigma;
            const double e = -a / s - std::pow(s, g2) / t;
            if (e < -745.0) return 0.0;
            return std::pow(s, mu * g2 - mu - 1.0) * std::exp(e) * s_star;
        },
        0.0, opt);
    return g1 * g2 * std::pow(x, mu * g1 - 1.0) * inner.value /
           (std::pow(t, mu) * std::exp(2.0 * std::lgamma(mu)));
}

// Guide over an inverse clock:
//   g^2 x^{mu g - 1} / (t^mu Gamma^2(mu)) int s^{-mu - g mu - 1}
//       exp(-x^g/s - 1/(s^g t)) ds
double gg_inv_iter_density(double x, double t, double mu, double gamma) {
    if (x < 0.0) throw DomainError("gg_inv_iter: x must be >= 0");
    if (x == 0.0) return mu * gamma > 1.0 ? 0.0 : kInfVal;
    const double a = std::pow(x, gamma);
    // both exponential factors cut from below; anchor at the larger scale
    const double s_scale = std::max(a, std::pow(t, -1.0 / gamma));
    QuadOptions opt{1e-300, 1e-10, 3000};
    auto inner = integrate_to_inf(
        [&](double sigma) {
            const double s = s_scale * sigma;
            const double e = -a / s - 1.0 / (std::pow(s, gamma) * t);
            if (e < -745.0) return 0.0;
            return std::pow(s, -mu - gamma * mu - 1.0) * std::exp(e) * s_scale;
        },
        0.0, opt);
    return gamma * gamma * std::pow(x, mu * gamma - 1.0) * inner.value /
           (std::pow(t, mu) * std::exp(2.0 * std::lgamma(mu)));
}

// Brownian-over-Gamma marginal on R^n. The leading constant is the
// quadrature-forced 2^{1-mu-n/2} / pi^{n/2} against (2/t)^{(2mu+n)/4} and
// 1/Gamma(mu).
double bg1_nd_density(double r, double t, double mu, int n) {
    const double nu = mu - 0.5 * n;
    if (r < 0.0) throw DomainError("bg1: radius must be >= 0");
    const double log_c = (1.0 - mu - 0.5 * n) * std::numbers::ln2 -
                         0.5 * n * std::log(kPi) - std::lgamma(mu) +
                         0.25 * (2.0 * mu + n) * std::log(2.0 / t);
    if (r == 0.0) {
        if (nu <= 0.0) return kInfVal;
        return std::exp(log_c + (nu - 1.0) * std::numbers::ln2 + std::lgamma(nu) -
                        nu * 0.5 * std::log(2.0 / t));
    }
    const double log_arg = std::log(r) + 0.5 * std::log(2.0 / t);
    if (log_arg > 7.3) return 0.0; // argument beyond ~1.5e3
    if (log_arg < -345.0) { // small-argument forms of K_nu
        const double anu = std::abs(nu);
        double log_k;
        if (anu < 1e-12)
            log_k = std::log(-log_arg + std::numbers::ln2 - 0.57721566490153286);
        else
            log_k = std::lgamma(anu) + (anu - 1.0) * std::numbers::ln2 - anu * log_arg;
        const double lv = log_c + nu * std::log(r) + log_k;
        return lv < -745.0 ? 0.0 : std::exp(std::min(lv, 700.0));
    }
    return std::exp(log_c + nu * std::log(r)) * bessel_k(nu, std::exp(log_arg));
}

double k0_fbm_density(double x, double t, double hurst) {
    const double ax = std::abs(x);
    if (ax == 0.0) return kInfVal;
    const double log_arg = std::log(ax) - hurst * std::log(t);
    if (log_arg > 7.3) return 0.0;
    const double log_th = hurst * std::log(t);
    if (log_arg < -345.0)
        return (-log_arg + std::numbers::ln2 - 0.57721566490153286) *
               std::exp(-log_th) / kPi;
    return bessel_k(0.0, std::exp(log_arg)) / (kPi * std::exp(log_th));
}

double surface_area(int n) { // of the unit sphere in R^n
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

struct LawSpec {
    const char* id;
    const char* formula;
    Support support;
    int dim;
    LawParams defaults;
};

const std::vector<LawSpec>& spec_list() {
    static const std::vector<LawSpec> specs = {
        {"gg", "|g| x^{mu g-1} e^{-x^g/t} / (t^mu Gamma(mu)); g<0 is the inverse family",
         Support::PositiveLine, 1, {{"mu", 0.7}, {"gamma", 2.0}}},
        {"ggt", "generalized Gamma with clock c = t^g (tilde convention)",
         Support::PositiveLine, 1, {{"mu", 0.7}, {"gamma", 2.0}}},
        {"gamma_subordinator", "x^{t-1} e^{-x} / Gamma(t)", Support::PositiveLine, 1, {}},
        {"gtilde_iter", "2|g| (x/t)^{g mu} K_0(2 sqrt((x/t)^g)) / (x Gamma^2(mu))",
         Support::PositiveLine, 1, {{"mu", 0.7}, {"gamma", 1.5}}},
        {"qaqa", "g x^{mu g-1} t^{mu g} Gamma(2mu) / ((x^g+t^g)^{2mu} Gamma^2(mu))",
         Support::PositiveLine, 1, {{"mu", 0.5}, {"gamma", 2.0}}},
        {"tdist0",
         "g x^{g mu1-1} t^{g mu2} Gamma(mu1+mu2) / ((x^g+t^g)^{mu1+mu2} "
         "Gamma(mu1)Gamma(mu2))",
         Support::PositiveLine, 1, {{"mu1", 0.5}, {"mu2", 1.5}, {"gamma", 2.0}}},
        {"tdist1",
         "2 t^nu Gamma((nu+1)/2) / ((x^2+t^2)^{(nu+1)/2} sqrt(pi) Gamma(nu/2)); folded "
         "Student's t at t = sqrt(nu)",
         Support::PositiveLine, 1, {{"nu", 3.0}}},
        {"gg_g1", "2 g x^{mu g-1} K_0(2 sqrt(x^g/t)) / (t^mu Gamma^2(mu))",
         Support::PositiveLine, 1, {{"mu", 0.8}, {"gamma", 1.5}}},
        {"special_gg",
         "2 g (x^g/t)^{(mu1+mu2)/2} K_{mu2-mu1}(2 sqrt(x^g/t)) / (x Gamma(mu1)Gamma(mu2))",
         Support::PositiveLine, 1, {{"mu1", 0.6}, {"mu2", 1.4}, {"gamma", 1.5}}},
        {"gg_iter", "iterated guide/clock law, defining-integral evaluator",
         Support::PositiveLine, 1, {{"mu", 0.8}, {"gamma1", 1.6}, {"gamma2", 2.2}}},
        {"g1_gg", "Gamma guide over a generalized Gamma clock (gg_iter with gamma1 = 1)",
         Support::PositiveLine, 1, {{"mu", 0.9}, {"gamma", 2.0}}},
        {"gg_inv_iter", "guide over an inverse clock, defining-integral evaluator",
         Support::PositiveLine, 1, {{"mu", 0.7}, {"gamma", 1.5}}},
        {"bg1",
         "2^{(3-2mu)/4} |x|^{mu-1/2} t^{-(2mu+1)/4} K_{mu-1/2}(|x| sqrt(2/t)) / "
         "(sqrt(pi) Gamma(mu))",
         Support::RealLine, 1, {{"mu", 1.0}}},
        {"bg1_fbm",
         "fractional-clock variant of bg1; u = s^g collapses it to bg1 for g in (0,2)",
         Support::RealLine, 1, {{"mu", 1.0}, {"gamma", 1.0}}},
        {"bg1_nd",
         "2^{1-mu-n/2} ||x||^{mu-n/2} (2/t)^{(2mu+n)/4} K_{mu-n/2}(||x|| sqrt(2/t)) / "
         "(pi^{n/2} Gamma(mu))",
         Support::RealSpace, 2, {{"mu", 1.3}, {"n", 2.0}}},
        {"k0_fbm", "K_0(|x|/t^H) / (pi t^H)", Support::RealLine, 1, {{"H", 0.7}}},
        {"bg1_2d_exp", "exp(-||x|| sqrt(2/t)) / (sqrt(2) pi sqrt(t) ||x||)",
         Support::RealSpace, 2, {}},
        {"bsq0", "y^{d/2-1} e^{-y/2t} / ((2t)^{d/2} Gamma(d/2)); squared Bessel from 0",
         Support::PositiveLine, 1, {{"delta", 3.0}}},
        {"bivar_gamma", "correlated bivariate generalized Gamma (Bessel-I form)",
         Support::PositiveQuadrant, 2, {{"mu", 1.0}, {"gamma", 1.0}, {"rho", 0.5}}},
    };
    return specs;
}

} // namespace

DensityLaw make_law(const std::string& id, const LawParams& overrides) {
    const LawSpec* spec = nullptr;
    for (const auto& s : spec_list())
        if (id == s.id) spec = &s;
    if (!spec) throw DomainError("unknown density law: " + id);

    DensityLaw law;
    law.id = spec->id;
    law.formula = spec->formula;
    law.support = spec->support;
    law.dim = spec->dim;
    law.params = spec->defaults;
    for (const auto& [k, v] : overrides) {
        if (!law.params.count(k))
            throw DomainError("law '" + id + "' has no parameter '" + k + "'");
        law.params[k] = v;
    }
    const LawParams p = law.params;
    auto origin_power = [](bool finite_at_origin) {
        return SupportBoundary{finite_at_origin, finite_at_origin
                                                     ? OriginDivergence::None
                                                     : OriginDivergence::Power};
    };

    if (id == "gg") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = origin_power(g < 0.0 || mu * g >= 1.0);
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gg_density(x[0], t, mu, g);
        };
    } else if (id == "ggt") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = origin_power(g < 0.0 || mu * g >= 1.0);
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gg_density(x[0], std::pow(t, g), mu, g);
        };
    } else if (id == "gamma_subordinator") {
        law.eval = [](const std::vector<double>& x, double t) {
            if (x[0] < 0.0) throw DomainError("gamma_subordinator: x >= 0");
            if (x[0] == 0.0) return t > 1.0 ? 0.0 : (t == 1.0 ? 1.0 : kInfVal);
            return std::exp((t - 1.0) * std::log(x[0]) - x[0] - std::lgamma(t));
        };
    } else if (id == "gtilde_iter") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = {g < 0.0 || mu * g > 1.0, g > 0.0 && mu * g <= 1.0
                                                     ? OriginDivergence::Logarithmic
                                                     : OriginDivergence::None};
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gtilde_iter_density(x[0], t, mu, g);
        };
    } else if (id == "qaqa") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = origin_power(mu * g >= 1.0);
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return qaqa_density(x[0], t, mu, g);
        };
    } else if (id == "tdist0") {
        const double mu1 = get(p, "mu1"), mu2 = get(p, "mu2"), g = get(p, "gamma");
        // origin inclusion by the g*mu1 rule, applied by analogy with special_gg
        law.boundary = origin_power(g * mu1 >= 1.0);
        law.eval = [mu1, mu2, g](const std::vector<double>& x, double t) {
            return tdist0_density(x[0], t, mu1, mu2, g);
        };
    } else if (id == "tdist1") {
        const double nu = get(p, "nu");
        law.eval = [nu](const std::vector<double>& x, double t) {
            if (x[0] < 0.0) throw DomainError("tdist1: x >= 0");
            return 2.0 * std::pow(t, nu) *
                   std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu)) /
                   (std::sqrt(kPi) * std::pow(x[0] * x[0] + t * t, 0.5 * (nu + 1.0)));
        };
    } else if (id == "gg_g1") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = {mu * g > 1.0, mu * g <= 1.0 ? OriginDivergence::Logarithmic
                                                    : OriginDivergence::None};
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gg_g1_density(x[0], t, mu, g);
        };
    } else if (id == "special_gg") {
        const double mu1 = get(p, "mu1"), mu2 = get(p, "mu2"), g = get(p, "gamma");
        law.boundary = origin_power(g * std::min(mu1, mu2) >= 1.0);
        law.eval = [mu1, mu2, g](const std::vector<double>& x, double t) {
            return special_gg_density(x[0], t, mu1, mu2, g);
        };
    } else if (id == "gg_iter") {
        const double mu = get(p, "mu"), g1 = get(p, "gamma1"), g2 = get(p, "gamma2");
        law.boundary = origin_power(mu * g1 >= 1.0);
        law.eval = [mu, g1, g2](const std::vector<double>& x, double t) {
            return gg_iter_density(x[0], t, mu, g1, g2);
        };
    } else if (id == "g1_gg") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = origin_power(mu >= 1.0);
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gg_iter_density(x[0], t, mu, 1.0, g);
        };
    } else if (id == "gg_inv_iter") {
        const double mu = get(p, "mu"), g = get(p, "gamma");
        law.boundary = origin_power(mu * g >= 1.0);
        law.eval = [mu, g](const std::vector<double>& x, double t) {
            return gg_inv_iter_density(x[0], t, mu, g);
        };
    } else if (id == "bg1" || id == "bg1_fbm") {
        const double mu = get(p, "mu");
        if (id == "bg1_fbm") {
            const double g = get(p, "gamma");
            if (!(g > 0.0 && g < 2.0)) throw DomainError("bg1_fbm: gamma in (0,2)");
        }
        law.boundary = {mu > 0.5, mu < 0.5 ? OriginDivergence::Power
                                           : (mu == 0.5 ? OriginDivergence::Logarithmic
                                                        : OriginDivergence::None)};
        law.eval = [mu](const std::vector<double>& x, double t) {
            return bg1_nd_density(std::abs(x[0]), t, mu, 1);
        };
    } else if (id == "bg1_nd") {
        const double mu = get(p, "mu");
        const int n = static_cast<int>(get(p, "n"));
        if (n < 1 || n > 3) throw DomainError("bg1_nd: n in {1,2,3}");
        law.dim = n;
        law.boundary = origin_power(mu > 0.5 * n);
        law.eval = [mu, n](const std::vector<double>& x, double t) {
            double r2 = 0.0;
            for (double xi : x) r2 += xi * xi;
            return bg1_nd_density(std::sqrt(r2), t, mu, n);
        };
    } else if (id == "k0_fbm") {
        const double hurst = get(p, "H");
        if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("k0_fbm: H in (0,1)");
        law.boundary = {false, OriginDivergence::Logarithmic};
        law.eval = [hurst](const std::vector<double>& x, double t) {
            return k0_fbm_density(x[0], t, hurst);
        };
    } else if (id == "bg1_2d_exp") {
        law.boundary = {false, OriginDivergence::Power};
        law.eval = [](const std::vector<double>& x, double t) {
            const double r = std::hypot(x[0], x[1]);
            if (r == 0.0) return kInfVal;
            return std::exp(-r * std::sqrt(2.0 / t)) /
                   (std::sqrt(2.0) * kPi * std::sqrt(t) * r);
        };
    } else if (id == "bsq0") {
        const double delta = get(p, "delta");
        if (!(delta > 0.0)) throw DomainError("bsq0: delta must be positive");
        law.boundary = origin_power(delta >= 2.0);
        law.eval = [delta](const std::vector<double>& x, double t) {
            return gg_density(x[0], 2.0 * t, 0.5 * delta, 1.0);
        };
    } else if (id == "bivar_gamma") {
        const double mu = get(p, "mu"), g = get(p, "gamma"), rho = get(p, "rho");
        law.eval = [mu, g, rho](const std::vector<double>& x, double t) {
            return bivariate_gamma_density(x[0], x[1], t, t, mu, g, rho);
        };
    }
    return law;
}

const std::vector<DensityLaw>& density_catalog() {
    static const std::vector<DensityLaw> catalog = [] {
        std::vector<DensityLaw> laws;
        for (const auto& s : spec_list()) laws.push_back(make_law(s.id));
        return laws;
    }();
    return catalog;
}

double bivariate_gamma_density(double x, double y, double t1, double t2, double mu,
                               double gamma, double rho) {
    if (x <= 0.0 || y <= 0.0) return 0.0;
    if (rho < 0.0 || rho >= 1.0) throw DomainError("bivariate: rho in [0,1) required");
    const double phi = 1.0 - rho;
    const double xg = std::pow(x, gamma);
    const double yg = std::pow(y, gamma);
    const double z = rho / (phi * phi) * xg * yg / (t1 * t2);
    const double log_pref = 2.0 * std::log(std::abs(gamma)) +
                            (gamma * mu - 1.0) * (std::log(x) + std::log(y)) -
                            xg / (phi * t1) - yg / (phi * t2) - mu * std::log(phi) -
                            mu * (std::log(t1) + std::log(t2)) - std::lgamma(mu);
    if (log_pref < -740.0) return 0.0;
    return std::exp(log_pref) * scaled_bessel_i_series(mu, z);
}

double bivariate_gamma_covariance(double mu, double gamma, double rho, double t1,
                                  double t2) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw DivergenceError("bivariate covariance: requires 0 <= rho < 1");
    if (!(mu > 0.0)) throw DomainError("bivariate covariance: mu must be positive");
    if (gamma == 0.0) throw DomainError("bivariate covariance: gamma must be nonzero");
    if (gamma > 0.0) {
        const double phi = 1.0 - rho;
        const double g = 1.0 / gamma;
        const double c = std::exp(2.0 * (std::lgamma(mu + g) - std::lgamma(mu)));
        return std::pow(phi, mu) * std::pow(phi * phi * t1 * t2, g) * c *
               hyp2f1(mu + g, mu + g, mu, rho);
    }
    const double g = -1.0 / gamma;
    const double c = std::exp(2.0 * (std::lgamma(mu - g) - std::lgamma(mu)));
    return std::pow(t1 * t2, -g) * c * hyp2f1(g, g, mu, rho);
}

double normalization_check(const DensityLaw& law, double t, const QuadOptions& opt) {
    switch (law.support) {
        case Support::PositiveLine: {
            auto res =
                integrate_exp_sinh([&](double x) { return law.eval({x}, t); }, opt);
            if (!res.converged) throw NonConvergenceError("normalization: " + law.id);
            return res.value;
        }
        case Support::RealLine: {
            auto res =
                integrate_exp_sinh([&](double x) { return law.eval({x}, t); }, opt);
            if (!res.converged) throw NonConvergenceError("normalization: " + law.id);
            return 2.0 * res.value;
        }
        case Support::RealSpace: {
            const int n = law.dim;
            auto res = integrate_exp_sinh(
                [&](double r) {
                    std::vector<double> pt(n, 0.0);
                    pt[0] = r;
                    return std::pow(r, n - 1.0) * law.eval(pt, t);
                },
                opt);
            if (!res.converged) throw NonConvergenceError("normalization: " + law.id);
            return surface_area(n) * res.value;
        }
        case Support::PositiveQuadrant: {
            QuadOptions inner_opt = opt;
            inner_opt.rel_tol = std::max(opt.rel_tol * 0.1, 1e-11);
            auto res = integrate_exp_sinh(
                [&](double x) {
                    return integrate_exp_sinh(
                               [&](double y) { return law.eval({x, y}, t); }, inner_opt)
                        .value;
                },
                opt);
            if (!res.converged) throw NonConvergenceError("normalization: " + law.id);
            return res.value;
        }
    }
    throw DomainError("normalization: unsupported support class");
}

std::complex<double> mellin_numeric(const DensityLaw& law, std::complex<double> eta,
                                    double t) {
    if (law.dim != 1) throw DomainError("mellin_numeric: one-dimensional laws only");
    const double fold = law.support == Support::RealLine ? 2.0 : 1.0;
    auto val = integrate_mellin([&](double x) { return law.eval({x}, t); }, eta,
                                {1e-13, 1e-10, 4000});
    return fold * val;
}

} // namespace ggp
