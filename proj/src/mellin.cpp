// SPDX-License-Identifier: Apache-2.0
#include "ggp/mellin.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ggp/errors.hpp"
#include "ggp/specfun.hpp"

namespace ggp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json bound_to_json(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

// Map an affine substitution eta' = a*eta + b back onto the eta strip that
// keeps eta' inside `inner`.
Strip preimage(const Strip& inner, double a, double b) {
    if (a == 0.0) {
        if (inner.contains(b)) return {-kInf, kInf};
        return {0.0, 0.0}; // empty
    }
    double lo = (inner.lo - b) / a;
    double hi = (inner.hi - b) / a;
    if (a < 0.0) std::swap(lo, hi);
    if (std::isnan(lo)) lo = -kInf; // inf arithmetic artifacts
    if (std::isnan(hi)) hi = kInf;
    return {lo, hi};
}

} // namespace

Strip intersect(const Strip& a, const Strip& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

MellinForm MellinForm::unit() { return MellinForm{}; }

void MellinForm::push_factor(double slope, double offset, int power) {
    if (slope == 0.0) {
        const std::complex<double> lg = log_gamma({offset, 0.0});
        const_log += power * lg.real();
        return;
    }
    factors_.push_back({slope, offset, power});
    if (power > 0) {
        // poles of Gamma(slope*eta + offset) at slope*eta + offset = -k
        if (slope > 0.0)
            strip_.lo = std::max(strip_.lo, -offset / slope);
        else
            strip_.hi = std::min(strip_.hi, -offset / slope);
    }
}

void MellinForm::clamp_strip(const Strip& s) {
    strip_ = intersect(strip_, s);
    if (strip_.empty()) throw EmptyStripError("MellinForm: empty validity strip");
}

std::complex<double> MellinForm::log_eval(std::complex<double> eta, double t) const {
    std::complex<double> acc(const_log, 0.0);
    acc += eta_scale_log * eta;
    acc += (t_slope * eta + t_offset) * std::log(t);
    for (const auto& f : factors_)
        acc += static_cast<double>(f.power) * log_gamma(f.slope * eta + f.offset);
    return acc;
}

std::complex<double> MellinForm::eval(std::complex<double> eta, double t) const {
    return std::exp(log_eval(eta, t));
}

nlohmann::json MellinForm::to_json() const {
    nlohmann::json fac = nlohmann::json::array();
    for (const auto& f : factors_)
        fac.push_back({{"slope", f.slope}, {"offset", f.offset}, {"power", f.power}});
    return {{"const_log", const_log},
            {"eta_scale_log", eta_scale_log},
            {"t_slope", t_slope},
            {"t_offset", t_offset},
            {"factors", fac},
            {"strip", {{"lo", bound_to_json(strip_.lo)}, {"hi", bound_to_json(strip_.hi)}}}};
}

MellinForm mellin_of_gg(const GGParams& p) {
    if (p.mu <= 0.0) throw DomainError("mellin_of_gg: mu must be positive");
    if (p.gamma == 0.0) throw DomainError("mellin_of_gg: gamma must be nonzero");
    // E X^{eta-1} = Gamma((eta-1)/gamma + mu)/Gamma(mu) * c^{(eta-1)/gamma},
    // valid for both signs of gamma (the inverse family is the same formula).
    MellinForm f;
    f.const_log = -std::lgamma(p.mu);
    f.push_factor(1.0 / p.gamma, p.mu - 1.0 / p.gamma, 1);
    f.t_slope = 1.0 / p.gamma;
    f.t_offset = -1.0 / p.gamma;
    return apply_clock(f, p.clock.alpha, p.clock.beta);
}

MellinForm mellin_of_folded_cauchy(bool t_power_unit) {
    MellinForm f;
    f.const_log = -std::log(std::numbers::pi);
    f.push_factor(0.5, 0.0, 1);
    f.push_factor(-0.5, 1.0, 1);
    if (!t_power_unit) {
        f.t_slope = 1.0;
        f.t_offset = -1.0;
    }
    return f;
}

MellinForm mellin_of_folded_gaussian(double hurst) {
    MellinForm f;
    f.const_log = -0.5 * std::log(std::numbers::pi) - 0.5 * std::numbers::ln2;
    f.eta_scale_log = 0.5 * std::numbers::ln2;
    f.push_factor(0.5, 0.0, 1);
    f.t_slope = hurst;
    f.t_offset = -hurst;
    return f;
}

MellinForm apply_clock(const MellinForm& f, double alpha, double beta) {
    if (alpha <= 0.0) throw DomainError("apply_clock: alpha must be positive");
    MellinForm g = f;
    const double la = std::log(alpha);
    g.eta_scale_log += f.t_slope * la;
    g.const_log += f.t_offset * la;
    g.t_slope = beta * f.t_slope;
    g.t_offset = beta * f.t_offset;
    return g;
}

MellinForm product(const MellinForm& f, const MellinForm& g) {
    MellinForm r = f;
    r.const_log += g.const_log;
    r.eta_scale_log += g.eta_scale_log;
    r.t_slope += g.t_slope;
    r.t_offset += g.t_offset;
    for (const auto& fac : g.factors()) r.push_factor(fac.slope, fac.offset, fac.power);
    r.clamp_strip(g.strip());
    return r;
}

MellinForm subordinate(const MellinForm& outer, const MellinForm& inner) {
    // eta' = p(eta) + 1 with p(eta) = t_slope*eta + t_offset of the outer form
    const double a = outer.t_slope;
    const double b = outer.t_offset + 1.0;
    MellinForm r;
    r.const_log = outer.const_log;
    r.eta_scale_log = outer.eta_scale_log;
    for (const auto& fac : outer.factors()) r.push_factor(fac.slope, fac.offset, fac.power);
    r.clamp_strip(outer.strip());
    // inner, evaluated symbolically at eta'
    r.const_log += inner.const_log + inner.eta_scale_log * b;
    r.eta_scale_log += inner.eta_scale_log * a;
    r.t_slope = inner.t_slope * a;
    r.t_offset = inner.t_slope * b + inner.t_offset;
    for (const auto& fac : inner.factors())
        r.push_factor(fac.slope * a, fac.slope * b + fac.offset, fac.power);
    r.clamp_strip(preimage(inner.strip(), a, b));
    return r;
}

MellinForm power_map(const MellinForm& f, double beta) {
    if (beta == 0.0) throw DomainError("power_map: beta must be nonzero");
    const double a = beta;
    const double b = 1.0 - beta;
    MellinForm r;
    r.const_log = f.const_log + f.eta_scale_log * b;
    r.eta_scale_log = f.eta_scale_log * a;
    r.t_slope = f.t_slope * a;
    r.t_offset = f.t_slope * b + f.t_offset;
    for (const auto& fac : f.factors())
        r.push_factor(fac.slope * a, fac.slope * b + fac.offset, fac.power);
    r.clamp_strip(preimage(f.strip(), a, b));
    return r;
}

MellinForm scale(const MellinForm& f, double a, ScaleMode mode) {
    if (a <= 0.0) throw DomainError("scale: a must be positive");
    if (mode == ScaleMode::Time) return apply_clock(f, a, 1.0);
    MellinForm g = f; // multiply by a^{eta-1}
    g.eta_scale_log += std::log(a);
    g.const_log -= std::log(a);
    return g;
}

EqualityResult equal_on_strip(const MellinForm& f, const MellinForm& g, double tol) {
    const Strip s = intersect(f.strip(), g.strip());
    if (s.empty()) throw EmptyStripError("equal_on_strip: strips do not intersect");
    // 5 deterministic real abscissae; infinite ends use a width-3 window.
    double lo = s.lo, hi = s.hi;
    if (std::isinf(lo) && std::isinf(hi)) {
        lo = -0.5;
        hi = 2.5;
    } else if (std::isinf(lo)) {
        lo = hi - 3.0;
    } else if (std::isinf(hi)) {
        hi = lo + 3.0;
    }
    static const double kImag[7] = {0.0, 0.5, -0.5, 1.5, -1.5, 3.0, -3.0};
    static const double kTimes[3] = {0.5, 1.0, 2.0};
    EqualityResult out;
    out.strip = s;
    for (int k = 1; k <= 5; ++k) {
        const double theta = lo + (hi - lo) * k / 6.0;
        double theta_dev = 0.0;
        for (double im : kImag) {
            const std::complex<double> eta(theta, im);
            for (double t : kTimes) {
                const std::complex<double> diff = f.log_eval(eta, t) - g.log_eval(eta, t);
                const double dev = std::abs(std::exp(diff) - 1.0);
                theta_dev = std::max(theta_dev, dev);
            }
        }
        out.abscissa_dev.emplace_back(theta, theta_dev);
        out.max_rel_dev = std::max(out.max_rel_dev, theta_dev);
    }
    out.equal = out.max_rel_dev < tol;
    return out;
}

std::optional<double> moment(const MellinForm& f, unsigned k, double t) {
    const double eta = k + 1.0;
    if (!f.strip().contains(eta)) return std::nullopt;
    return f.eval({eta, 0.0}, t).real();
}

} // namespace ggp
