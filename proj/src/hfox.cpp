// SPDX-License-Identifier: Apache-2.0
#include "ggp/hfox.hpp"

#include <cmath>
#include <numbers>

#include "ggp/errors.hpp"
#include "ggp/specfun.hpp"

namespace ggp {
namespace {

constexpr double kPi = std::numbers::pi;

// 64-point Gauss-Legendre nodes/weights on [-1,1], generated once by
// Newton iteration on the Legendre recurrence.
struct GL64 {
    double x[64];
    double w[64];
    GL64() {
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p0 / pp;
                if (std::abs(z - z1) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

const GL64& gl64() {
    static const GL64 table;
    return table;
}

// log of the contour kernel at eta
std::complex<double> log_kernel(const HParams& h, std::complex<double> eta) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < h.m; ++j)
        acc += log_gamma(h.lower[j].a - eta * h.lower[j].alpha);
    for (int j = h.m; j < h.q; ++j)
        acc -= log_gamma(1.0 - h.lower[j].a + eta * h.lower[j].alpha);
    for (int i = 0; i < h.n; ++i)
        acc += log_gamma(1.0 - h.upper[i].a + eta * h.upper[i].alpha);
    for (int i = h.n; i < h.p; ++i)
        acc -= log_gamma(h.upper[i].a - eta * h.upper[i].alpha);
    return acc;
}

// one Gauss-Legendre panel of the real part of K(theta + i tau) x^{theta+i tau}
double panel(const HParams& h, double theta, double lx, double tau0, double tau1) {
    const auto& g = gl64();
    const double c = 0.5 * (tau0 + tau1);
    const double hw = 0.5 * (tau1 - tau0);
    double acc = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double tau = c + hw * g.x[k];
        const std::complex<double> eta(theta, tau);
        const std::complex<double> v = std::exp(log_kernel(h, eta) + eta * lx);
        acc += g.w[k] * v.real();
    }
    return acc * hw;
}

} // namespace

void HParams::validate() const {
    if (static_cast<int>(upper.size()) != p || static_cast<int>(lower.size()) != q)
        throw DomainError("hfox: row lengths must equal p and q");
    if (m > q || n > p || m < 0 || n < 0)
        throw DomainError("hfox: requires 0 <= m <= q and 0 <= n <= p");
    for (const auto& t : upper)
        if (t.alpha < 0.0) throw DomainError("hfox: alpha_i must be >= 0");
    for (const auto& t : lower)
        if (t.alpha < 0.0) throw DomainError("hfox: beta_j must be >= 0");
}

double HParams::decay() const {
    double d = 0.0;
    for (int j = 0; j < m; ++j) d += lower[j].alpha;
    for (int i = 0; i < n; ++i) d += upper[i].alpha;
    for (int j = m; j < q; ++j) d -= lower[j].alpha;
    for (int i = n; i < p; ++i) d -= upper[i].alpha;
    return d;
}

std::complex<double> h_mellin(const HParams& h, std::complex<double> eta) {
    h.validate();
    // the kernel mirrored: K(-eta)
    return std::exp(log_kernel(h, -eta));
}

HEvalResult h_eval(const HParams& h, double x, double tol) {
    h.validate();
    if (!(x > 0.0)) throw DomainError("h_eval: requires x > 0");
    if (h.m < 1) throw DomainError("h_eval: only m >= 1 configurations supported");
    for (int i = 0; i < h.n; ++i)
        if (h.upper[i].alpha != 0.0)
            throw DomainError("h_eval: upper entries must have alpha = 0 "
                              "(class used by this library)");
    if (h.decay() <= 0.0)
        throw NonConvergenceError("h_eval: contour integrand does not decay");

    // contour strictly left of the Gamma(b_j - eta beta_j) pole family
    double right_pole = std::numeric_limits<double>::infinity();
    for (int j = 0; j < h.m; ++j)
        if (h.lower[j].alpha > 0.0)
            right_pole = std::min(right_pole, h.lower[j].a / h.lower[j].alpha);
    if (std::isinf(right_pole))
        throw DomainError("h_eval: no weighted numerator entries");
    // Saddle-point abscissa: minimize the integrand magnitude at tau = 0 over
    // theta < right_pole (the log-magnitude is convex there for this class).
    // A fixed abscissa loses all relative accuracy when the result is tiny
    // (large x), because the O(1) oscillatory integrand must cancel to it.
    const double theta = [&] {
        auto log_mag = [&](double th) {
            return log_kernel(h, {th, 0.0}).real() + th * std::log(x);
        };
        double lo = right_pole - 200.0;
        double hi = right_pole - 1e-3;
        const double gr = 0.6180339887498949;
        double a = hi - (hi - lo) * gr;
        double b = lo + (hi - lo) * gr;
        double fa = log_mag(a);
        double fb = log_mag(b);
        for (int it = 0; it < 120 && hi - lo > 1e-10; ++it) {
            if (fa < fb) {
                hi = b;
                b = a;
                fb = fa;
                a = hi - (hi - lo) * gr;
                fa = log_mag(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + (hi - lo) * gr;
                fb = log_mag(b);
            }
        }
        return 0.5 * (lo + hi);
    }();
    for (int j = 0; j < h.m; ++j)
        if (std::abs(h.lower[j].a - theta * h.lower[j].alpha -
                     std::round(h.lower[j].a - theta * h.lower[j].alpha)) < 1e-12 &&
            h.lower[j].a - theta * h.lower[j].alpha <= 0.0)
            throw DomainError("h_eval: pole on contour");

    const double lx = std::log(x);
    // symmetric integrand: integrate tau in [0, T], double the result
    double acc = 0.0;
    double t_cur = 0.0;
    double t_target = 20.0;
    double last_block = 0.0;
    int panels = 0;
    while (true) {
        double block = 0.0;
        for (double lo = t_cur; lo < t_target - 0.5 * 1e-9; lo += 1.0) {
            block += panel(h, theta, lx, lo, std::min(lo + 1.0, t_target));
            ++panels;
        }
        acc += block;
        last_block = std::abs(block);
        t_cur = t_target;
        if (last_block <= tol * std::max(std::abs(acc), 1e-300) && t_cur > 20.0) break;
        if (t_cur >= 400.0) {
            if (last_block > tol * std::max(std::abs(acc), 1e-300))
                throw NonConvergenceError("h_eval: contour cap T=400 reached");
            break;
        }
        t_target = std::min(2.0 * t_cur, 400.0);
    }
    HEvalResult out;
    out.value = acc / kPi; // (1/2pi) * 2 (symmetry)
    out.contour = {theta, t_cur, panels};
    out.est_error = last_block / kPi;
    return out;
}

HParams h_rescale_power(const HParams& h, double c) {
    if (!(c > 0.0)) throw DomainError("h_rescale_power: requires c > 0");
    HParams out = h;
    for (auto& t : out.upper) t.alpha *= c;
    for (auto& t : out.lower) t.alpha *= c;
    return out;
}

HParams h_rescale_shift(const HParams& h, double c) {
    HParams out = h;
    for (auto& t : out.upper) t.a += c * t.alpha;
    for (auto& t : out.lower) t.a += c * t.alpha;
    return out;
}

} // namespace ggp
