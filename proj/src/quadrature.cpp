// SPDX-License-Identifier: Apache-2.0
#include "ggp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ggp {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (positive half; node 0 included).
// Values from the QUADPACK dqk15 tables.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    result_kronrod *= h;
    result_gauss *= h;
    return {result_kronrod, std::abs(result_kronrod - result_gauss)};
}

struct Interval {
    double a, b, value, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Interval> heap;
    PanelResult first = gk15(f, a, b);
    out.evaluations = 15;
    heap.push({a, b, first.value, first.err});
    double total = first.value;
    double total_err = first.err;
    int n_intervals = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
           n_intervals < opt.max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) { // interval width at rounding limit
            heap.push(worst);
            break;
        }
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push({worst.a, mid, left.value, left.err});
        heap.push({mid, worst.b, right.value, right.err});
        ++n_intervals;
    }
    out.value = total;
    out.abs_err = total_err;
    out.converged =
        total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) * 1.01 + 1e-300;
    return out;
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt) {
    auto g = [&](double u) {
        const double w = 1.0 - u;
        if (w < 1e-300) return 0.0;
        const double x = a + u / w;
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return v / (w * w);
    };
    return integrate(g, 0.0, 1.0, opt);
}

namespace {

// Trapezoidal exp-sinh rule with level doubling. The integrand is sampled at
// x = exp(c sinh(kh)); contributions decay doubly exponentially once the
// transformed variable leaves the support, so each level adds few points.
template <typename Value, typename F>
Value exp_sinh_run(F&& f, const QuadOptions& opt, bool& converged) {
    constexpr double kLambda = 1.5707963267948966; // pi/2
    const double u_max = std::asinh(700.0 / kLambda);
    auto term = [&](double u) -> Value {
        const double s = kLambda * std::sinh(u);
        const double x = std::exp(s);
        return f(x) * (kLambda * std::cosh(u) * x);
    };
    // sum of the side terms at u = +-kh; odd multiples only on refinement
    auto row = [&](double h, bool odd_only) -> Value {
        Value acc{};
        const int step = odd_only ? 2 : 1;
        for (int dir : {+1, -1}) {
            int tiny_run = 0;
            for (int k = 1;; k += step) {
                const double u = dir * k * h;
                if (std::abs(u) > u_max) break;
                const Value v = term(u);
                if (!std::isfinite(std::abs(v))) break;
                acc += v;
                if (std::abs(v) < 1e-18 * (std::abs(acc) + 1e-300)) {
                    if (++tiny_run >= 3) break;
                } else {
                    tiny_run = 0;
                }
            }
        }
        return acc;
    };
    double h = 0.5;
    Value total = term(0.0) + row(h, false);
    Value estimate = total * h;
    converged = false;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        total += row(h, true);
        const Value next = total * h;
        const double change = std::abs(next - estimate);
        estimate = next;
        if (level > 0 &&
            change <= std::max(opt.abs_tol, opt.rel_tol * std::abs(estimate))) {
            converged = true;
            break;
        }
    }
    return estimate;
}

} // namespace

QuadResult integrate_exp_sinh(const std::function<double(double)>& f,
                              const QuadOptions& opt) {
    QuadResult out;
    out.value = exp_sinh_run<double>([&](double x) { return f(x); }, opt, out.converged);
    return out;
}

std::complex<double> integrate_mellin(const std::function<double(double)>& f,
                                      std::complex<double> eta,
                                      const QuadOptions& opt) {
    bool converged = false;
    return exp_sinh_run<std::complex<double>>(
        [&](double x) -> std::complex<double> {
            const double fx = f(x);
            if (fx == 0.0) return {0.0, 0.0};
            return std::exp((eta - 1.0) * std::log(x)) * fx;
        },
        opt, converged);
}

} // namespace ggp
