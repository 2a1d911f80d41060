// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ggp {

// One Gamma(slope*eta + offset)^power factor of a Mellin transform.
struct GammaFactor {
    double slope = 0.0;
    double offset = 0.0;
    int power = 1;
};

// Open vertical strip lo < Re eta < hi; +-inf allowed.
struct Strip {
    double lo;
    double hi;
    bool contains(double re) const { return re > lo && re < hi; }
    bool empty() const { return !(lo < hi); }
};

Strip intersect(const Strip& a, const Strip& b);

// M(eta, t) = exp(const_log + eta_scale_log * eta) * t^{t_slope*eta + t_offset}
//             * prod_i Gamma(slope_i*eta + offset_i)^{power_i}
//
// The closed family every transform in this library lives in. Values are
// immutable once built; the strip is always derived from the factor poles.
class MellinForm {
  public:
    MellinForm() : strip_{-std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()} {}

    static MellinForm unit(); // M == 1

    double const_log = 0.0;
    double eta_scale_log = 0.0; // coefficient of eta in the log-constant
    double t_slope = 0.0;
    double t_offset = 0.0;

    const std::vector<GammaFactor>& factors() const { return factors_; }
    const Strip& strip() const { return strip_; }

    // Appends a factor, folding slope==0 into the constant, and tightens
    // the strip against the factor's poles.
    void push_factor(double slope, double offset, int power);
    void clamp_strip(const Strip& s);

    std::complex<double> log_eval(std::complex<double> eta, double t) const;
    std::complex<double> eval(std::complex<double> eta, double t) const;

    nlohmann::json to_json() const;

  private:
    std::vector<GammaFactor> factors_;
    Strip strip_;
};

// Process-time clock c = alpha * t^beta of a generalized Gamma density
// Q(x; c, mu, gamma). Raw clock is alpha=1, beta=1; the tilde convention
// uses beta = gamma.
struct GGClock {
    double alpha = 1.0;
    double beta = 1.0;
};

struct GGParams {
    double mu;    // > 0
    double gamma; // != 0, sign encodes the inverse family
    GGClock clock{};
};

// E X^{eta-1} of the generalized Gamma process with the given clock.
MellinForm mellin_of_gg(const GGParams& params);

// E|C(t)|^{eta-1} = t^{eta-1} / sin(eta pi/2), encoded through the
// reflection identity as Gamma(eta/2) Gamma(1-eta/2) / pi * t^{eta-1}.
// t_power_unit drops the clock (the fixed-time random-variable form).
MellinForm mellin_of_folded_cauchy(bool t_power_unit = false);

// E|N(0, t^{2H})|^{eta-1} = 2^{(eta-1)/2} Gamma(eta/2)/sqrt(pi) * t^{H(eta-1)}.
MellinForm mellin_of_folded_gaussian(double hurst);

// Substitute t -> alpha * t^beta.
MellinForm apply_clock(const MellinForm& f, double alpha, double beta);

// Mellin convolution: product of independent positive variables.
MellinForm product(const MellinForm& f, const MellinForm& g);

// Composition X(T(t)): outer's t-power exponent p(eta) is substituted as
// the inner transform's evaluation point eta' = p(eta) + 1.
MellinForm subordinate(const MellinForm& outer, const MellinForm& inner);

// Moments of X^beta: eta' = beta (eta - 1) + 1.
MellinForm power_map(const MellinForm& f, double beta);

enum class ScaleMode { Time, Space };
MellinForm scale(const MellinForm& f, double a, ScaleMode mode);

struct EqualityResult {
    bool equal = false;
    double max_rel_dev = 0.0;
    Strip strip{};
    // per-abscissa worst deviation over the imaginary offsets and times
    std::vector<std::pair<double, double>> abscissa_dev;
};

// Deterministic grid comparison: 5 real abscissae across the intersected
// strip x imaginary parts {0, +-0.5, +-1.5, +-3} x t in {0.5, 1, 2}.
EqualityResult equal_on_strip(const MellinForm& f, const MellinForm& g,
                              double tol = 1e-9);

// E X^k = M(k+1) when k+1 lies inside the strip; nullopt means infinite.
std::optional<double> moment(const MellinForm& f, unsigned k, double t);

} // namespace ggp
