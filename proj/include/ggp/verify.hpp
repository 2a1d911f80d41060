// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggp/densities.hpp"
#include "ggp/process.hpp"

namespace ggp {

struct VerificationReport {
    std::string case_id;
    std::string method; // mellin | ks | moment | residual | quadrature
    double statistic = 0.0;
    double threshold = 0.0;
    bool passed = false;
    nlohmann::json meta;

    nlohmann::json to_json() const;
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sided two-sample Kolmogorov-Smirnov with the asymptotic p-value.
KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct IdentityCase {
    std::string id;
    ExprPtr lhs;
    ExprPtr rhs;
    bool mellin_provable = false;
    bool negative = false; // a control expected to be rejected
    bool fold = false;     // compare |samples|
    double t = 1.0;
    std::string note;
};

const std::vector<IdentityCase>& identity_registry();
const IdentityCase& find_identity(const std::string& id);

// Symbolic proof (when representable) plus a two-sample KS run at one seed.
// Negative controls pass when both checks reject.
VerificationReport check_identity(const IdentityCase& c, double t, std::size_t n,
                                  std::uint64_t seed);

struct PdeCase {
    std::string id;
    std::string note;
    int dim = 1;
    double x0, x1, y0 = 0.0, y1 = 0.0, t0, t1;
    int nx, nt;
    bool singular_at_origin = false;
    DensityLaw law;
    double time_dilation = 1.0; // density evaluated at time_dilation * t
    // max |residual| of the governing equation from grid values; implemented
    // per case with second-order central differences in x and t
    std::function<double(const std::vector<double>& q, const std::vector<double>& xs,
                         const std::vector<double>& ys, const std::vector<double>& ts,
                         int nx, int nt)>
        assemble;
};

const std::vector<PdeCase>& pde_registry();
const PdeCase& find_pde(const std::string& id);

// Max |residual| at grid spacing h and h/2 plus observed order log2(r);
// passes at order >= 1.7 with a decreasing residual.
VerificationReport pde_residual(const PdeCase& c);

enum class CovarianceKind { GammaRho, FbmProduct };

struct CovarianceParams {
    double mu = 1.0;
    double gamma = 1.0;
    double rho = 0.0;
    double hurst = 0.5; // pair Hurst index for the product check
};

VerificationReport covariance_check(CovarianceKind kind, const CovarianceParams& p,
                                    double t1, double t2, std::size_t n,
                                    std::uint64_t seed);

struct RunConfig {
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t samples = 100000;
    double alpha = 0.01;
    int jobs = 1;
    std::optional<std::string> only_case;
};

// suites: "mellin", "mc", "pde", "cov", "all"
std::vector<VerificationReport> run_suite(const std::string& suite, const RunConfig& cfg);

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);

} // namespace ggp
