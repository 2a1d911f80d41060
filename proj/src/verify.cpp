// SPDX-License-Identifier: Apache-2.0
#include "ggp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ggp/errors.hpp"

namespace ggp {
namespace {

double ks_p_value(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::vector<double> folded(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
    return out;
}

} // namespace

nlohmann::json VerificationReport::to_json() const {
    return {{"case", case_id},   {"method", method}, {"statistic", statistic},
            {"threshold", threshold}, {"passed", passed}, {"meta", meta}};
}

KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty batch");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    KsResult r;
    r.statistic = d;
    r.p_value = ks_p_value(d * std::sqrt(na * nb / (na + nb)));
    return r;
}

// ----------------------------------------------------------------- identity

VerificationReport check_identity(const IdentityCase& c, double t, std::size_t n,
                                  std::uint64_t seed) {
    VerificationReport rep;
    rep.case_id = c.id;
    rep.method = "ks";
    rep.meta = {{"t", t}, {"n", n}, {"seed", seed}};

    bool mellin_ok = true;
    if (c.mellin_provable) {
        auto lf = to_mellin(*c.lhs);
        auto rf = to_mellin(*c.rhs);
        if (!lf || !rf)
            throw ExprError("check_identity: case marked provable but not representable");
        auto eq = equal_on_strip(*lf, *rf);
        mellin_ok = c.negative ? eq.max_rel_dev > 1e-3 : eq.equal;
        rep.meta["mellin_max_rel_dev"] = eq.max_rel_dev;
    }

    SampleBatch la = sample_process(c.lhs, t, n, seed);
    SampleBatch rb = sample_process(c.rhs, t, n, mix64(seed, 0x5eedULL));
    const KsResult ks = c.fold ? ks_two_sample(folded(la.values), folded(rb.values))
                               : ks_two_sample(la.values, rb.values);
    rep.meta["ks_statistic"] = ks.statistic;
    rep.statistic = ks.p_value;
    if (c.negative) {
        rep.threshold = 1e-4;
        rep.passed = mellin_ok && ks.p_value < 1e-4;
    } else {
        rep.threshold = 0.01;
        rep.passed = mellin_ok && ks.p_value > 0.01;
    }
    return rep;
}

// ---------------------------------------------------------------------- PDE

namespace {

// evaluate the case's density on the tensor grid (row-major, time fastest)
std::vector<double> fill_grid(const PdeCase& c, const std::vector<double>& xs,
                              const std::vector<double>& ys,
                              const std::vector<double>& ts) {
    std::vector<double> q;
    const int nt = static_cast<int>(ts.size());
    if (c.dim == 1) {
        q.resize(xs.size() * ts.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (int j = 0; j < nt; ++j)
                q[i * nt + j] = c.law.eval({xs[i]}, c.time_dilation * ts[j]);
    } else {
        q.resize(xs.size() * ys.size() * ts.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t k = 0; k < ys.size(); ++k)
                for (int j = 0; j < nt; ++j)
                    q[(i * ys.size() + k) * nt + j] =
                        c.law.eval({xs[i], ys[k]}, c.time_dilation * ts[j]);
    }
    return q;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
    return v;
}

double max_residual(const PdeCase& c, int nx, int nt) {
    const auto xs = linspace(c.x0, c.x1, nx);
    const auto ts = linspace(c.t0, c.t1, nt);
    const auto ys = c.dim == 2 ? linspace(c.y0, c.y1, nx) : std::vector<double>{};
    const auto q = fill_grid(c, xs, ys, ts);
    return c.assemble(q, xs, ys, ts, nx, nt);
}

} // namespace

VerificationReport pde_residual(const PdeCase& c) {
    if (c.singular_at_origin) {
        const bool touches = c.dim == 1 ? (c.x0 <= 0.0 && c.x1 >= 0.0)
                                        : (c.x0 <= 0.0 && c.x1 >= 0.0 && c.y0 <= 0.0 &&
                                           c.y1 >= 0.0);
        if (touches)
            throw GridSingularityError("pde_residual: grid touches the singular origin");
    }
    const double r1 = max_residual(c, c.nx, c.nt);
    const double r2 = max_residual(c, 2 * c.nx - 1, 2 * c.nt - 1);
    VerificationReport rep;
    rep.case_id = c.id;
    rep.method = "residual";
    rep.statistic = std::log2(r1 / r2);
    rep.threshold = 1.7;
    rep.passed = rep.statistic >= 1.7 && r2 < r1;
    rep.meta = {{"residual_coarse", r1},
                {"residual_fine", r2},
                {"grid", {{"x0", c.x0}, {"x1", c.x1}, {"nx", c.nx}, {"t0", c.t0},
                          {"t1", c.t1}, {"nt", c.nt}, {"dim", c.dim}}}};
    return rep;
}

// --------------------------------------------------------------- covariance

VerificationReport covariance_check(CovarianceKind kind, const CovarianceParams& p,
                                    double t1, double t2, std::size_t n,
                                    std::uint64_t seed) {
    VerificationReport rep;
    if (kind == CovarianceKind::GammaRho) {
        rep.case_id = "cov_gamma_rho";
        rep.method = "quadrature";
        const double closed = bivariate_gamma_covariance(p.mu, p.gamma, p.rho, t1, t2);
        QuadOptions opt{1e-12, 1e-8, 4000};
        QuadOptions inner_opt{1e-13, 1e-9, 4000};
        auto quad = integrate_to_inf(
            [&](double x) {
                return x * integrate_to_inf(
                               [&](double y) {
                                   return y * bivariate_gamma_density(x, y, t1, t2, p.mu,
                                                                      p.gamma, p.rho);
                               },
                               0.0, inner_opt)
                               .value;
            },
            0.0, opt);
        rep.statistic = std::abs(quad.value - closed) / std::abs(closed);
        rep.threshold = 1e-3;
        rep.passed = quad.converged && rep.statistic < rep.threshold;
        rep.meta = {{"mu", p.mu}, {"gamma", p.gamma}, {"rho", p.rho},
                    {"t1", t1},   {"t2", t2},         {"closed_form", closed},
                    {"quadrature", quad.value}};
        return rep;
    }
    rep.case_id = "cov_fbm_product";
    rep.method = "moment";
    const double v1 = std::pow(t1, 2.0 * p.hurst);
    const double v2 = std::pow(t2, 2.0 * p.hurst);
    const double cov =
        0.5 * (v1 + v2 - std::pow(std::abs(t1 - t2), 2.0 * p.hurst));
    const double expected = cov * cov;
    PairBatch pa = sample_gaussian_pair(p.hurst, t1, t2, n, seed);
    PairBatch pb = sample_gaussian_pair(p.hurst, t1, t2, n, mix64(seed, 77));
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = pa.pairs[i][0] * pa.pairs[i][1] * pb.pairs[i][0] * pb.pairs[i][1];
        const double delta = v - mean;
        mean += delta / (i + 1.0);
        m2 += delta * (v - mean);
    }
    const double se = std::sqrt(m2 / (n - 1.0) / n);
    rep.statistic = std::abs(mean - expected) / se;
    rep.threshold = 4.0;
    rep.passed = rep.statistic < 4.0;
    rep.meta = {{"hurst", p.hurst}, {"t1", t1},       {"t2", t2},
                {"expected", expected}, {"mc_mean", mean}, {"mc_se", se},
                {"n", n},           {"seed", seed}};
    return rep;
}

// -------------------------------------------------------------------- suite

namespace {

template <typename Task>
std::vector<VerificationReport> run_pool(const std::vector<Task>& tasks, int jobs) {
    std::vector<VerificationReport> out(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            out[i] = tasks[i]();
        }
    };
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    return out;
}

} // namespace

std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const RunConfig& cfg) {
    using Task = std::function<VerificationReport()>;
    std::vector<Task> tasks;
    const bool all = suite == "all";

    auto want_case = [&](const std::string& id) {
        return !cfg.only_case || *cfg.only_case == id;
    };

    if (all || suite == "mellin") {
        for (const auto& c : identity_registry()) {
            if (!c.mellin_provable || !want_case(c.id)) continue;
            tasks.push_back([&c] {
                VerificationReport rep;
                rep.case_id = c.id;
                rep.method = "mellin";
                auto eq = equal_on_strip(*to_mellin(*c.lhs), *to_mellin(*c.rhs));
                rep.statistic = eq.max_rel_dev;
                if (c.negative) {
                    rep.threshold = 1e-3;
                    rep.passed = eq.max_rel_dev > 1e-3;
                } else {
                    rep.threshold = 1e-9;
                    rep.passed = eq.equal;
                }
                rep.meta = {{"strip_lo", std::isinf(eq.strip.lo) ? nlohmann::json()
                                                                 : nlohmann::json(eq.strip.lo)},
                            {"strip_hi", std::isinf(eq.strip.hi) ? nlohmann::json()
                                                                 : nlohmann::json(eq.strip.hi)},
                            {"negative_control", c.negative}};
                return rep;
            });
        }
    }
    if (all || suite == "mc") {
        for (const auto& c : identity_registry()) {
            if (!want_case(c.id)) continue;
            tasks.push_back([&c, &cfg] {
                VerificationReport rep;
                rep.case_id = c.id;
                rep.method = "ks";
                std::size_t passes = 0;
                double min_p = 1.0, max_p = 0.0;
                for (std::uint64_t seed : cfg.seeds) {
                    SampleBatch a = sample_process(c.lhs, c.t, cfg.samples, seed);
                    SampleBatch b =
                        sample_process(c.rhs, c.t, cfg.samples, mix64(seed, 0x5eedULL));
                    const KsResult ks =
                        c.fold ? ks_two_sample(folded(a.values), folded(b.values))
                               : ks_two_sample(a.values, b.values);
                    min_p = std::min(min_p, ks.p_value);
                    max_p = std::max(max_p, ks.p_value);
                    if (c.negative ? ks.p_value < 1e-4 : ks.p_value > cfg.alpha) ++passes;
                }
                const std::size_t need =
                    c.negative ? cfg.seeds.size()
                               : static_cast<std::size_t>(
                                     std::ceil(0.9 * cfg.seeds.size()));
                rep.statistic = static_cast<double>(passes) / cfg.seeds.size();
                rep.threshold = static_cast<double>(need) / cfg.seeds.size();
                rep.passed = passes >= need;
                rep.meta = {{"t", c.t},       {"n", cfg.samples},
                            {"seeds", cfg.seeds.size()}, {"min_p", min_p},
                            {"max_p", max_p}, {"negative_control", c.negative}};
                return rep;
            });
        }
    }
    if (all || suite == "pde") {
        for (const auto& c : pde_registry()) {
            if (!want_case(c.id)) continue;
            tasks.push_back([&c] { return pde_residual(c); });
        }
    }
    if (all || suite == "cov") {
        if (want_case("cov_gamma_rho")) {
            for (double mu : {1.0, 2.0})
                for (double rho : {0.2, 0.6})
                    tasks.push_back([mu, rho] {
                        return covariance_check(CovarianceKind::GammaRho,
                                                {mu, 1.0, rho, 0.5}, 1.0, 1.0, 0, 0);
                    });
        }
        if (want_case("cov_fbm_product")) {
            tasks.push_back([&cfg] {
                return covariance_check(CovarianceKind::FbmProduct, {0, 0, 0, 0.4}, 1.0,
                                        2.0, 1000000, cfg.seeds.front());
            });
            tasks.push_back([&cfg] {
                return covariance_check(CovarianceKind::FbmProduct, {0, 0, 0, 1.0}, 1.5,
                                        2.0, 1000000, cfg.seeds.front());
            });
        }
    }
    return run_pool(tasks, cfg.jobs);
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        arr.push_back(r.to_json());
        if (r.passed) ++passed;
    }
    return {{"reports", arr},
            {"summary",
             {{"total", reports.size()},
              {"passed", passed},
              {"failed", reports.size() - passed}}}};
}

const IdentityCase& find_identity(const std::string& id) {
    for (const auto& c : identity_registry())
        if (c.id == id) return c;
    throw DomainError("unknown identity case: " + id);
}

const PdeCase& find_pde(const std::string& id) {
    for (const auto& c : pde_registry())
        if (c.id == id) return c;
    throw DomainError("unknown pde case: " + id);
}

} // namespace ggp
