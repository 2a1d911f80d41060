// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: density catalog access, process sampling, H-function
// evaluation, Mellin identity proofs, and the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggp/densities.hpp"
#include "ggp/errors.hpp"
#include "ggp/hfox.hpp"
#include "ggp/process.hpp"
#include "ggp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw ggp::IoError("cannot open for writing: " + path);
    os << text;
    if (!os) throw ggp::IoError("write failed: " + path);
}

std::vector<ggp::HTerm> parse_terms(const std::string& spec) {
    std::vector<ggp::HTerm> out;
    if (spec.empty() || spec == "-") return out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ggp::DomainError("term must be a:alpha, got '" + item + "'");
        out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"generalized Gamma process toolkit"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- density
    auto* density = app.add_subcommand("density", "density catalog");
    auto* density_list = density->add_subcommand("list", "list catalog laws");
    auto* density_eval = density->add_subcommand("eval", "evaluate a law");
    std::string law_id;
    std::vector<double> xs{0.0};
    double t = 1.0;
    double opt_mu = -1, opt_gamma = 0, opt_mu1 = -1, opt_mu2 = -1, opt_nu = -1,
           opt_hurst = -1, opt_rho = -1, opt_delta = -1, opt_n = -1, opt_g1 = 0,
           opt_g2 = 0;
    density_eval->add_option("--law", law_id, "catalog law id")->required();
    density_eval->add_option("--x", xs, "evaluation point (repeat for multi-d laws)")
        ->required();
    density_eval->add_option("--t", t, "time")->required();
    density_eval->add_option("--mu", opt_mu);
    density_eval->add_option("--gamma", opt_gamma);
    density_eval->add_option("--mu1", opt_mu1);
    density_eval->add_option("--mu2", opt_mu2);
    density_eval->add_option("--nu", opt_nu);
    density_eval->add_option("--H", opt_hurst);
    density_eval->add_option("--rho", opt_rho);
    density_eval->add_option("--delta", opt_delta);
    density_eval->add_option("--n", opt_n);
    density_eval->add_option("--gamma1", opt_g1);
    density_eval->add_option("--gamma2", opt_g2);

    // -------------------------------------------------------------- sample
    auto* sample = app.add_subcommand("sample", "draw marginal samples");
    std::string expr_text, out_path;
    std::size_t count = 10000;
    std::uint64_t seed = 1;
    sample->add_option("--expr", expr_text, "process expression")->required();
    sample->add_option("--t", t, "time")->required();
    sample->add_option("--n", count, "sample count");
    sample->add_option("--seed", seed, "stream seed");
    sample->add_option("--out", out_path, "output CSV path")->required();

    // ---------------------------------------------------------------- hfox
    auto* hfox = app.add_subcommand("hfox", "Fox H-function");
    auto* hfox_eval = hfox->add_subcommand("eval", "Mellin-Barnes evaluation");
    int hm = 0, hn = 0, hp = 0, hq = 0;
    std::string upper_spec = "-", lower_spec = "-";
    double hx = 1.0, htol = 1e-8;
    hfox_eval->add_option("--m", hm)->required();
    hfox_eval->add_option("--n", hn)->required();
    hfox_eval->add_option("--p", hp)->required();
    hfox_eval->add_option("--q", hq)->required();
    hfox_eval->add_option("--upper", upper_spec, "a:alpha,... or -");
    hfox_eval->add_option("--lower", lower_spec, "b:beta,... or -");
    hfox_eval->add_option("--x", hx)->required();
    hfox_eval->add_option("--tol", htol);

    // -------------------------------------------------------------- mellin
    auto* mellin = app.add_subcommand("mellin", "symbolic Mellin forms");
    auto* mellin_prove = mellin->add_subcommand("prove", "prove a registry identity");
    std::string case_id;
    mellin_prove->add_option("case", case_id, "registry case id")->required();

    // -------------------------------------------------------------- verify
    auto* verify = app.add_subcommand("verify", "verification suites");
    auto* verify_run = verify->add_subcommand("run", "run a suite");
    std::string suite = "all", json_path, run_config_path;
    std::vector<std::uint64_t> seed_set;
    std::size_t samples = 100000;
    int jobs = 0;
    std::string only_case;
    auto* vo_suite = verify_run->add_option("--suite", suite, "mellin|mc|pde|cov|all")
                          ->check(CLI::IsMember({"mellin", "mc", "pde", "cov", "all"}));
    auto* vo_case = verify_run->add_option("--case", only_case, "restrict to one case id");
    auto* vo_seeds =
        verify_run->add_option("--seed-set", seed_set, "seeds for the MC suite");
    auto* vo_n = verify_run->add_option("--n", samples, "samples per side");
    double alpha = 0.01;
    auto* vo_alpha =
        verify_run->add_option("--alpha", alpha, "KS significance level");
    auto* vo_jobs = verify_run->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    auto* vo_json = verify_run->add_option("--json", json_path, "JSON report path");
    verify_run->add_option("--run-config", run_config_path,
                           "key=value file merged under the flags (flags win); keys: "
                           "suite, case, n, jobs, json, alpha, seed-set");

    // -------------------------------------------------------------- report
    auto* report = app.add_subcommand("report", "merge verify reports into CSV");
    std::vector<std::string> report_inputs;
    std::string report_out;
    report->add_option("--inputs", report_inputs, "verify JSON files")->required();
    report->add_option("--out", report_out, "summary CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    if (density_list->parsed()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& law : ggp::density_catalog())
            arr.push_back({{"law", law.id},
                           {"formula", law.formula},
                           {"dim", law.dim},
                           {"params", law.params}});
        std::cout << arr.dump(2) << "\n";
        return kExitOk;
    }
    if (density_eval->parsed()) {
        ggp::LawParams overrides;
        auto maybe = [&](const char* key, double v, double unset) {
            if (v != unset) overrides[key] = v;
        };
        maybe("mu", opt_mu, -1);
        maybe("gamma", opt_gamma, 0);
        maybe("mu1", opt_mu1, -1);
        maybe("mu2", opt_mu2, -1);
        maybe("nu", opt_nu, -1);
        maybe("H", opt_hurst, -1);
        maybe("rho", opt_rho, -1);
        maybe("delta", opt_delta, -1);
        maybe("n", opt_n, -1);
        maybe("gamma1", opt_g1, 0);
        maybe("gamma2", opt_g2, 0);
        const ggp::DensityLaw law = ggp::make_law(law_id, overrides);
        if (static_cast<int>(xs.size()) != law.dim)
            throw ggp::DomainError("law expects " + std::to_string(law.dim) +
                                   " coordinates");
        nlohmann::json out = {{"law", law.id},
                              {"params", law.params},
                              {"x", xs},
                              {"t", t},
                              {"value", law.eval(xs, t)}};
        std::cout << out.dump() << "\n";
        return kExitOk;
    }
    if (sample->parsed()) {
        const ggp::ExprPtr expr = ggp::parse_expr(expr_text);
        const ggp::SampleBatch batch = ggp::sample_process(expr, t, count, seed);
        std::ostringstream os;
        char digest[32];
        std::snprintf(digest, sizeof(digest), "%016llx",
                      static_cast<unsigned long long>(batch.digest));
        os << "# expr_digest=" << digest << " t=" << fmt17(t) << " seed=" << seed << "\n";
        for (double v : batch.values) os << fmt17(v) << "\n";
        write_text(out_path, os.str());
        std::cout << "wrote " << count << " samples to " << out_path << "\n";
        return kExitOk;
    }
    if (hfox_eval->parsed()) {
        ggp::HParams params;
        params.m = hm;
        params.n = hn;
        params.p = hp;
        params.q = hq;
        params.upper = parse_terms(upper_spec);
        params.lower = parse_terms(lower_spec);
        const ggp::HEvalResult res = ggp::h_eval(params, hx, htol);
        nlohmann::json out = {
            {"value", res.value}, {"T_used", res.t_used()}, {"est_error", res.est_error}};
        std::cout << out.dump() << "\n";
        return kExitOk;
    }
    if (mellin_prove->parsed()) {
        const ggp::IdentityCase& c = ggp::find_identity(case_id);
        auto lf = ggp::to_mellin(*c.lhs);
        auto rf = ggp::to_mellin(*c.rhs);
        if (!lf || !rf) {
            std::cerr << "case '" << case_id << "' is not Mellin-representable\n";
            return kExitVerifyFailed;
        }
        const auto eq = ggp::equal_on_strip(*lf, *rf);
        nlohmann::json grid = nlohmann::json::array();
        for (const auto& [theta, dev] : eq.abscissa_dev)
            grid.push_back({{"re_eta", theta}, {"max_rel_dev", dev}});
        nlohmann::json out = {{"case", c.id},
                              {"lhs", lf->to_json()},
                              {"rhs", rf->to_json()},
                              {"grid_deviations", grid},
                              {"max_rel_dev", eq.max_rel_dev},
                              {"equal", eq.equal},
                              {"negative_control", c.negative}};
        std::cout << out.dump(2) << "\n";
        const bool ok = c.negative ? !eq.equal : eq.equal;
        return ok ? kExitOk : kExitVerifyFailed;
    }
    if (verify_run->parsed()) {
        if (!run_config_path.empty()) {
            std::ifstream is(run_config_path);
            if (!is) throw ggp::IoError("cannot read config: " + run_config_path);
            std::string line;
            while (std::getline(is, line)) {
                const auto hash = line.find('#');
                if (hash != std::string::npos) line.erase(hash);
                const auto eq = line.find('=');
                if (eq == std::string::npos) continue;
                auto trim = [](std::string s) {
                    const auto a = s.find_first_not_of(" \t");
                    const auto b = s.find_last_not_of(" \t");
                    return a == std::string::npos ? std::string()
                                                  : s.substr(a, b - a + 1);
                };
                const std::string key = trim(line.substr(0, eq));
                const std::string value = trim(line.substr(eq + 1));
                if (key == "suite" && vo_suite->count() == 0)
                    suite = value;
                else if (key == "case" && vo_case->count() == 0)
                    only_case = value;
                else if (key == "n" && vo_n->count() == 0)
                    samples = std::stoull(value);
                else if (key == "jobs" && vo_jobs->count() == 0)
                    jobs = std::stoi(value);
                else if (key == "alpha" && vo_alpha->count() == 0)
                    alpha = std::stod(value);
                else if (key == "json" && vo_json->count() == 0)
                    json_path = value;
                else if (key == "seed-set" && vo_seeds->count() == 0) {
                    seed_set.clear();
                    std::stringstream ss(value);
                    std::string item;
                    while (std::getline(ss, item, ','))
                        seed_set.push_back(std::stoull(trim(item)));
                }
            }
        }
        ggp::RunConfig cfg;
        if (!seed_set.empty()) cfg.seeds = seed_set;
        if (samples == 0) throw ggp::DomainError("--n must be positive");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw ggp::DomainError("--alpha must lie in (0,1)");
        cfg.samples = samples;
        cfg.alpha = alpha;
        cfg.jobs = jobs > 0 ? jobs
                            : static_cast<int>(std::thread::hardware_concurrency());
        if (cfg.jobs < 1) cfg.jobs = 1;
        if (!only_case.empty()) {
            bool known = only_case == "cov_gamma_rho" || only_case == "cov_fbm_product";
            for (const auto& c : ggp::identity_registry()) known |= c.id == only_case;
            for (const auto& c : ggp::pde_registry()) known |= c.id == only_case;
            if (!known) throw ggp::DomainError("unknown case id: " + only_case);
            cfg.only_case = only_case;
        }
        const auto reports = ggp::run_suite(suite, cfg);
        const nlohmann::json doc = ggp::reports_to_json(reports);
        for (const auto& r : reports)
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.case_id << " ("
                      << r.method << ") statistic=" << fmt17(r.statistic)
                      << " threshold=" << fmt17(r.threshold) << "\n";
        const auto& s = doc["summary"];
        std::cout << "summary: " << s["passed"] << "/" << s["total"] << " passed\n";
        if (!json_path.empty()) write_text(json_path, doc.dump(2) + "\n");
        return s["failed"].get<std::size_t>() == 0 ? kExitOk : kExitVerifyFailed;
    }
    if (report->parsed()) {
        std::ostringstream csv;
        csv << "file,case,method,statistic,threshold,passed\n";
        std::size_t total = 0, passed = 0;
        for (const auto& path : report_inputs) {
            std::ifstream is(path);
            if (!is) throw ggp::IoError("cannot read " + path);
            nlohmann::json doc = nlohmann::json::parse(is);
            for (const auto& r : doc.at("reports")) {
                ++total;
                if (r.at("passed").get<bool>()) ++passed;
                csv << path << "," << r.at("case").get<std::string>() << ","
                    << r.at("method").get<std::string>() << ","
                    << fmt17(r.at("statistic").get<double>()) << ","
                    << fmt17(r.at("threshold").get<double>()) << ","
                    << (r.at("passed").get<bool>() ? "1" : "0") << "\n";
            }
        }
        write_text(report_out, csv.str());
        std::cout << "merged " << report_inputs.size() << " reports: " << passed << "/"
                  << total << " passed -> " << report_out << "\n";
        return kExitOk;
    }
    std::cerr << app.help();
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ggp::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
