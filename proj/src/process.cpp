// SPDX-License-Identifier: Apache-2.0
#include "ggp/process.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ggp/errors.hpp"

namespace ggp {

// ---------------------------------------------------------------- variates

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
}

double Rng::exponential() { return -std::log(uniform01()); }

double Rng::cauchy() {
    double d;
    do {
        d = normal();
    } while (d == 0.0);
    return normal() / d;
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma variate: shape must be positive");
    if (shape < 1.0)
        return gamma(shape + 1.0) * std::pow(uniform01(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal();
        const double b = 1.0 + c * x;
        if (b <= 0.0) continue;
        const double v = b * b * b;
        const double u = uniform01();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

// ---------------------------------------------------------------- builders

namespace {

ExprPtr make(ProcessExpr e) { return std::make_shared<const ProcessExpr>(std::move(e)); }

void require(bool cond, const char* msg) {
    if (!cond) throw ExprError(msg);
}

} // namespace

ExprPtr gg(double gamma, double mu) {
    require(gamma != 0.0, "gg: gamma must be nonzero");
    require(mu > 0.0, "gg: mu must be positive");
    ProcessExpr e{};
    e.kind = NodeKind::GG;
    e.gamma = gamma;
    e.mu = mu;
    return make(e);
}

ExprPtr ggt(double gamma, double mu) { return time_change(gg(gamma, mu), 1.0, gamma); }

ExprPtr brown() {
    ProcessExpr e{};
    e.kind = NodeKind::Brown;
    return make(e);
}

ExprPtr fbm(double hurst) {
    require(hurst > 0.0 && hurst < 1.0, "fbm: H must lie in (0,1)");
    ProcessExpr e{};
    e.kind = NodeKind::Fbm;
    e.hurst = hurst;
    return make(e);
}

ExprPtr cauchy() {
    ProcessExpr e{};
    e.kind = NodeKind::Cauchy;
    return make(e);
}
ExprPtr folded_cauchy() {
    ProcessExpr e{};
    e.kind = NodeKind::FoldedCauchy;
    return make(e);
}

ExprPtr besselsq(double delta) {
    require(delta > 0.0, "besselsq: delta must be positive");
    ProcessExpr e{};
    e.kind = NodeKind::BesselSq;
    e.delta = delta;
    return make(e);
}

ExprPtr stable_half() {
    ProcessExpr e{};
    e.kind = NodeKind::StableHalf;
    return make(e);
}

ExprPtr student_pos(double nu) {
    require(nu > 0.0, "student: nu must be positive");
    ProcessExpr e{};
    e.kind = NodeKind::StudentPos;
    e.nu = nu;
    return make(e);
}

ExprPtr norm_bg(int n) {
    require(n >= 1, "normbg: n must be >= 1");
    ProcessExpr e{};
    e.kind = NodeKind::NormBG;
    e.n = n;
    return make(e);
}

ExprPtr compose(ExprPtr outer, ExprPtr inner) {
    require(support_of(*inner) == SupportClass::Positive,
            "compose: inner process must be nonnegative (wrap it in power(.,1))");
    ProcessExpr e{};
    e.kind = NodeKind::Compose;
    e.children = {std::move(outer), std::move(inner)};
    return make(e);
}

ExprPtr product(std::vector<ExprPtr> children) {
    require(children.size() >= 2, "product: needs at least two children");
    ProcessExpr e{};
    e.kind = NodeKind::Product;
    e.children = std::move(children);
    return make(e);
}

ExprPtr product_split(std::vector<ExprPtr> children) {
    const double inv_n = 1.0 / static_cast<double>(children.size());
    std::vector<ExprPtr> wrapped;
    wrapped.reserve(children.size());
    for (auto& c : children) wrapped.push_back(time_change(std::move(c), 1.0, inv_n));
    return product(std::move(wrapped));
}

ExprPtr time_change(ExprPtr base, double alpha, double beta) {
    require(alpha > 0.0, "timechange: alpha must be positive");
    require(beta != 0.0, "timechange: beta must be nonzero");
    ProcessExpr e{};
    e.kind = NodeKind::TimeChange;
    e.alpha = alpha;
    e.beta = beta;
    e.children = {std::move(base)};
    return make(e);
}

ExprPtr power(ExprPtr base, double exponent) {
    require(exponent != 0.0, "power: exponent must be nonzero");
    ProcessExpr e{};
    e.kind = NodeKind::Power;
    e.exponent = exponent;
    e.children = {std::move(base)};
    return make(e);
}

ExprPtr scale_expr(ExprPtr base, double factor) {
    require(factor > 0.0, "scale: factor must be positive");
    ProcessExpr e{};
    e.kind = NodeKind::Scale;
    e.factor = factor;
    e.children = {std::move(base)};
    return make(e);
}

ExprPtr sum_of_powers(std::vector<ExprPtr> children, std::vector<double> gammas,
                      double outer_root) {
    require(!children.empty() && children.size() == gammas.size(),
            "sumpow: children/exponent count mismatch");
    require(outer_root != 0.0, "sumpow: outer root must be nonzero");
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (support_of(*children[i]) == SupportClass::Real) {
            const double g = gammas[i];
            require(g > 0.0 && g == std::floor(g) && std::fmod(g, 2.0) == 0.0,
                    "sumpow: a real-valued child needs an even integer exponent");
        }
    }
    ProcessExpr e{};
    e.kind = NodeKind::SumOfPowers;
    e.children = std::move(children);
    e.gammas = std::move(gammas);
    e.outer_root = outer_root;
    return make(e);
}

SupportClass support_of(const ProcessExpr& e) {
    switch (e.kind) {
        case NodeKind::Brown:
        case NodeKind::Fbm:
        case NodeKind::Cauchy:
            return SupportClass::Real;
        case NodeKind::Compose:
            return support_of(*e.children[0]);
        case NodeKind::Product:
            for (const auto& c : e.children)
                if (support_of(*c) == SupportClass::Real) return SupportClass::Real;
            return SupportClass::Positive;
        case NodeKind::TimeChange:
        case NodeKind::Scale:
            return support_of(*e.children[0]);
        default:
            return SupportClass::Positive;
    }
}

// ------------------------------------------------------------- serialization

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string to_string(const ProcessExpr& e) {
    switch (e.kind) {
        case NodeKind::GG: return "gg(" + num(e.gamma) + "," + num(e.mu) + ")";
        case NodeKind::Brown: return "brown";
        case NodeKind::Fbm: return "fbm(" + num(e.hurst) + ")";
        case NodeKind::Cauchy: return "cauchy";
        case NodeKind::FoldedCauchy: return "folded_cauchy";
        case NodeKind::BesselSq: return "besselsq(" + num(e.delta) + ")";
        case NodeKind::StableHalf: return "stable_half";
        case NodeKind::StudentPos: return "student(" + num(e.nu) + ")";
        case NodeKind::NormBG: return "normbg(" + std::to_string(e.n) + ")";
        case NodeKind::Compose:
            return "compose(" + to_string(*e.children[0]) + "," +
                   to_string(*e.children[1]) + ")";
        case NodeKind::Product: {
            std::string s = "product(";
            for (std::size_t i = 0; i < e.children.size(); ++i)
                s += (i ? "," : "") + to_string(*e.children[i]);
            return s + ")";
        }
        case NodeKind::TimeChange:
            return "timechange(" + to_string(*e.children[0]) + "," + num(e.alpha) + "," +
                   num(e.beta) + ")";
        case NodeKind::Power:
            return "power(" + to_string(*e.children[0]) + "," + num(e.exponent) + ")";
        case NodeKind::Scale:
            return "scale(" + to_string(*e.children[0]) + "," + num(e.factor) + ")";
        case NodeKind::SumOfPowers: {
            std::string s = "sumpow(" + num(e.outer_root);
            for (std::size_t i = 0; i < e.children.size(); ++i)
                s += "," + num(e.gammas[i]) + "," + to_string(*e.children[i]);
            return s + ")";
        }
    }
    throw ExprError("to_string: unknown node");
}

std::uint64_t expr_digest(const ProcessExpr& e) {
    const std::string s = to_string(e);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// --------------------------------------------------------------------- parse

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw ExprError(std::string("expression parse error: expected '") + c +
                            "' at offset " + std::to_string(pos));
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) throw ExprError("expression parse error: identifier expected");
        return std::string(text.substr(start, pos - start));
    }
    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' ||
                text[pos] == 'E'))
            ++pos;
        try {
            return std::stod(std::string(text.substr(start, pos - start)));
        } catch (const std::exception&) {
            throw ExprError("expression parse error: number expected at offset " +
                            std::to_string(start));
        }
    }

    ExprPtr expr() {
        const std::string name = ident();
        if (name == "brown") return brown();
        if (name == "cauchy") return cauchy();
        if (name == "folded_cauchy") return folded_cauchy();
        if (name == "stable_half") return stable_half();
        expect('(');
        ExprPtr out;
        if (name == "gg" || name == "ggt") {
            const double g = number();
            expect(',');
            const double mu = number();
            out = name == "gg" ? gg(g, mu) : ggt(g, mu);
        } else if (name == "fbm") {
            out = fbm(number());
        } else if (name == "besselsq") {
            out = besselsq(number());
        } else if (name == "student") {
            out = student_pos(number());
        } else if (name == "normbg") {
            out = norm_bg(static_cast<int>(number()));
        } else if (name == "compose") {
            ExprPtr outer = expr();
            expect(',');
            ExprPtr inner = expr();
            out = compose(std::move(outer), std::move(inner));
        } else if (name == "product" || name == "product_split") {
            std::vector<ExprPtr> children;
            children.push_back(expr());
            while (consume(',')) children.push_back(expr());
            out = name == "product" ? product(std::move(children))
                                    : product_split(std::move(children));
        } else if (name == "timechange") {
            ExprPtr base = expr();
            expect(',');
            const double alpha = number();
            expect(',');
            const double beta = number();
            out = time_change(std::move(base), alpha, beta);
        } else if (name == "power") {
            ExprPtr base = expr();
            expect(',');
            out = power(std::move(base), number());
        } else if (name == "scale") {
            ExprPtr base = expr();
            expect(',');
            out = scale_expr(std::move(base), number());
        } else if (name == "sumpow") {
            const double root = number();
            std::vector<double> gammas;
            std::vector<ExprPtr> children;
            while (consume(',')) {
                gammas.push_back(number());
                expect(',');
                children.push_back(expr());
            }
            out = sum_of_powers(std::move(children), std::move(gammas), root);
        } else {
            throw ExprError("expression parse error: unknown node '" + name + "'");
        }
        expect(')');
        return out;
    }
};

} // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p{text};
    ExprPtr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ExprError("expression parse error: trailing input at offset " +
                        std::to_string(p.pos));
    return e;
}

// -------------------------------------------------------------------- Mellin

std::optional<MellinForm> to_mellin(const ProcessExpr& e) {
    switch (e.kind) {
        case NodeKind::GG:
            return mellin_of_gg({e.mu, e.gamma, {1.0, 1.0}});
        case NodeKind::Brown:
            return mellin_of_folded_gaussian(0.5);
        case NodeKind::Fbm:
            return mellin_of_folded_gaussian(e.hurst);
        case NodeKind::Cauchy:
        case NodeKind::FoldedCauchy:
            return mellin_of_folded_cauchy();
        case NodeKind::BesselSq: {
            MellinForm f;
            f.const_log = -std::lgamma(0.5 * e.delta);
            f.push_factor(1.0, 0.5 * e.delta - 1.0, 1);
            f.t_slope = 1.0;
            f.t_offset = -1.0;
            return apply_clock(f, 2.0, 1.0);
        }
        case NodeKind::StableHalf: {
            MellinForm f;
            f.const_log = std::numbers::ln2 - 0.5 * std::log(std::numbers::pi);
            f.eta_scale_log = -std::numbers::ln2;
            f.push_factor(-1.0, 1.5, 1);
            f.t_slope = 2.0;
            f.t_offset = -2.0;
            return f;
        }
        case NodeKind::StudentPos: {
            MellinForm f;
            f.const_log = -0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * e.nu);
            f.push_factor(0.5, 0.0, 1);
            f.push_factor(-0.5, 0.5 * (e.nu + 1.0), 1);
            f.t_slope = 1.0;
            f.t_offset = -1.0;
            return f;
        }
        case NodeKind::NormBG: {
            MellinForm f;
            f.const_log = -std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) -
                          std::lgamma(0.5 * e.n);
            f.eta_scale_log = std::numbers::ln2;
            f.push_factor(0.5, 0.0, 1);
            f.push_factor(0.5, 0.5 * (e.n - 1.0), 1);
            f.t_slope = 0.5;
            f.t_offset = -0.5;
            return f;
        }
        case NodeKind::Compose: {
            auto outer = to_mellin(*e.children[0]);
            auto inner = to_mellin(*e.children[1]);
            if (!outer || !inner) return std::nullopt;
            return subordinate(*outer, *inner);
        }
        case NodeKind::Product: {
            auto acc = to_mellin(*e.children[0]);
            if (!acc) return std::nullopt;
            for (std::size_t i = 1; i < e.children.size(); ++i) {
                auto next = to_mellin(*e.children[i]);
                if (!next) return std::nullopt;
                acc = product(*acc, *next);
            }
            return acc;
        }
        case NodeKind::TimeChange: {
            auto base = to_mellin(*e.children[0]);
            if (!base) return std::nullopt;
            return apply_clock(*base, e.alpha, e.beta);
        }
        case NodeKind::Power: {
            auto base = to_mellin(*e.children[0]);
            if (!base) return std::nullopt;
            return power_map(*base, e.exponent);
        }
        case NodeKind::Scale: {
            auto base = to_mellin(*e.children[0]);
            if (!base) return std::nullopt;
            return scale(*base, e.factor, ScaleMode::Space);
        }
        case NodeKind::SumOfPowers:
            return std::nullopt; // sums leave the Gamma-product family
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ sampling

double sample_one(const ProcessExpr& e, double t, Rng& rng) {
    if (!(t > 0.0)) throw DomainError("sample: time must be positive");
    switch (e.kind) {
        case NodeKind::GG:
            return std::pow(t * rng.gamma(e.mu), 1.0 / e.gamma);
        case NodeKind::Brown:
            return std::sqrt(t) * rng.normal();
        case NodeKind::Fbm:
            return std::pow(t, e.hurst) * rng.normal();
        case NodeKind::Cauchy:
            return t * rng.cauchy();
        case NodeKind::FoldedCauchy:
            return t * std::abs(rng.cauchy());
        case NodeKind::BesselSq:
            return 2.0 * t * rng.gamma(0.5 * e.delta);
        case NodeKind::StableHalf: {
            double z;
            do {
                z = rng.normal();
            } while (z == 0.0);
            return t * t / (z * z);
        }
        case NodeKind::StudentPos:
            return t * std::abs(rng.normal()) / std::sqrt(2.0 * rng.gamma(0.5 * e.nu));
        case NodeKind::NormBG: {
            const double s = 2.0 * t * rng.gamma(0.5);
            double q = 0.0;
            for (int i = 0; i < e.n; ++i) {
                const double z = rng.normal();
                q += z * z;
            }
            return std::sqrt(s * q);
        }
        case NodeKind::Compose: {
            const double s = sample_one(*e.children[1], t, rng);
            if (!(s > 0.0)) // zero only at the resolution floor of doubles
                return sample_one(*e.children[0], 1e-300, rng);
            return sample_one(*e.children[0], s, rng);
        }
        case NodeKind::Product: {
            double prod = 1.0;
            for (std::size_t j = 0; j < e.children.size(); ++j) {
                Rng child(mix64(rng.next_u64(), j));
                prod *= sample_one(*e.children[j], t, child);
            }
            return prod;
        }
        case NodeKind::TimeChange:
            return sample_one(*e.children[0], e.alpha * std::pow(t, e.beta), rng);
        case NodeKind::Power:
            return std::pow(std::abs(sample_one(*e.children[0], t, rng)), e.exponent);
        case NodeKind::Scale:
            return e.factor * sample_one(*e.children[0], t, rng);
        case NodeKind::SumOfPowers: {
            double acc = 0.0;
            for (std::size_t j = 0; j < e.children.size(); ++j) {
                Rng child(mix64(rng.next_u64(), j));
                acc += std::pow(std::abs(sample_one(*e.children[j], t, child)),
                                e.gammas[j]);
            }
            return std::pow(acc, e.outer_root);
        }
    }
    throw ExprError("sample: unknown node");
}

namespace {
constexpr std::size_t kShard = 4096; // fixed shard size keeps batches
                                     // deterministic for any worker count
}

SampleBatch sample_process(const ExprPtr& e, double t, std::size_t count,
                           std::uint64_t seed) {
    SampleBatch batch;
    batch.t = t;
    batch.seed = seed;
    batch.digest = expr_digest(*e);
    batch.values.resize(count);
    const std::size_t shards = (count + kShard - 1) / kShard;
    for (std::size_t s = 0; s < shards; ++s) {
        Rng rng(mix64(seed, s));
        const std::size_t lo = s * kShard;
        const std::size_t hi = std::min(count, lo + kShard);
        for (std::size_t i = lo; i < hi; ++i) batch.values[i] = sample_one(*e, t, rng);
    }
    return batch;
}

SampleBatch sample_gamma(double mu, double scale, std::size_t count, std::uint64_t seed) {
    if (!(mu > 0.0) || !(scale > 0.0))
        throw DomainError("sample_gamma: parameters must be positive");
    SampleBatch batch = sample_process(gg(1.0, mu), scale, count, seed);
    return batch;
}

PairBatch sample_gaussian_pair(double hurst, double t1, double t2, std::size_t count,
                               std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst <= 1.0))
        throw DomainError("sample_gaussian_pair: H in (0,1]");
    if (!(t1 > 0.0 && t2 > 0.0))
        throw DomainError("sample_gaussian_pair: times must be positive");
    const double v1 = std::pow(t1, 2.0 * hurst);
    const double v2 = std::pow(t2, 2.0 * hurst);
    const double c = 0.5 * (v1 + v2 - std::pow(std::abs(t1 - t2), 2.0 * hurst));
    // Cholesky of [[v1, c], [c, v2]]
    const double l11 = std::sqrt(v1);
    const double l21 = c / l11;
    const double rest = v2 - l21 * l21;
    if (rest < -1e-12 * v2)
        throw DomainError("sample_gaussian_pair: covariance not PSD");
    const double l22 = std::sqrt(std::max(rest, 0.0));
    PairBatch batch;
    batch.seed = seed;
    batch.pairs.resize(count);
    const std::size_t shards = (count + kShard - 1) / kShard;
    for (std::size_t s = 0; s < shards; ++s) {
        Rng rng(mix64(seed, s));
        const std::size_t lo = s * kShard;
        const std::size_t hi = std::min(count, lo + kShard);
        for (std::size_t i = lo; i < hi; ++i) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            batch.pairs[i] = {l11 * z1, l21 * z1 + l22 * z2};
        }
    }
    return batch;
}

} // namespace ggp
