#include "nullseries/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "nullseries/errors.hpp"

namespace nullseries {

namespace {

double log_base(double x, double base) { return std::log(x) / std::log(base); }

// Growth t^a (log t)^b when known in closed form.
struct Growth {
    double a;
    double b;
};

std::optional<Growth> growth(const WeightSpec& w) {
    switch (w.kind) {
        case WeightKind::power: return Growth{w.p, 0.0};
        case WeightKind::t_log: return Growth{1.0, 1.0};
        case WeightKind::t_log_pow: return Growth{1.0, w.p};
        case WeightKind::tabulated: return std::nullopt;
        case WeightKind::omega2: {
            auto g = growth(*w.inner);
            if (!g) return std::nullopt;
            if (w.rule == Omega2Rule::log_factor) return Growth{g->a, g->b + 1.0};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

Divergence from_growth(Growth g) {
    if (g.a < 1.0) return Divergence::divergent;
    if (g.a > 1.0) return Divergence::convergent;
    return g.b <= 1.0 ? Divergence::divergent : Divergence::convergent;
}

// Dyadic block sums of 1/w must not collapse: last block >= 0.75 of the one before.
Divergence block_heuristic(const WeightSpec& w, double t_hi) {
    int top = static_cast<int>(std::floor(std::log2(t_hi)));
    if (top < 4) return Divergence::undetermined;
    auto block = [&](int j) {
        double s = 0;
        for (long k = 1L << j; k < (1L << (j + 1)); ++k) s += 1.0 / eval_weight(w, double(k));
        return s;
    };
    double prev = block(top - 2), last = block(top - 1);
    return last >= 0.75 * prev ? Divergence::divergent : Divergence::convergent;
}

}  // namespace

WeightSpec WeightSpec::power(double p) {
    WeightSpec w;
    w.kind = WeightKind::power;
    w.p = p;
    w.claims.ratio_increasing = p >= 1.0;
    w.claims.ratio_concave = p >= 1.0 && p <= 2.0;
    w.claims.sum_reciprocal_divergent = p <= 1.0;
    return w;
}

WeightSpec WeightSpec::t_log(double base) {
    WeightSpec w;
    w.kind = WeightKind::t_log;
    w.base = base;
    w.claims = {true, true, true};
    return w;
}

WeightSpec WeightSpec::t_log_pow(double p, double base) {
    WeightSpec w;
    w.kind = WeightKind::t_log_pow;
    w.p = p;
    w.base = base;
    w.claims.ratio_increasing = p >= 0.0;
    w.claims.ratio_concave = p >= 0.0 && p <= 1.0;
    w.claims.sum_reciprocal_divergent = p <= 1.0;
    return w;
}

WeightSpec WeightSpec::tabulated(std::vector<double> t, std::vector<double> v, WeightClaims claims) {
    if (t.size() != v.size() || t.size() < 2) fail(ErrorKind::value, "tabulated weight needs matching t/v arrays of length >= 2");
    if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
        fail(ErrorKind::value, "tabulated weight abscissae must be strictly increasing");
    WeightSpec w;
    w.kind = WeightKind::tabulated;
    w.table_t = std::move(t);
    w.table_v = std::move(v);
    w.claims = claims;
    return w;
}

std::string WeightSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case WeightKind::power: os << "t^" << p; break;
        case WeightKind::t_log: os << "t*log_" << base << "(1+t)"; break;
        case WeightKind::t_log_pow: os << "t*log_" << base << "(1+t)^" << p; break;
        case WeightKind::tabulated: os << "tabulated[" << table_t.size() << "]"; break;
        case WeightKind::omega2:
            os << "omega2(" << inner->describe() << ", " << to_string(rule) << ")";
            break;
    }
    return os.str();
}

double eval_weight(const WeightSpec& w, double t) {
    if (!(t >= 0.0)) fail(ErrorKind::domain, "weight evaluated at negative t");
    switch (w.kind) {
        case WeightKind::power: return std::pow(t, w.p);
        case WeightKind::t_log: return t * log_base(1.0 + t, w.base);
        case WeightKind::t_log_pow: return t * std::pow(log_base(1.0 + t, w.base), w.p);
        case WeightKind::tabulated: {
            const auto& T = w.table_t;
            if (t < T.front() || t > T.back()) fail(ErrorKind::range, "tabulated weight queried outside its table");
            auto it = std::upper_bound(T.begin(), T.end(), t);
            size_t i = it == T.end() ? T.size() - 1 : size_t(it - T.begin());
            if (i == 0) i = 1;
            double x = (t - T[i - 1]) / (T[i] - T[i - 1]);
            return w.table_v[i - 1] + x * (w.table_v[i] - w.table_v[i - 1]);
        }
        case WeightKind::omega2: {
            double base = eval_weight(*w.inner, t);
            if (w.rule == Omega2Rule::log_factor) return base * (1.0 + std::log1p(t));
            const auto& S = w.partial_sums;
            double lim = double(S.size() - 1);
            if (t > lim) fail(ErrorKind::range, "abel_dini omega2 queried beyond its partial-sum horizon");
            size_t k = size_t(std::floor(t));
            double s = k + 1 < S.size() ? S[k] + (t - double(k)) * (S[k + 1] - S[k]) : S[k];
            return base * (1.0 + s);
        }
    }
    return 0.0;
}

Divergence reciprocal_sum(const WeightSpec& w) {
    if (auto g = growth(w)) return from_growth(*g);
    if (w.kind == WeightKind::omega2 && w.rule == Omega2Rule::abel_dini) return reciprocal_sum(*w.inner);
    double hi = w.kind == WeightKind::tabulated ? w.table_t.back() : 65536.0;
    if (w.kind == WeightKind::omega2) hi = std::min(hi, double(w.partial_sums.size() - 1));
    return block_heuristic(w, hi);
}

bool ratio_nondecreasing(const WeightSpec& w, double t_max) {
    double lo = 1e-3, hi = t_max;
    if (w.kind == WeightKind::tabulated) {
        lo = std::max(lo, w.table_t.front() > 0 ? w.table_t.front() : w.table_t[1]);
        hi = std::min(hi, w.table_t.back());
    }
    if (w.kind == WeightKind::omega2 && w.rule != Omega2Rule::log_factor)
        hi = std::min(hi, double(w.partial_sums.size() - 1));
    const int samples = 4096;
    double prev = -1.0;
    for (int i = 0; i <= samples; ++i) {
        double t = lo * std::pow(hi / lo, double(i) / samples);
        double r = eval_weight(w, t) / t;
        if (prev > 0 && r < prev * (1.0 - 1e-12)) return false;
        prev = r;
    }
    return true;
}

void validate_claims(const WeightSpec& w) {
    if (w.claims.ratio_increasing && !ratio_nondecreasing(w))
        fail(ErrorKind::contract, w.describe() + " claims w(t)/t nondecreasing but a sampled decrease was found");
    if (w.claims.sum_reciprocal_divergent && reciprocal_sum(w) == Divergence::convergent)
        fail(ErrorKind::contract, w.describe() + " claims a divergent reciprocal sum but it converges");
    if (!w.claims.sum_reciprocal_divergent && reciprocal_sum(w) == Divergence::divergent && w.kind != WeightKind::tabulated)
        fail(ErrorKind::contract, w.describe() + " denies divergence of its reciprocal sum but it diverges");
}

WeightSpec derive_omega2(const WeightSpec& w, Omega2Rule rule, int horizon) {
    if (!w.claims.sum_reciprocal_divergent)
        fail(ErrorKind::contract, "construction needs a weight with divergent reciprocal sum, got " + w.describe());
    if (!w.claims.ratio_increasing)
        fail(ErrorKind::contract, "construction needs w(t)/t nondecreasing, got " + w.describe());
    validate_claims(w);

    WeightSpec out;
    out.kind = WeightKind::omega2;
    out.inner = std::make_shared<const WeightSpec>(w);
    if (rule == Omega2Rule::automatic) {
        out.rule = Omega2Rule::log_factor;
        rule = reciprocal_sum(out) == Divergence::divergent ? Omega2Rule::log_factor : Omega2Rule::abel_dini;
    }
    out.rule = rule;
    if (rule == Omega2Rule::abel_dini) {
        if (w.kind == WeightKind::tabulated) horizon = std::min(horizon, int(std::floor(w.table_t.back())));
        out.partial_sums.assign(size_t(horizon) + 1, 0.0);
        for (int k = 1; k <= horizon; ++k) {
            double v = eval_weight(w, double(k));
            if (!(v > 0)) fail(ErrorKind::value, "weight vanishes at an integer point");
            out.partial_sums[size_t(k)] = out.partial_sums[size_t(k) - 1] + 1.0 / v;
        }
    }
    out.claims.ratio_increasing = true;
    out.claims.ratio_concave = false;
    out.claims.sum_reciprocal_divergent = reciprocal_sum(out) != Divergence::convergent;
    return out;
}

ThicknessSchedule build_schedule(const WeightSpec& omega, const WeightSpec& w2, int n_max) {
    if (n_max < 1) fail(ErrorKind::value, "schedule needs n_max >= 1");
    ThicknessSchedule s;
    s.n_max = n_max;
    s.omega = omega;
    s.omega2 = w2;
    s.phi.assign(size_t(n_max) + 1, 1.0);
    s.sigma.assign(size_t(n_max) + 1, 2.0 * std::numbers::pi);
    s.tau.assign(size_t(n_max) + 1, std::nan(""));
    s.omega2_at.assign(size_t(n_max) + 1, std::nan(""));
    double cum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        double v = eval_weight(w2, double(n));
        if (!(v > 0)) fail(ErrorKind::value, "omega2 is not positive at n=" + std::to_string(n));
        s.omega2_at[size_t(n)] = v;
        cum += 1.0 / v;
        s.phi[size_t(n)] = std::exp(-cum);
        s.sigma[size_t(n)] = 2.0 * std::numbers::pi * std::ldexp(s.phi[size_t(n)], -n);
        s.tau[size_t(n)] = std::numbers::pi / 3.0 * std::ldexp(s.phi[size_t(n)], -n) * std::expm1(1.0 / v);
    }
    return s;
}

ScheduleReport check_schedule(const ThicknessSchedule& s) {
    ScheduleReport r;
    double phi_sum = 0.0;
    std::vector<double> dyadic_trend;
    for (int n = 1; n <= s.n_max; ++n) {
        size_t i = size_t(n);
        ScheduleLevel L;
        L.n = n;
        double w2 = s.omega2_at[i];
        L.tau_over_sigma = s.tau[i] / s.sigma[i];
        L.inv_six_omega2 = 1.0 / (6.0 * w2);
        L.exact_ratio = std::expm1(1.0 / w2) / 6.0;
        phi_sum += s.phi[i];
        L.phi_sum_ratio = phi_sum / (n * s.phi[i]);
        L.log_phi_over_log_n = n > 1 ? std::log(s.phi[i]) / std::log(double(n)) : 0.0;
        L.tau_positive = s.tau[i] > 0;
        L.fits_parent = n == s.n_max || 4 * s.tau[i + 1] + s.sigma[i + 1] <= s.sigma[i] / 2 * (1 + 1e-15);
        double e1 = std::abs(L.tau_over_sigma - L.exact_ratio) / L.exact_ratio;
        double e2 = std::abs(s.phi[i] / s.phi[i - 1] - std::exp(-1.0 / w2)) / std::exp(-1.0 / w2);
        r.max_identity_error = std::max({r.max_identity_error, e1, e2});
        r.max_phi_sum_ratio = std::max(r.max_phi_sum_ratio, L.phi_sum_ratio);
        r.all_tau_positive = r.all_tau_positive && L.tau_positive;
        r.all_fit = r.all_fit && L.fits_parent;
        if (n >= 2 && (n & (n - 1)) == 0) dyadic_trend.push_back(std::abs(L.log_phi_over_log_n));
        r.levels.push_back(L);
    }
    r.log_phi_trend_to_zero = dyadic_trend.size() >= 2;
    for (size_t i = 1; i < dyadic_trend.size(); ++i)
        r.log_phi_trend_to_zero = r.log_phi_trend_to_zero && dyadic_trend[i] <= dyadic_trend[i - 1];
    return r;
}

const char* to_string(WeightKind k) {
    switch (k) {
        case WeightKind::power: return "power";
        case WeightKind::t_log: return "t_log";
        case WeightKind::t_log_pow: return "t_log_pow";
        case WeightKind::tabulated: return "tabulated";
        case WeightKind::omega2: return "omega2";
    }
    return "?";
}

const char* to_string(Omega2Rule r) {
    switch (r) {
        case Omega2Rule::automatic: return "automatic";
        case Omega2Rule::log_factor: return "log_factor";
        case Omega2Rule::abel_dini: return "abel_dini";
    }
    return "?";
}

Omega2Rule omega2_rule_from_string(const std::string& s) {
    if (s == "automatic") return Omega2Rule::automatic;
    if (s == "log_factor") return Omega2Rule::log_factor;
    if (s == "abel_dini") return Omega2Rule::abel_dini;
    fail(ErrorKind::config, "unknown omega2 rule '" + s + "'");
}

void to_json(nlohmann::json& j, const WeightSpec& w) {
    j = nlohmann::json{{"kind", to_string(w.kind)}};
    switch (w.kind) {
        case WeightKind::power: j["p"] = w.p; break;
        case WeightKind::t_log: j["base"] = w.base; break;
        case WeightKind::t_log_pow: j["p"] = w.p; j["base"] = w.base; break;
        case WeightKind::tabulated: j["t"] = w.table_t; j["v"] = w.table_v; break;
        case WeightKind::omega2:
            j["rule"] = to_string(w.rule);
            j["of"] = *w.inner;
            break;
    }
    j["claims"] = {{"ratio_increasing", w.claims.ratio_increasing},
                   {"ratio_concave", w.claims.ratio_concave},
                   {"sum_reciprocal_divergent", w.claims.sum_reciprocal_divergent}};
}

void from_json(const nlohmann::json& j, WeightSpec& w) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") w = WeightSpec::power(j.at("p").get<double>());
    else if (kind == "t_log") w = WeightSpec::t_log(j.value("base", 2.0));
    else if (kind == "t_log_pow") w = WeightSpec::t_log_pow(j.at("p").get<double>(), j.value("base", 2.0));
    else if (kind == "tabulated") {
        WeightClaims c;
        w = WeightSpec::tabulated(j.at("t").get<std::vector<double>>(), j.at("v").get<std::vector<double>>(), c);
    } else if (kind == "omega2") {
        WeightSpec inner = j.at("of").get<WeightSpec>();
        w = derive_omega2(inner, omega2_rule_from_string(j.value("rule", std::string("automatic"))));
        return;
    } else
        fail(ErrorKind::config, "unknown weight kind '" + kind + "'");
    if (j.contains("claims")) {
        const auto& c = j["claims"];
        w.claims.ratio_increasing = c.value("ratio_increasing", w.claims.ratio_increasing);
        w.claims.ratio_concave = c.value("ratio_concave", w.claims.ratio_concave);
        w.claims.sum_reciprocal_divergent = c.value("sum_reciprocal_divergent", w.claims.sum_reciprocal_divergent);
    }
}

void to_json(nlohmann::json& j, const ThicknessSchedule& s) {
    std::vector<double> tau(s.tau.begin() + 1, s.tau.end());
    j = nlohmann::json{{"omega", s.omega}, {"omega2", s.omega2}, {"n_max", s.n_max},
                       {"phi", s.phi}, {"sigma", s.sigma}, {"tau", tau}};
}

void to_json(nlohmann::json& j, const ScheduleReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& L : r.levels)
        rows.push_back({{"n", L.n}, {"tau_over_sigma", L.tau_over_sigma}, {"inv_six_omega2", L.inv_six_omega2},
                        {"exact_ratio", L.exact_ratio}, {"phi_sum_ratio", L.phi_sum_ratio},
                        {"log_phi_over_log_n", L.log_phi_over_log_n}, {"tau_positive", L.tau_positive},
                        {"fits_parent", L.fits_parent}});
    j = nlohmann::json{{"levels", rows}, {"max_identity_error", r.max_identity_error},
                       {"max_phi_sum_ratio", r.max_phi_sum_ratio}, {"all_tau_positive", r.all_tau_positive},
                       {"log_phi_trend_to_zero", r.log_phi_trend_to_zero}, {"all_fit", r.all_fit}};
}

}  // namespace nullseries
