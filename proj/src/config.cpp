#include "nullseries/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "nullseries/errors.hpp"

#ifndef NULLSERIES_VERSION
#define NULLSERIES_VERSION "0.0.0"
#endif

namespace nullseries {

const char* code_version() { return NULLSERIES_VERSION; }

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& keys, const std::string& where) {
    if (!j.is_object()) fail(ErrorKind::config, where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) fail(ErrorKind::config, "unknown key '" + k + "' in " + where);
}

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig c;
    try {
        reject_unknown(j, {"omega", "omega2_rule", "n_max", "grid_log2", "seed", "M", "ladder_C", "tolerances",
                           "decay", "null_points", "smoothness", "moments", "audit", "out"},
                       "config");
        if (j.contains("omega")) c.omega = j.at("omega").get<WeightSpec>();
        if (j.contains("omega2_rule")) c.omega2_rule = omega2_rule_from_string(j.at("omega2_rule").get<std::string>());
        take(j, "n_max", c.n_max);
        take(j, "grid_log2", c.grid_log2);
        take(j, "seed", c.seed);
        take(j, "M", c.M);
        take(j, "ladder_C", c.ladder_C);
        take(j, "null_points", c.null_points);
        take(j, "out", c.out);
        if (j.contains("tolerances")) {
            const json& t = j.at("tolerances");
            reject_unknown(t, {"triviality", "c_min", "quadrature", "hinf", "null_drop"}, "tolerances");
            take(t, "triviality", c.tol.triviality);
            take(t, "c_min", c.tol.c_min);
            take(t, "quadrature", c.tol.quadrature);
            take(t, "hinf", c.tol.hinf);
            take(t, "null_drop", c.tol.null_drop);
        }
        if (j.contains("decay")) {
            const json& d = j.at("decay");
            reject_unknown(d, {"j_lo", "j_hi"}, "decay");
            take(d, "j_lo", c.decay_j_lo);
            take(d, "j_hi", c.decay_j_hi);
        }
        if (j.contains("smoothness")) {
            const json& s = j.at("smoothness");
            reject_unknown(s, {"D", "probes"}, "smoothness");
            take(s, "D", c.smooth_D);
            take(s, "probes", c.smooth_probes);
        }
        if (j.contains("moments")) {
            const json& m = j.at("moments");
            reject_unknown(m, {"trials", "grid_log2", "m_lo", "m_hi", "max_depth", "min_cells", "seed_base"}, "moments");
            take(m, "trials", c.moments.trials);
            take(m, "grid_log2", c.moments.grid_log2);
            take(m, "m_lo", c.moments.m_lo);
            take(m, "m_hi", c.moments.m_hi);
            take(m, "max_depth", c.moments.max_depth);
            take(m, "min_cells", c.moments.min_cells);
            take(m, "seed_base", c.moments.seed_base);
        }
        if (j.contains("audit")) {
            const json& a = j.at("audit");
            reject_unknown(a, {"omega", "deltas", "k_max"}, "audit");
            if (a.contains("omega")) c.audit.omega = a.at("omega").get<WeightSpec>();
            take(a, "deltas", c.audit.deltas);
            take(a, "k_max", c.audit.k_max);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("malformed config: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) throw;
        fail(ErrorKind::config, e.what());
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) fail(ErrorKind::config, msg);
    };
    need(c.n_max >= 1 && c.n_max <= 24, "n_max must lie in [1, 24]");
    need(c.grid_log2 >= 8 && c.grid_log2 <= 26, "grid_log2 must lie in [8, 26]");
    need(c.M >= 2 && std::size_t(c.M) < c.N() / 2, "M must be below half the grid size");
    need(c.ladder_C > 0, "ladder_C must be positive");
    need(c.tol.triviality > 0 && c.tol.c_min > 0 && c.tol.hinf > 0 && c.tol.null_drop > 1, "bad tolerances");
    need(c.decay_j_lo >= 0 && c.decay_j_lo <= c.decay_j_hi, "bad decay range");
    need(c.null_points >= 1, "null_points must be positive");
    need(c.smooth_D >= 0 && c.smooth_D <= 4 && c.smooth_probes >= 1, "bad smoothness settings");
    need(c.moments.trials >= 2 && c.moments.m_lo >= 1 && c.moments.m_lo < c.moments.m_hi, "bad moment settings");
    need(c.moments.grid_log2 >= 8 && c.moments.grid_log2 <= 26, "moments.grid_log2 must lie in [8, 26]");
    need(!c.audit.deltas.empty() && c.audit.k_max >= 2, "bad audit settings");
    for (double d : c.audit.deltas) need(d > 0 && d < 1, "audit deltas must lie in (0,1)");
    need(!c.out.empty(), "output directory must be named");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::config, "cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

json to_json(const RunConfig& c) {
    return json{{"omega", c.omega},
                {"omega2_rule", to_string(c.omega2_rule)},
                {"n_max", c.n_max},
                {"grid_log2", c.grid_log2},
                {"seed", c.seed},
                {"M", c.M},
                {"ladder_C", c.ladder_C},
                {"tolerances",
                 {{"triviality", c.tol.triviality},
                  {"c_min", c.tol.c_min},
                  {"quadrature", c.tol.quadrature},
                  {"hinf", c.tol.hinf},
                  {"null_drop", c.tol.null_drop}}},
                {"decay", {{"j_lo", c.decay_j_lo}, {"j_hi", c.decay_j_hi}}},
                {"null_points", c.null_points},
                {"smoothness", {{"D", c.smooth_D}, {"probes", c.smooth_probes}}},
                {"moments",
                 {{"trials", c.moments.trials},
                  {"grid_log2", c.moments.grid_log2},
                  {"m_lo", c.moments.m_lo},
                  {"m_hi", c.moments.m_hi},
                  {"max_depth", c.moments.max_depth},
                  {"min_cells", c.moments.min_cells},
                  {"seed_base", c.moments.seed_base}}},
                {"audit", {{"omega", c.audit.omega}, {"deltas", c.audit.deltas}, {"k_max", c.audit.k_max}}},
                {"out", c.out}};
}

std::string RunConfig::run_id() const {
    json j = to_json(*this);
    j.erase("out");
    std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
    char buf[32];
    std::snprintf(buf, sizeof buf, "seed%llu-%016llx", static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nullseries
