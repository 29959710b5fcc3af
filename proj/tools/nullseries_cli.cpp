#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullseries/cantor.hpp"
#include "nullseries/config.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/harmonic.hpp"
#include "nullseries/pla.hpp"
#include "nullseries/profile.hpp"
#include "nullseries/uniqueness.hpp"
#include "nullseries/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nullseries;

namespace {

enum Exit { ok = 0, check_failed = 1, config_error = 2, resolution_error = 3, trivial = 4, decay_failed = 5 };

int exit_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::config:
    case ErrorKind::contract:
    case ErrorKind::domain:
    case ErrorKind::precondition:
    case ErrorKind::value:
    case ErrorKind::shape:
    case ErrorKind::range:
        return config_error;
    case ErrorKind::resolution:
    case ErrorKind::capability:
        return resolution_error;
    case ErrorKind::triviality:
        return trivial;
    }
    return check_failed;
}

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quiet = false;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    if (!c.out.empty()) cfg.out = c.out;
    validate(cfg);
    return cfg;
}

json envelope(const RunConfig& cfg, const std::string& kind, json body) {
    return json{{"kind", kind}, {"code_version", code_version()}, {"config", to_json(cfg)}, {"report", std::move(body)}};
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream os(p);
    if (!os) fail(ErrorKind::config, "cannot write " + p.string());
    os << j.dump(2) << '\n';
}

struct Pipeline {
    WeightSpec omega2;
    ThicknessSchedule schedule;
    CantorSet set;
    ProfileFamily profile;
};

Pipeline front(const RunConfig& cfg) {
    if (reciprocal_sum(cfg.omega) != Divergence::divergent)
        fail(ErrorKind::config, "construction needs a weight with divergent sum 1/omega; got " + cfg.omega.describe());
    Pipeline p;
    p.omega2 = derive_omega2(cfg.omega, cfg.omega2_rule);
    p.schedule = build_schedule(cfg.omega, p.omega2, cfg.n_max);
    p.set = generate(p.schedule, cfg.n_max, cfg.seed);
    p.profile = build_profile(p.set, cfg.omega);
    return p;
}

void say(const Common& c, const std::string& s) {
    if (!c.quiet) std::cout << s << '\n';
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

int cmd_construct(const Common& common) {
    RunConfig cfg = resolve(common);
    Pipeline p = front(cfg);
    PlaFunction f = build_pla(p.profile, cfg.n_max, cfg.N(), PlaOptions{16.0, cfg.tol.hinf, true});
    TaylorLadder L = make_ladder(p.profile, cfg.N(), cfg.ladder_C);
    NullSeries s = null_series(f, p.profile, L, cfg.M, cfg.tol.triviality);
    DecayReport d = decay_report(s, cfg.omega, cfg.decay_j_lo, cfg.decay_j_hi, cfg.tol.c_min);

    fs::path dir = fs::path(cfg.out) / cfg.run_id();
    fs::create_directories(dir / "plots");
    write_series_csv(s.c, (dir / "series.csv").string(), s.M);
    json side = {{"seed", s.seed},
                 {"depth", s.depth},
                 {"omega", cfg.omega},
                 {"omega2", p.omega2.describe()},
                 {"grid_N", s.N},
                 {"M", s.M},
                 {"tolerances", {{"triviality", s.triviality_tolerance}, {"c_min", d.c_min}, {"hinf", cfg.tol.hinf}}},
                 {"fitted",
                  {{"c_hat", d.c_hat},
                   {"deficit_slope", d.deficit_slope},
                   {"ladder_C", s.ladder_C},
                   {"max_abs", s.max_abs},
                   {"max_negative", s.max_negative},
                   {"cells_per_tau", f.cells_per_tau}}},
                 {"hinf", f.hinf}};
    write_json(dir / "series.json", envelope(cfg, "series", side));
    write_json(dir / "report-decay.json", envelope(cfg, "decay", d));
    write_json(dir / "report-schedule.json", envelope(cfg, "schedule", check_schedule(p.schedule)));
    json cj;
    to_json(cj, p.set);
    write_json(dir / "cantor.json", envelope(cfg, "cantor", cj));

    {
        std::ofstream os(dir / "plots" / "decay.csv");
        os.precision(17);
        os << "j,block_max,omega_j,c_hat\n";
        for (const auto& r : d.rows) os << r.j << ',' << r.block_max << ',' << r.omega_j << ',' << r.c_hat << '\n';
    }
    write_profile_csv(p.profile, cfg.n_max, std::size_t(1) << 12, (dir / "plots" / "profile.csv").string());
    write_json(dir / "plots" / "plots.json",
               envelope(cfg, "plots", {{"files", {"decay.csv", "profile.csv"}}, {"profile_grid", 1 << 12}}));

    say(common, dir.string());
    say(common, "max|c| = " + fmt(s.max_abs) + ", c_hat = " + fmt(d.c_hat) + " (min " + fmt(d.c_min) + ")");
    return d.pass ? ok : decay_failed;
}

struct Loaded {
    RunConfig cfg;
    NullSeries series;
    fs::path dir;
};

Loaded load_series(const std::string& csv, const Common& common) {
    fs::path path(csv);
    fs::path sidecar = path.parent_path() / (path.stem().string() + ".json");
    if (!fs::exists(sidecar)) fail(ErrorKind::config, "missing sidecar " + sidecar.string());
    json side;
    try {
        std::ifstream in(sidecar);
        in >> side;
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("unreadable sidecar: ") + e.what());
    }
    Loaded l;
    l.dir = path.parent_path();
    try {
        l.cfg = config_from_json(side.at("config"));
        const json& r = side.at("report");
        l.series.M = r.at("M").get<long>();
        l.series.depth = r.at("depth").get<int>();
        l.series.seed = r.at("seed").get<std::uint64_t>();
        l.series.N = r.at("grid_N").get<std::size_t>();
        l.series.triviality_tolerance = r.at("tolerances").at("triviality").get<double>();
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("malformed sidecar: ") + e.what());
    }
    if (common.seed) l.cfg.seed = *common.seed;
    l.series.c = read_series_csv(csv);
    l.series.omega = l.cfg.omega.describe();
    l.series.ladder_C = l.cfg.ladder_C;
    for (long n = -l.series.M; n <= l.series.M; ++n) {
        double a = std::abs(l.series.c.at(n));
        l.series.max_abs = std::max(l.series.max_abs, a);
        if (n < 0) l.series.max_negative = std::max(l.series.max_negative, a);
    }
    return l;
}

int cmd_verify(const Common& common, const std::string& csv, const std::string& which, int trials) {
    Loaded l = load_series(csv, common);
    RunConfig& cfg = l.cfg;
    json body;
    bool pass = false;
    int fail_code = check_failed;
    if (which == "decay") {
        DecayReport d = decay_report(l.series, cfg.omega, cfg.decay_j_lo, cfg.decay_j_hi, cfg.tol.c_min);
        body = d;
        pass = d.pass;
        fail_code = decay_failed;
        say(common, "c_hat = " + fmt(d.c_hat) + ", deficit slope = " + fmt(d.deficit_slope));
    } else if (which == "null") {
        if (l.series.max_abs == 0) fail(ErrorKind::triviality, "null check on an identically zero series");
        Pipeline p = front(cfg);
        auto pts = random_escaped_points(p.set, l.series.depth, cfg.null_points, cfg.seed);
        NullCheckReport r = null_check(l.series, p.set, pts, dyadic_list(1, l.series.M), cfg.tol.null_drop);
        body = r;
        pass = r.pass;
        double worst = INFINITY;
        for (const auto& q : r.points) worst = std::min(worst, q.drop);
        say(common, "smallest drop = " + fmt(worst) + " over " + std::to_string(r.points.size()) + " points");
    } else if (which == "moments") {
        MomentOptions opt;
        opt.m_list = dyadic_list(cfg.moments.m_lo, cfg.moments.m_hi);
        opt.trials = trials > 0 ? trials : cfg.moments.trials;
        opt.seed_base = cfg.moments.seed_base;
        opt.N = std::size_t(1) << cfg.moments.grid_log2;
        opt.max_depth = cfg.moments.max_depth;
        opt.ladder_C = cfg.ladder_C;
        opt.min_cells_per_tau = cfg.moments.min_cells;
        MomentReport r = moment_experiment(cfg.omega, derive_omega2(cfg.omega, cfg.omega2_rule), opt);
        body = r;
        pass = r.pass;
        say(common, "slope = " + fmt(r.slope) + " [" + fmt(r.slope_lo) + ", " + fmt(r.slope_hi) + "]" +
                        (r.warning ? " warning: " + r.warning_text : ""));
    } else if (which == "smoothness") {
        Pipeline p = front(cfg);
        PlaFunction f = build_pla(p.profile, l.series.depth, l.series.N, PlaOptions{16.0, cfg.tol.hinf, true});
        SmoothnessReport r = verify_smoothness(f, p.profile, cfg.smooth_D, cfg.smooth_probes, cfg.seed);
        body = r;
        pass = r.pass;
        say(common, "fitted C = " + fmt(r.fitted_C) + " from " + std::to_string(r.rows.size()) + " probes");
    } else {
        fail(ErrorKind::config, "unknown check '" + which + "'");
    }
    write_json(l.dir / ("report-" + which + ".json"), envelope(cfg, which, body));
    return pass ? ok : fail_code;
}

int cmd_audit(const Common& common, const std::string& csv, const std::vector<double>& deltas, int k_max) {
    RunConfig cfg;
    SpectralSeries c;
    fs::path dir;
    if (csv.empty()) {
        cfg = resolve(common);
        if (!deltas.empty()) cfg.audit.deltas = deltas;
        if (k_max > 0) cfg.audit.k_max = k_max;
        int top = cfg.audit.k_max + 1;
        for (double d : cfg.audit.deltas) top = std::max(top, int(std::ceil(std::log2(1.0 / d) - 1e-12)) + 1);
        c = synthetic_tail(cfg.audit.omega, 1L << (top + 1));
        dir = fs::path(cfg.out) / cfg.run_id();
    } else {
        Loaded l = load_series(csv, common);
        cfg = l.cfg;
        if (!deltas.empty()) cfg.audit.deltas = deltas;
        if (k_max > 0) cfg.audit.k_max = k_max;
        c = l.series.c;
        dir = l.dir;
    }
    fs::create_directories(dir);
    std::vector<UniquenessAudit> audits;
    for (double d : cfg.audit.deltas) audits.push_back(audit_uniqueness(c, cfg.audit.omega, d, cfg.audit.k_max));
    ChainFit fit = fit_chain(audits);
    json body = {{"source", csv.empty() ? "synthetic_tail" : csv}, {"audits", audits}, {"chain", fit}};
    if (!fit.pass && fit.recursion_pass)
        body["note"] = "no collapse: the Laurent chain does not force the coefficients to zero";
    write_json(dir / "report-audit.json", envelope(cfg, "audit", body));
    for (const auto& a : audits)
        say(common, "delta = " + fmt(a.delta) + ": recursion " + (a.recursion_pass ? "pass" : "FAIL") +
                        ", chain c = " + fmt(a.chain.c));
    say(common, "fitted c = " + fmt(fit.c_fit));
    return fit.recursion_pass ? ok : check_failed;
}

Target parse_target(const std::string& s) {
    if (s == "outer") return Target::outer_circle();
    if (s == "inner") return Target::inner_circle();
    if (s == "all") return Target::everything();
    if (s.rfind("arc:", 0) == 0) {
        double lo = 0, hi = 0;
        char sep = 0;
        std::istringstream is(s.substr(4));
        if (!(is >> lo >> sep >> hi) || sep != ':') fail(ErrorKind::config, "arc target must read arc:lo:hi");
        return Target::outer_arc(lo, hi);
    }
    fail(ErrorKind::config, "unknown target '" + s + "'");
}

int cmd_hm(const Common& common, const std::string& file, std::vector<double> z, const std::string& target,
           long paths) {
    RunConfig cfg = resolve(common);
    json j;
    {
        std::ifstream in(file);
        if (!in) fail(ErrorKind::config, "cannot read domain file " + file);
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail(ErrorKind::config, std::string("domain file is not valid JSON: ") + e.what());
        }
    }
    Domain d = domain_from_json(j.contains("domain") ? j.at("domain") : j);
    Target t = target.empty() ? (j.contains("target") ? target_from_json(j.at("target")) : Target::outer_circle())
                              : parse_target(target);
    if (z.size() != 2) fail(ErrorKind::config, "start point needs two coordinates");
    HarmonicMeasureEstimate e = harmonic_measure(d, cplx(z[0], z[1]), t, paths, cfg.seed);
    fs::path dir = fs::path(cfg.out) / cfg.run_id();
    fs::create_directories(dir);
    write_json(dir / "report-hm.json",
               envelope(cfg, "hm", {{"domain_file", file}, {"z", z}, {"target", target}, {"estimate", e}}));
    if (!common.quiet) std::printf("%.6f +- %.6f\n", e.value, e.stderr_);
    return e.ambiguous_ok ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Null-series laboratory"};
    app.require_subcommand(1);
    Common common;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "JSON configuration file");
        sub->add_option("--seed", seed, "override the seed");
        sub->add_option("--out", common.out, "output directory");
        sub->add_flag("--quiet", common.quiet, "suppress console output");
    };

    auto* construct = app.add_subcommand("construct", "build a null-series and its reports");
    add_common(construct);

    std::string series, which = "decay";
    int trials = 0;
    auto* verify = app.add_subcommand("verify", "run one check on a constructed series");
    add_common(verify);
    verify->add_option("series", series, "series CSV with its JSON sidecar")->required();
    verify->add_option("--which", which, "decay, null, moments or smoothness")
        ->check(CLI::IsMember({"decay", "null", "moments", "smoothness"}));
    verify->add_option("--trials", trials, "override the number of moment trials");

    std::string audit_series;
    std::vector<double> deltas;
    int k_max = 0;
    auto* audit = app.add_subcommand("audit", "audit the uniqueness recursion");
    add_common(audit);
    audit->add_option("series", audit_series, "series CSV; a synthetic tail when omitted");
    audit->add_option("--delta", deltas, "delta values");
    audit->add_option("--k-max", k_max, "deepest audited level");

    std::string domain_file, target;
    std::vector<double> z{0.0, 0.0};
    long paths = 100000;
    auto* hm = app.add_subcommand("hm", "harmonic measure by walk on spheres");
    add_common(hm);
    hm->add_option("domain", domain_file, "domain description JSON")->required();
    hm->add_option("--z", z, "start point re im")->expected(2);
    hm->add_option("--target", target, "outer, inner, all or arc:lo:hi");
    hm->add_option("--paths", paths, "number of paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : config_error;
    }
    for (auto* sub : {construct, verify, audit, hm})
        if (sub->parsed() && sub->count("--seed")) common.seed = seed;

    try {
        if (construct->parsed()) return cmd_construct(common);
        if (verify->parsed()) return cmd_verify(common, series, which, trials);
        if (audit->parsed()) return cmd_audit(common, audit_series, deltas, k_max);
        if (hm->parsed()) return cmd_hm(common, domain_file, z, target, paths);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return check_failed;
    }
    return check_failed;
}
