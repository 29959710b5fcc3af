#include "nullseries/pla.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/fft.hpp"

namespace nullseries {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t pow2_at_least(std::size_t n) {
    std::size_t q = 2;
    while (q < n) q *= 2;
    return q;
}

double neg_share(const std::vector<cplx>& coeffs) {
    std::size_t N = coeffs.size();
    double neg = 0.0, tot = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        double e = std::norm(coeffs[k]);
        tot += e;
        if (k > N / 2) neg += e;
    }
    return tot > 0 ? neg / tot : 0.0;
}

std::vector<double> conjugate_values(const SpectralSeries& g_spec) {
    GridFunction c = synthesize(conjugate(g_spec), g_spec.size());
    return c.real();
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// y >= 1 with y log y >= target, smallest such.
double solve_ylogy(double target) {
    if (target <= 0) return 1.0;
    double lo = 1.0, hi = 2.0;
    while (hi * std::log(hi) < target) hi *= 2;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (mid * std::log(mid) >= target ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

double negative_energy_fraction(const SpectralSeries& g_spec, double r, std::size_t Q) {
    std::vector<cplx> v = circle_values(g_spec, r, PoissonMode::analytic_completion, Q);
    for (auto& x : v) x = std::exp(x);
    fft::forward(v);
    return neg_share(v);
}

PlaFunction build_pla(const ProfileFamily& p, int n, std::size_t N, const PlaOptions& opt) {
    if (n < 0 || n > p.n_max()) fail(ErrorKind::range, "pla depth outside the family");
    if (!is_power_of_two(N)) fail(ErrorKind::shape, "grid size must be a power of two");
    if (opt.enforce_resolution && N < (std::size_t(1) << (n + 6)))
        fail(ErrorKind::resolution, "grid of " + std::to_string(N) + " points is too coarse for depth " + std::to_string(n));
    PlaFunction f;
    f.depth = n;
    f.N = N;
    f.plateau = p.plateau[size_t(n)];
    f.cells_per_tau = n > 0 ? p.set.tau(n) * double(N) / two_pi : INFINITY;
    f.g_spec = g_spectrum(p, n, N);
    f.g_point = g_point_samples(p, n, N);
    f.conj = GridFunction::from_real(conjugate_values(f.g_spec));
    f.boundary.values.resize(N);
    f.boundary.tags = f.g_point.tags;
    f.boundary.tag_rule = "pole: f = 0";
    for (std::size_t j = 0; j < N; ++j) {
        double g = f.g_point.values[j].real();
        f.boundary.values[j] = std::isinf(g) ? cplx(0.0) : std::exp(cplx(g, f.conj.values[j].real()));
    }
    f.spectrum = analyze(f.boundary);
    f.spectrum.origin = "f";
    f.spectrum.depth = n;
    f.hinf.tolerance = opt.hinf_tolerance;
    f.hinf.raw_fraction = neg_share(f.spectrum.coeffs);
    f.hinf.abel_radius = 1.0 - opt.abel_rho / double(N);
    f.hinf.abel_fraction = negative_energy_fraction(f.g_spec, f.hinf.abel_radius, N);
    f.hinf.pass = f.hinf.abel_fraction <= opt.hinf_tolerance;
    return f;
}

int TaylorLadder::depth_for(long m) const {
    if (m < 1) fail(ErrorKind::domain, "taylor depth needs m >= 1");
    int n = m == 1 ? 0 : int(std::ceil(C * std::log2(double(m)) - 1e-12));
    if (n > depth) {
        if (strict)
            fail(ErrorKind::capability, "n(m) = " + std::to_string(n) + " exceeds available depth " + std::to_string(depth) +
                                            "; largest usable m is " + std::to_string(max_usable_m()));
        n = depth;
    }
    return n;
}

long TaylorLadder::max_usable_m() const { return long(std::floor(std::exp2(double(depth) / C) + 1e-9)); }

TaylorLadder make_ladder(const ProfileFamily& p, std::size_t N, double C, bool strict) {
    TaylorLadder L;
    L.depth = p.n_max();
    L.N = N;
    L.C = C;
    L.strict = strict;
    auto fam = std::make_shared<const ProfileFamily>(p);
    auto cache = std::make_shared<std::map<int, SpectralSeries>>();
    L.circle = [fam, cache, N](int d, double r, std::size_t Q) {
        auto it = cache->find(d);
        if (it == cache->end()) it = cache->emplace(d, g_spectrum(*fam, d, N)).first;
        std::vector<cplx> v = circle_values(it->second, r, PoissonMode::analytic_completion, Q);
        for (auto& x : v) x = std::exp(x);
        return v;
    };
    return L;
}

cplx contour_coefficient(const std::vector<cplx>& samples, double r, long m) {
    std::size_t Q = samples.size();
    cplx s = 0.0;
    for (std::size_t j = 0; j < Q; ++j) {
        double th = -two_pi * double((std::size_t(m) * j) % Q) / double(Q);
        s += samples[j] * cplx(std::cos(th), std::sin(th));
    }
    return s / double(Q) * std::pow(r, -double(m));
}

cplx taylor_coeff(const TaylorLadder& L, long m) {
    if (m < 0) fail(ErrorKind::domain, "taylor coefficient index must be nonnegative");
    int d = m == 0 ? 0 : L.depth_for(m);
    double r = 1.0 - 1.0 / double(std::max(m, 2L));
    std::size_t Q = pow2_at_least(std::max<std::size_t>(8 * std::size_t(std::max(m, 1L)), 4 * L.N));
    return contour_coefficient(L.circle(d, r, Q), r, m);
}

std::vector<cplx> taylor_coeffs(const TaylorLadder& L, long m_max) {
    std::vector<cplx> out(std::size_t(m_max) + 1, 0.0);
    std::map<std::pair<long, int>, std::vector<long>> groups;  // (block, depth) -> m
    for (long m = 0; m <= m_max; ++m) {
        long block = m < 2 ? 0 : long(std::floor(std::log2(double(m))));
        groups[{block, m == 0 ? 0 : L.depth_for(m)}].push_back(m);
    }
    for (auto& [key, ms] : groups) {
        long hi = ms.back();
        double r = 1.0 - 1.0 / double(std::max(hi, 4L));
        std::size_t Q = pow2_at_least(std::max<std::size_t>(8 * std::size_t(std::max(hi, 1L)), 4 * L.N));
        std::vector<cplx> v = L.circle(key.second, r, Q);
        fft::forward(v);
        for (long m : ms) out[std::size_t(m)] = v[std::size_t(m)] / double(Q) * std::pow(r, -double(m));
    }
    return out;
}

NullSeries null_series_from(const SpectralSeries& fhat, const std::vector<cplx>& Fhat, long M, double tol) {
    if (M < 1 || fhat.half() <= M || long(Fhat.size()) <= M)
        fail(ErrorKind::range, "frequency range mismatch while assembling the series");
    NullSeries s;
    s.M = M;
    s.triviality_tolerance = tol;
    s.c.coeffs.assign(pow2_at_least(std::size_t(2 * M + 2)), 0.0);
    s.c.origin = "null-series";
    for (long m = 0; m <= M; ++m) s.c.at(m) = fhat.at(m) - Fhat[std::size_t(m)];
    for (long m = 1; m <= M; ++m) {
        s.c.at(-m) = fhat.at(-m);
        s.max_negative = std::max(s.max_negative, std::abs(s.c.at(-m)));
    }
    for (long m = -M; m <= M; ++m) s.max_abs = std::max(s.max_abs, std::abs(s.c.at(m)));
    return s;
}

NullSeries null_series(const PlaFunction& f, const ProfileFamily& p, const TaylorLadder& L, long M, double tol) {
    GridFunction masked = f.boundary;
    const auto& a = p.set.a[size_t(f.depth)];
    double sig = p.set.sigma(f.depth);
    for (std::size_t j = 0; j < masked.size(); ++j) {
        double t = masked.t(j);
        auto it = std::upper_bound(a.begin(), a.end(), t);
        if (it != a.begin() && t <= *(it - 1) + sig) masked.values[j] = 0.0;
    }
    SpectralSeries fhat = analyze(masked);
    NullSeries s = null_series_from(fhat, taylor_coeffs(L, M), M, tol);
    s.depth = f.depth;
    s.seed = p.set.seed;
    s.omega = p.omega.describe();
    s.N = f.N;
    s.ladder_C = L.C;
    s.c.depth = f.depth;
    if (s.trivial()) fail(ErrorKind::triviality, "constructed series vanishes to tolerance");
    return s;
}

DecayReport decay_report(const NullSeries& s, const WeightSpec& w, int j_lo, int j_hi, double c_min) {
    if (j_lo > j_hi || j_lo < 0) fail(ErrorKind::range, "empty decay range");
    if ((1L << j_lo) > s.M) fail(ErrorKind::range, "decay range beyond the computed spectrum");
    DecayReport r;
    r.c_min = c_min;
    r.c_hat = INFINITY;
    std::vector<double> js, defs;
    for (int j = j_lo; j <= j_hi; ++j) {
        long lo = 1L << j, hi = std::min((1L << (j + 1)) - 1, s.M);
        if (lo > s.M) break;
        DecayRow row;
        row.j = j;
        for (long m = lo; m <= hi; ++m) row.block_max = std::max(row.block_max, std::abs(s.c.at(-m)));
        row.at_dyadic = std::abs(s.c.at(-lo));
        row.omega_j = eval_weight(w, double(j));
        row.c_hat = row.block_max > 0 ? -std::log(row.block_max) / row.omega_j : INFINITY;
        row.deficit = row.block_max > 0 ? c_min * row.omega_j + std::log(row.block_max) : -INFINITY;
        r.c_hat = std::min(r.c_hat, row.c_hat);
        if (std::isfinite(row.deficit)) {
            js.push_back(j);
            defs.push_back(row.deficit);
        }
        r.rows.push_back(row);
    }
    r.deficit_slope = js.size() >= 2 ? least_squares_slope(js, defs) : 0.0;
    r.pass = r.c_hat >= c_min && r.deficit_slope <= 0.0;
    return r;
}

std::vector<long> dyadic_list(long lo, long hi) {
    std::vector<long> v;
    for (long n = std::max(lo, 1L); n <= hi; n *= 2) v.push_back(n);
    return v;
}

std::vector<double> random_escaped_points(const CantorSet& set, int depth, int count, std::uint64_t seed) {
    std::vector<double> pts;
    for (std::uint64_t i = 0; int(pts.size()) < count && i < 10'000'000; ++i) {
        double t = two_pi * counter_uniform(seed, 0x5eedULL, i);
        if (classify(set, t, depth).status == PointStatus::escaped) pts.push_back(t);
    }
    return pts;
}

NullCheckReport null_check(const NullSeries& s, const CantorSet& set, const std::vector<double>& points,
                           const std::vector<long>& N_list, double required_drop) {
    NullCheckReport rep;
    rep.required_drop = required_drop;
    rep.degenerate = s.max_abs == 0.0;
    std::vector<long> Ns = N_list;
    std::sort(Ns.begin(), Ns.end());
    if (Ns.empty() || Ns.back() > s.M) fail(ErrorKind::range, "partial-sum orders exceed the series range");
    rep.pass = !rep.degenerate;
    for (double t : points) {
        PointClass pc = classify(set, t, std::min(s.depth, set.n_max));
        if (pc.status != PointStatus::escaped)
            fail(ErrorKind::precondition, "null check point lies in K or on a singular point");
        NullCheckPoint P;
        P.t = pc.t;
        P.escape_level = pc.level;
        P.N_list = Ns;
        cplx S = s.c.at(0);
        long done = 0;
        for (long N : Ns) {
            for (long n = done + 1; n <= N; ++n) {
                double th = double(n) * P.t;
                cplx e(std::cos(th), std::sin(th));
                S += s.c.at(n) * e + s.c.at(-n) * std::conj(e);
            }
            done = N;
            P.abs_sums.push_back(std::abs(S));
        }
        P.peak = *std::max_element(P.abs_sums.begin(), P.abs_sums.end());
        P.last = P.abs_sums.back();
        P.drop = P.last > 0 ? P.peak / P.last : (P.peak > 0 ? INFINITY : 0.0);
        P.pass = !rep.degenerate && P.drop >= required_drop;
        rep.pass = rep.pass && P.pass;
        rep.points.push_back(P);
    }
    return rep;
}

std::vector<cplx> moment_integrals(const ProfileFamily& p, int n, std::size_t N, const std::vector<long>& m_list) {
    if (!is_power_of_two(N)) fail(ErrorKind::shape, "grid size must be a power of two");
    for (long m : m_list)
        if (m < 0 || std::size_t(m) >= N / 2) fail(ErrorKind::range, "moment frequency beyond the grid band");
    GridFunction g = g_point_samples(p, n, N);
    std::vector<double> conj = conjugate_values(g_spectrum(p, n, N));
    std::vector<cplx> buf(N, 0.0);
    double plateau = p.plateau[size_t(n)];
    for (std::size_t j = 0; j < N; ++j) {
        double v = g.values[j].real();
        if (v == plateau) buf[j] = std::exp(cplx(v, conj[j]));
    }
    fft::forward(buf);
    std::vector<cplx> X;
    for (long m : m_list) X.push_back(buf[std::size_t(m)] * (two_pi / double(N)));
    return X;
}

int resolved_depth(const ThicknessSchedule& s, std::size_t N, double min_cells, int cap) {
    int d = 0;
    for (int n = 1; n <= std::min(cap, s.n_max); ++n)
        if (s.tau[size_t(n)] * double(N) / two_pi >= min_cells) d = n;
    return d;
}

MomentReport moment_experiment(const WeightSpec& omega, const WeightSpec& omega2, const MomentOptions& opt,
                               bool check_refinement) {
    if (opt.m_list.size() < 2) fail(ErrorKind::value, "moment experiment needs at least two frequencies");
    if (opt.trials < 2) fail(ErrorKind::value, "moment experiment needs at least two trials");
    MomentReport rep;
    if (opt.trials < opt.min_trials) {
        rep.warning = true;
        rep.warning_text = "only " + std::to_string(opt.trials) + " trials; slope interval unreliable below " +
                           std::to_string(opt.min_trials);
    }
    ThicknessSchedule sch = build_schedule(omega, omega2, opt.max_depth);
    rep.resolved_depth = resolved_depth(sch, opt.N, opt.min_cells_per_tau, opt.max_depth);
    if (rep.resolved_depth < 1) fail(ErrorKind::resolution, "grid resolves no level of the schedule");
    TaylorLadder rule;
    rule.depth = std::min(opt.max_depth, rep.resolved_depth);
    rule.C = opt.ladder_C;
    std::map<int, std::vector<std::size_t>> by_depth;
    for (std::size_t i = 0; i < opt.m_list.size(); ++i) by_depth[rule.depth_for(opt.m_list[i])].push_back(i);
    rep.depth_used = by_depth.rbegin()->first;
    rep.cells_per_tau = sch.tau[size_t(rep.depth_used)] * double(opt.N) / two_pi;

    std::size_t M = opt.m_list.size();
    std::vector<std::vector<double>> x4(std::size_t(opt.trials), std::vector<double>(M));
    auto run_trial = [&](int trial, std::size_t N) {
        CantorSet set = generate(sch, rep.depth_used, opt.seed_base + std::uint64_t(trial));
        ProfileFamily fam = build_profile(set, omega);
        std::vector<double> out(M);
        for (auto& [d, idx] : by_depth) {
            std::vector<long> ms;
            for (auto i : idx) ms.push_back(opt.m_list[i]);
            auto X = moment_integrals(fam, d, N, ms);
            for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = std::pow(std::abs(X[k]), 4);
        }
        return out;
    };
    for (int t = 0; t < opt.trials; ++t) x4[std::size_t(t)] = run_trial(t, opt.N);

    auto fit = [&](const std::vector<int>& which) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < M; ++i) {
            double mean = 0;
            for (int t : which) mean += x4[std::size_t(t)][i];
            mean /= double(which.size());
            lx.push_back(std::log(double(opt.m_list[i])));
            ly.push_back(std::log(mean));
        }
        return least_squares_slope(lx, ly);
    };
    std::vector<int> all(std::size_t(opt.trials));
    for (int t = 0; t < opt.trials; ++t) all[std::size_t(t)] = t;
    rep.slope = fit(all);
    for (std::size_t i = 0; i < M; ++i) {
        MomentRow row;
        row.m = opt.m_list[i];
        row.depth = rule.depth_for(row.m);
        double mean = 0, sq = 0;
        for (int t = 0; t < opt.trials; ++t) mean += x4[std::size_t(t)][i];
        mean /= opt.trials;
        for (int t = 0; t < opt.trials; ++t) sq += std::pow(x4[std::size_t(t)][i] - mean, 2);
        row.mean_x4 = mean;
        row.stderr_x4 = std::sqrt(sq / (opt.trials - 1) / opt.trials);
        rep.rows.push_back(row);
    }
    std::vector<double> boots;
    for (int b = 0; b < opt.bootstrap; ++b) {
        std::vector<int> pick(std::size_t(opt.trials));
        for (int t = 0; t < opt.trials; ++t)
            pick[std::size_t(t)] = int(counter_uniform(opt.seed_base, 0xb007ULL, std::uint64_t(b) * std::uint64_t(opt.trials) + std::uint64_t(t)) * opt.trials);
        boots.push_back(fit(pick));
    }
    if (!boots.empty()) {
        std::sort(boots.begin(), boots.end());
        rep.slope_lo = boots[std::size_t(0.05 * double(boots.size()))];
        rep.slope_hi = boots[std::min(boots.size() - 1, std::size_t(0.95 * double(boots.size())))];
    }
    if (check_refinement) {
        auto fine = run_trial(0, opt.N * 2);
        for (std::size_t i = 0; i < M; ++i) {
            double a = std::pow(x4[0][i], 0.25), b = std::pow(fine[i], 0.25);
            rep.refinement_change = std::max(rep.refinement_change, std::abs(a - b) / std::max(a, 1e-300));
        }
        if (rep.refinement_change > 0.1) {
            rep.warning = true;
            rep.warning_text += (rep.warning_text.empty() ? "" : "; ") + std::string("moment integrals not converged under grid refinement");
        }
    }
    rep.pass = rep.slope <= rep.threshold;
    return rep;
}

SmoothnessReport verify_smoothness(const PlaFunction& f, const ProfileFamily& p, int D, int probes, std::uint64_t seed) {
    if (D < 0 || D > 4) fail(ErrorKind::capability, "finite-difference smoothness check supports D <= 4");
    SmoothnessReport rep;
    rep.D = D;
    SpectralSeries cs = conjugate(f.g_spec);
    long h = cs.half();
    auto conj_at = [&](double t) {
        double s = 0.0;
        for (long k = 1; k < h; ++k) s += 2.0 * (cs.at(k) * cplx(std::cos(k * t), std::sin(k * t))).real();
        return s;
    };
    auto f_at = [&](double t) { return std::exp(cplx(g_eval(p, f.depth, t), conj_at(t))); };
    const double grid = two_pi / double(f.N);
    for (double t : random_escaped_points(p.set, f.depth, probes, seed)) {
        double d = distance(p.set, t, DistanceTarget::K_prime, f.depth);
        double delta = d / (4.0 * (D + 1));
        if (D > 0 && delta < grid) {
            ++rep.excluded;
            continue;
        }
        SmoothRow row;
        row.t = t;
        row.dist = d;
        cplx fv = f_at(t);
        row.abs_f = std::abs(fv);
        cplx der = 0.0;
        if (D == 0) der = fv;
        else {
            double binom = 1.0;
            for (int i = 0; i <= D; ++i) {
                if (i > 0) binom = binom * (D - i + 1) / i;
                double sgn = ((D - i) % 2 == 0) ? 1.0 : -1.0;
                der += sgn * binom * f_at(t + (i - 0.5 * D) * delta);
            }
            der /= std::pow(delta, D);
        }
        row.abs_deriv = std::abs(der);
        if (D > 0) {
            double target = std::log(row.abs_deriv * std::pow(d, 2 * D) / row.abs_f);
            row.needed_C = solve_ylogy(target) / D;
        }
        rep.fitted_C = std::max(rep.fitted_C, row.needed_C);
        rep.rows.push_back(row);
    }
    rep.pass = !rep.rows.empty() && std::isfinite(rep.fitted_C);
    return rep;
}

TransferReport transfer_inequality(const GridFunction& f, int D) {
    TransferReport rep;
    rep.D = D;
    SpectralSeries c = analyze(f);
    SpectralSeries d = c;
    long h = c.half();
    for (long n = -h + 1; n <= h; ++n) d.at(n) = c.at(n) * std::pow(cplx(0.0, double(n)), D);
    GridFunction der = synthesize(d, f.size());
    for (auto& v : der.values) rep.sup_derivative = std::max(rep.sup_derivative, std::abs(v));
    for (long n = -h + 1; n <= h; ++n) {
        if (n == 0) continue;
        double lhs = std::abs(c.at(n)) * std::pow(double(std::abs(n)), D);
        rep.worst_ratio = std::max(rep.worst_ratio, lhs / rep.sup_derivative);
    }
    rep.pass = rep.worst_ratio <= 1.0 + 1e-9;
    return rep;
}

}  // namespace nullseries

namespace nullseries {

void to_json(nlohmann::json& j, const HInfReport& r) {
    j = {{"raw_fraction", r.raw_fraction},
         {"abel_fraction", r.abel_fraction},
         {"abel_radius", r.abel_radius},
         {"tolerance", r.tolerance},
         {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const DecayReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"j", x.j},
                        {"block_max", x.block_max},
                        {"at_dyadic", x.at_dyadic},
                        {"omega_j", x.omega_j},
                        {"c_hat", x.c_hat},
                        {"deficit", x.deficit}});
    j = {{"rows", rows},
         {"c_hat", r.c_hat},
         {"c_min", r.c_min},
         {"deficit_slope", r.deficit_slope},
         {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const NullCheckReport& r) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points)
        pts.push_back({{"t", p.t},
                       {"escape_level", p.escape_level},
                       {"N", p.N_list},
                       {"abs_partial_sums", p.abs_sums},
                       {"peak", p.peak},
                       {"last", p.last},
                       {"drop", p.drop},
                       {"pass", p.pass}});
    j = {{"points", pts}, {"required_drop", r.required_drop}, {"degenerate", r.degenerate}, {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const MomentReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"m", x.m}, {"depth", x.depth}, {"mean_abs_x4", x.mean_x4}, {"stderr", x.stderr_x4}});
    j = {{"rows", rows},
         {"slope", r.slope},
         {"slope_ci90", {r.slope_lo, r.slope_hi}},
         {"threshold", r.threshold},
         {"depth_used", r.depth_used},
         {"resolved_depth", r.resolved_depth},
         {"cells_per_tau", r.cells_per_tau},
         {"refinement_change", r.refinement_change},
         {"warning", r.warning},
         {"warning_text", r.warning_text},
         {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const SmoothnessReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"t", x.t},
                        {"dist", x.dist},
                        {"abs_f", x.abs_f},
                        {"abs_deriv", x.abs_deriv},
                        {"needed_C", x.needed_C}});
    j = {{"D", r.D}, {"rows", rows}, {"excluded", r.excluded}, {"fitted_C", r.fitted_C}, {"pass", r.pass}};
}

}  // namespace nullseries
