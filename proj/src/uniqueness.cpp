#include "nullseries/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nullseries/cantor.hpp"
#include "nullseries/errors.hpp"
#include "nullseries/fft.hpp"

namespace nullseries {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double positive_mod(double x, double m) {
    double r = std::fmod(x, m);
    return r < 0 ? r + m : r;
}

struct Nearest {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    Component comp = Component::outer;
    std::size_t disk = 0;

    void offer(double d, Component c, std::size_t i) {
        if (d < d1) {
            d2 = d1;
            d1 = d;
            comp = c;
            disk = i;
        } else if (d < d2) {
            d2 = d;
        }
    }
};

Nearest nearest(const Domain& dom, cplx z) {
    Nearest n;
    double a = std::abs(z);
    n.offer(1.0 - a, Component::outer, 0);
    if (dom.inner > 0) n.offer(a - dom.inner, Component::inner, 0);
    for (std::size_t i = 0; i < dom.disks.size(); ++i)
        n.offer(std::abs(z - dom.disks[i].center) - dom.disks[i].radius, Component::disk, i);
    return n;
}

ExitPoint project(const Domain& dom, const Nearest& n, cplx x) {
    ExitPoint e;
    e.component = n.comp;
    e.disk = n.disk;
    double a = std::abs(x);
    switch (n.comp) {
    case Component::outer:
        e.w = a > 0 ? x / a : cplx(1, 0);
        break;
    case Component::inner:
        e.w = a > 0 ? dom.inner * x / a : cplx(dom.inner, 0);
        break;
    case Component::disk: {
        const auto& D = dom.disks[n.disk];
        cplx v = x - D.center;
        e.w = D.center + D.radius * v / std::abs(v);
        break;
    }
    }
    return e;
}

// Length of the intersection of two arcs.
double arc_overlap(const Arc& a, const Arc& b) {
    double la = a.length(), lb = b.length();
    double start = positive_mod(b.lo - a.lo, two_pi);
    double total = 0;
    for (double shift : {-two_pi, 0.0}) {
        double lo = std::max(0.0, start + shift), hi = std::min(la, start + shift + lb);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

}  // namespace

double Arc::length() const {
    double d = hi - lo;
    if (d >= two_pi) return two_pi;
    return positive_mod(d, two_pi);
}

bool Arc::contains(double theta) const {
    return positive_mod(theta - lo, two_pi) <= length();
}

OrthogonalDisk privalov_disk(const Arc& I) {
    double half = 0.5 * I.length();
    if (!(half > 0) || half >= 0.5 * std::numbers::pi)
        fail(ErrorKind::domain, "Privalov disk needs a complementary arc shorter than pi");
    double mid = I.lo + half;
    OrthogonalDisk d;
    d.center = std::polar(1.0 / std::cos(half), mid);
    d.radius = std::tan(half);
    d.over = I;
    return d;
}

Domain Domain::unit_disk() { return Domain{}; }

Domain Domain::annulus(double inner_radius) {
    if (!(inner_radius > 0 && inner_radius < 1)) fail(ErrorKind::domain, "annulus inner radius must lie in (0,1)");
    Domain d;
    d.kind = DomainKind::annulus;
    d.inner = inner_radius;
    return d;
}

Domain Domain::privalov(std::vector<Arc> E, double inner_radius) {
    if (E.empty()) fail(ErrorKind::domain, "Privalov domain needs a nonempty set E");
    if (inner_radius < 0 || inner_radius >= 1) fail(ErrorKind::domain, "inner cutoff must lie in [0,1)");
    Domain d;
    d.kind = DomainKind::privalov;
    d.inner = inner_radius;
    double covered = 0;
    for (auto& a : E) {
        if (a.length() < 0) fail(ErrorKind::domain, "bad arc");
        covered += a.length();
    }
    if (covered > two_pi * (1 + 1e-12)) fail(ErrorKind::domain, "arcs of E overlap");
    if (E.size() == 1 && E[0].length() >= two_pi) {
        d.E = E;
        return d;
    }
    for (auto& a : E) a.lo = positive_mod(a.lo, two_pi), a.hi = a.lo + a.length();
    std::sort(E.begin(), E.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
    for (std::size_t i = 0; i < E.size(); ++i) {
        const Arc& cur = E[i];
        const Arc& next = E[(i + 1) % E.size()];
        double gap_lo = cur.hi;
        double gap_hi = next.lo + (i + 1 == E.size() ? two_pi : 0.0);
        if (gap_hi < gap_lo - 1e-15) fail(ErrorKind::domain, "arcs of E overlap");
        if (gap_hi - gap_lo <= 0) continue;
        d.disks.push_back(privalov_disk(Arc{gap_lo, gap_hi}));
    }
    d.E = E;
    return d;
}

bool Domain::contains(cplx z) const {
    double a = std::abs(z);
    if (!(a < 1.0) || (inner > 0 && !(a > inner))) return false;
    for (const auto& D : disks)
        if (!(std::abs(z - D.center) > D.radius)) return false;
    return true;
}

double Domain::boundary_distance(cplx z) const { return nearest(*this, z).d1; }

Target Target::outer_circle() {
    Target t;
    t.outer = true;
    return t;
}

Target Target::outer_arc(double lo, double hi) {
    Target t;
    t.outer = true;
    t.restrict_arc = true;
    t.arc = Arc{lo, hi};
    return t;
}

Target Target::inner_circle() {
    Target t;
    t.inner = true;
    return t;
}

Target Target::everything() {
    Target t;
    t.outer = t.inner = t.disks = true;
    return t;
}

bool Target::hit(const ExitPoint& e) const {
    switch (e.component) {
    case Component::outer:
        return outer && (!restrict_arc || arc.contains(std::arg(e.w)));
    case Component::inner:
        return inner;
    case Component::disk:
        return disks;
    }
    return false;
}

ExitPoint walk_on_spheres(const Domain& d, cplx z, std::uint64_t seed, std::uint64_t index,
                          const WalkOptions& opt, long* steps, bool* ambiguous) {
    cplx x = z;
    long s = 0;
    for (;; ++s) {
        Nearest n = nearest(d, x);
        if (n.d1 < opt.eps_stop || s >= opt.max_steps) {
            if (steps) *steps = s;
            if (ambiguous) *ambiguous = n.d2 < opt.eps_stop || s >= opt.max_steps;
            return project(d, n, x);
        }
        double u = counter_uniform(seed, index, std::uint64_t(s));
        x += std::polar(opt.step_fraction * n.d1, two_pi * u);
    }
}

HarmonicMeasureEstimate exit_expectation(const Domain& d, cplx z, const std::function<double(const ExitPoint&)>& h,
                                         long paths, std::uint64_t seed, const WalkOptions& opt) {
    if (paths < 1000) fail(ErrorKind::precondition, "harmonic measure needs at least 1000 paths");
    if (!d.contains(z) || !(d.boundary_distance(z) > 0)) fail(ErrorKind::domain, "start point is not inside the domain");
    Neumaier sum, sq, steps;
    long amb = 0;
    for (long p = 0; p < paths; ++p) {
        long st = 0;
        bool a = false;
        ExitPoint e = walk_on_spheres(d, z, seed, std::uint64_t(p), opt, &st, &a);
        double v = h(e);
        sum.add(v);
        sq.add(v * v);
        steps.add(double(st));
        amb += a ? 1 : 0;
    }
    HarmonicMeasureEstimate r;
    double n = double(paths);
    r.value = sum.value() / n;
    double var = std::max(0.0, sq.value() / n - r.value * r.value);
    r.stderr_ = std::sqrt(var / (n - 1));
    r.paths = paths;
    r.seed = seed;
    r.step_fraction = opt.step_fraction;
    r.eps_stop = opt.eps_stop;
    r.ambiguous = amb;
    r.ambiguous_fraction = double(amb) / n;
    r.ambiguous_ok = r.ambiguous_fraction < 0.005;
    r.mean_steps = steps.value() / n;
    return r;
}

HarmonicMeasureEstimate harmonic_measure(const Domain& d, cplx z, const Target& target, long paths,
                                         std::uint64_t seed, const WalkOptions& opt) {
    return exit_expectation(d, z, [&](const ExitPoint& e) { return target.hit(e) ? 1.0 : 0.0; }, paths, seed, opt);
}

HarmprivScenario HarmprivScenario::centered_gap(double eps, double l, double zeta, double fill) {
    HarmprivScenario s;
    s.eps = eps;
    s.l = l;
    s.zeta = zeta;
    double len = fill * eps * eps * l;
    if (len > 0) s.gaps.push_back(Arc{zeta - 0.5 * len, zeta + 0.5 * len});
    return s;
}

cplx HarmprivScenario::z() const { return std::polar(1.0 - eps * l, zeta); }

HarmprivReport check_harmpriv(const HarmprivScenario& s, long paths, std::uint64_t seed, double C1_max) {
    if (!(s.eps > 0 && s.eps <= 0.25)) fail(ErrorKind::precondition, "eps must lie in (0, 1/4]");
    if (!(s.l > 0 && s.l < 1)) fail(ErrorKind::precondition, "l must lie in (0,1) so that |z| > 1 - eps");
    HarmprivReport r;
    r.eps = s.eps;
    r.l = s.l;
    r.allowed_mass = s.eps * s.eps * s.l;
    Arc window{s.zeta - 0.5 * s.l, s.zeta + 0.5 * s.l};
    for (const auto& g : s.gaps) r.gap_mass += arc_overlap(window, g);
    if (r.gap_mass > r.allowed_mass * (1 + 1e-12))
        fail(ErrorKind::precondition, "scenario leaves more than eps^2 l of the window outside E");

    std::vector<Arc> E;
    if (s.gaps.empty()) {
        E.push_back(Arc{0, two_pi});
    } else {
        std::vector<Arc> gaps = s.gaps;
        for (auto& g : gaps) g.lo = positive_mod(g.lo, two_pi), g.hi = g.lo + Arc{g.lo, g.hi}.length();
        std::sort(gaps.begin(), gaps.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            double lo = gaps[i].hi;
            double hi = gaps[(i + 1) % gaps.size()].lo + (i + 1 == gaps.size() ? two_pi : 0.0);
            if (hi <= lo) fail(ErrorKind::precondition, "scenario gaps overlap");
            E.push_back(Arc{lo, hi});
        }
    }
    Domain d = Domain::privalov(E, 1.0 - s.l);
    r.estimate = harmonic_measure(d, s.z(), Target::outer_circle(), paths, seed);
    r.deficit = 1.0 - r.estimate.value;
    r.fitted_C1 = r.deficit / s.eps;
    r.C1_max = C1_max;
    r.pass = r.fitted_C1 <= C1_max && r.estimate.ambiguous_ok;
    return r;
}

TruncationResult truncation_lemma(const std::vector<double>& L, const std::vector<double>& mu, double A, double B,
                                  double D) {
    if (L.size() != mu.size() || L.empty()) fail(ErrorKind::precondition, "samples and weights differ in length");
    if (!(A < B)) fail(ErrorKind::precondition, "need A < B");
    if (!(D > A && D < B)) fail(ErrorKind::precondition, "D must lie strictly between A and B");
    Neumaier wsum, mean, lhs;
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (mu[i] < 0) fail(ErrorKind::precondition, "negative weight");
        if (L[i] < A || L[i] > B) fail(ErrorKind::precondition, "sample outside [A,B]");
        wsum.add(mu[i]);
        mean.add(mu[i] * L[i]);
        lhs.add(mu[i] * std::max(L[i], D));
    }
    if (std::abs(wsum.value() - 1.0) > 1e-12) fail(ErrorKind::precondition, "weights must sum to one");
    TruncationResult r;
    r.A = A, r.B = B, r.D = D;
    r.mean = mean.value();
    if (r.mean < A || r.mean > B) fail(ErrorKind::precondition, "mean outside [A,B]");
    r.eps = (r.mean - A) / (B - A);
    r.lhs = lhs.value();
    r.rhs = r.eps * B + (1 - r.eps) * D;
    r.holds = r.lhs <= r.rhs + 1e-12 * (std::abs(A) + std::abs(B) + 1);
    return r;
}

TruncationSweep truncation_sweep(long instances, std::uint64_t seed) {
    TruncationSweep s;
    s.max_excess = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < instances; ++i) {
        std::uint64_t idx = 0;
        auto u = [&] { return counter_uniform(seed, std::uint64_t(i), idx++); };
        double A = -(0.1 + 10 * u());
        double B = 0.1 + 10 * u();
        std::size_t n = 2 + std::size_t(19 * u());
        std::vector<double> L(n), mu(n);
        double tot = 0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = u();
            L[j] = v < 0.1 ? A : v > 0.9 ? B : A + (B - A) * u();
            mu[j] = u() + 1e-3;
            tot += mu[j];
        }
        Neumaier renorm;
        for (auto& m : mu) m /= tot, renorm.add(m);
        mu.back() += 1.0 - renorm.value();
        double D = A + (B - A) * (0.001 + 0.998 * u());
        TruncationResult r = truncation_lemma(L, mu, A, B, D);
        ++s.instances;
        if (!r.holds) ++s.failures;
        s.max_excess = std::max(s.max_excess, r.lhs - r.rhs);
    }
    return s;
}

SpectralSeries synthetic_tail(const WeightSpec& w, long m_max) {
    if (m_max < 1) fail(ErrorKind::value, "tail needs m_max >= 1");
    std::size_t N = 2;
    while (N < 2 * std::size_t(m_max + 1)) N *= 2;
    SpectralSeries s;
    s.coeffs.assign(N, cplx(0, 0));
    s.origin = "synthetic_tail " + w.describe();
    for (long m = 1; m <= m_max; ++m) s.at(-m) = std::exp(-eval_weight(w, std::log2(double(m))));
    return s;
}

long negative_extent(const SpectralSeries& c) { return c.half() - 1; }

std::vector<cplx> fk_circle(const SpectralSeries& c, int k, double r, std::size_t Q) {
    long lo = 1L << k;
    if (lo > negative_extent(c))
        fail(ErrorKind::capability, "f_" + std::to_string(k) + " needs c(n) for n >= -" + std::to_string(lo));
    std::vector<cplx> bins(Q, cplx(0, 0));
    double lr = std::log(r);
    long sQ = long(Q);
    for (long n = -lo; n <= c.half(); ++n) {
        cplx v = c.at(n);
        if (v == cplx(0, 0)) continue;
        double scale = std::exp(double(n) * lr);
        if (scale == 0) continue;
        bins[std::size_t(((n % sQ) + sQ) % sQ)] += v * scale;
    }
    fft::backward(bins);
    return bins;
}

namespace {

struct CircleIntegral {
    double value = 0;
    double max_truncated = -std::numeric_limits<double>::infinity();
    std::size_t excluded = 0;
};

class AuditContext {
public:
    AuditContext(const SpectralSeries& c, const WeightSpec& w, double delta, const AuditOptions& opt)
        : c_(c), w_(w), opt_(opt) {
        rho_ = 1.0 - std::sqrt(delta);
        z0_ = std::polar(rho_, opt.z0_angle);
    }

    double omega(double t) const { return std::min(eval_weight(w_, t), t * t); }
    static double r(int k) { return 1.0 - std::pow(4.0, -k); }
    double A(int k) const { return -0.5 * omega(double(k)); }
    double rho() const { return rho_; }
    cplx z0() const { return z0_; }

    std::size_t nodes(int k, double radius) const {
        std::size_t Q = std::size_t(1) << std::max(opt_.nodes_min_log2, k + opt_.nodes_extra_log2);
        double gap = radius - rho_;
        if (gap > 0)
            while (double(Q) * gap < 32 * two_pi) Q *= 2;
        return Q;
    }

    // int [l_kf]_{floor} dP on circle r_kr, P the Poisson measure from z0.
    CircleIntegral integral(int kf, int kr, double floor) const {
        double rr = r(kr);
        std::size_t Q = nodes(std::max(kf, kr), rr);
        std::vector<cplx> f = fk_circle(c_, kf, rr, Q);
        Neumaier num, den;
        CircleIntegral out;
        double pn = rr * rr - rho_ * rho_;
        for (std::size_t j = 0; j < Q; ++j) {
            double a = std::abs(f[j]);
            double l = std::log(a);
            if (!(a > 0) || !std::isfinite(l)) {
                ++out.excluded;
                continue;
            }
            double t = std::max(l, floor);
            cplx x = std::polar(rr, two_pi * double(j) / double(Q));
            double P = pn / std::norm(x - z0_);
            num.add(t * P);
            den.add(P);
            out.max_truncated = std::max(out.max_truncated, t);
        }
        out.value = num.value() / den.value();
        return out;
    }

    double max_log_on(int kf, double radius) const {
        std::vector<cplx> f = fk_circle(c_, kf, radius, nodes(kf, 2.0));
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& v : f) {
            double l = std::log(std::abs(v));
            if (std::isfinite(l)) m = std::max(m, l);
        }
        return m;
    }

private:
    const SpectralSeries& c_;
    const WeightSpec& w_;
    AuditOptions opt_;
    double rho_ = 0;
    cplx z0_;
};

bool le_tol(double a, double b) { return a <= b + 1e-12 * (1 + std::abs(a) + std::abs(b)); }

}  // namespace

UniquenessAudit audit_uniqueness(const SpectralSeries& c, const WeightSpec& w, double delta, int k_max,
                               const AuditOptions& opt) {
    if (!(delta > 0 && delta < 1)) fail(ErrorKind::domain, "delta must lie in (0,1)");
    if (reciprocal_sum(w) == Divergence::divergent)
        fail(ErrorKind::contract, "the audit needs a weight with convergent sum 1/omega");
    bool any = false;
    for (const auto& v : c.coeffs) any = any || v != cplx(0, 0);
    if (!any) fail(ErrorKind::triviality, "the audit needs a nontrivial series");

    AuditContext ctx(c, w, delta, opt);
    UniquenessAudit a;
    a.delta = delta;
    a.z0 = ctx.z0();
    a.k_max = k_max;
    a.omega = w.describe();
    int k_lo = 1;
    while (!(AuditContext::r(k_lo) > ctx.rho())) ++k_lo;
    a.k_lo = k_lo;
    if (k_max < k_lo + 1)
        fail(ErrorKind::precondition, "k_max must exceed the first applicable level " + std::to_string(k_lo));
    int k0 = int(std::ceil(std::log2(1.0 / delta) - 1e-12)) + 1;
    int k_top = std::max(k_max + 1, k0);
    if ((1L << k_top) > negative_extent(c))
        fail(ErrorKind::capability, "series stops before n = -" + std::to_string(1L << k_top));

    std::vector<int> fit_levels;
    for (int k = std::max(1, k_lo - 1); k <= k_max + 1; ++k) fit_levels.push_back(k);
    if (k0 > k_max + 1) fit_levels.push_back(k0);
    double c2 = -std::numeric_limits<double>::infinity();
    for (int k : fit_levels) {
        double lo = 1.0 - std::pow(2.0, -k), hi = 1.0 - std::pow(8.0, -k);
        std::vector<double> radii;
        for (int i = 0; i < opt.annulus_radii; ++i) {
            double s = 1.0 + 2.0 * i / double(opt.annulus_radii - 1);
            radii.push_back(1.0 - std::pow(2.0, -k * s));
        }
        for (int kk : {k - 1, k}) {
            if (kk < 1) continue;
            double rr = AuditContext::r(kk);
            if (rr >= lo && rr <= hi) radii.push_back(rr);
        }
        for (double rr : radii) c2 = std::max(c2, ctx.max_log_on(k, rr) / k);
    }
    a.C2_measured = c2;
    a.C2 = std::max(c2, 0.0);
    auto B = [&](int k) { return a.C2 * k; };

    for (int k = k_lo; k <= k_max + 1; ++k) {
        AuditRow row;
        row.k = k;
        row.r = AuditContext::r(k);
        row.A = ctx.A(k);
        row.B = B(k);
        CircleIntegral I = ctx.integral(k, k, row.A);
        row.I = I.value;
        row.eps = (row.I - row.A) / (row.B - row.A);
        row.max_truncated = I.max_truncated;
        row.bounded = le_tol(I.max_truncated, row.B);
        row.excluded_nodes = I.excluded;
        if (k - 1 >= k_lo) {
            CircleIntegral Ip = ctx.integral(k, k - 1, row.A);
            row.has_prime = true;
            row.I_prime = Ip.value;
            row.eps_prime = (row.I_prime - row.A) / (row.B - row.A);
            row.bounded = row.bounded && le_tol(Ip.max_truncated, row.B);
            row.excluded_nodes += Ip.excluded;
        }
        a.excluded_nodes += row.excluded_nodes;
        a.rows.push_back(row);
    }

    // swap residuals, indexed by the lower level j
    auto row_of = [&](int k) -> AuditRow& { return a.rows[std::size_t(k - k_lo)]; };
    std::vector<double> J(std::size_t(k_max + 2), 0.0);
    for (int k = k_lo; k <= k_max; ++k) {
        AuditRow& cur = row_of(k);
        const AuditRow& nxt = row_of(k + 1);
        cur.measure_swap_lhs = nxt.I_prime;
        cur.measure_swap_rhs = nxt.I;
        CircleIntegral Jk = ctx.integral(k + 1, k, cur.A);
        J[std::size_t(k)] = Jk.value;
        cur.level_swap_lhs = cur.I;
        cur.level_swap_rhs = Jk.value;
        cur.main_lhs = Jk.value;
        cur.main_rhs = nxt.eps_prime * nxt.B + (1 - nxt.eps_prime) * cur.A;
        double r1 = cur.measure_swap_lhs - cur.measure_swap_rhs;
        if (!le_tol(cur.measure_swap_lhs, cur.measure_swap_rhs))
            a.C_measure_swap = std::max(a.C_measure_swap, r1 / (double(std::max(k, 1)) * std::max(k, 1) * std::pow(2.0, -k)));
        double r2 = cur.level_swap_lhs - cur.level_swap_rhs;
        if (!le_tol(cur.level_swap_lhs, cur.level_swap_rhs))
            a.C_level_swap = std::max(a.C_level_swap, r2 / std::exp(-0.5 * ctx.omega(double(k))));
    }

    bool all = true;
    for (int k = k_lo + 1; k <= k_max; ++k) {
        AuditRow& cur = row_of(k);
        const AuditRow& nxt = row_of(k + 1);
        int j = k - 1;
        double slack = a.C_measure_swap * double(std::max(j, 1)) * std::max(j, 1) * std::pow(2.0, -j) +
                       a.C_level_swap * std::exp(-0.5 * ctx.omega(double(k)));
        double gap = cur.B - cur.A;
        cur.has_recursion = true;
        cur.ineq_lhs = cur.eps_prime;
        cur.ineq_rhs = nxt.eps_prime * (1 + a.C2 / gap) + slack / gap;
        cur.pass = le_tol(cur.main_lhs, cur.main_rhs) && cur.ineq_lhs <= cur.ineq_rhs + 1e-10 && cur.bounded;
        all = all && cur.pass;
        double om = ctx.omega(double(k));
        double denom = nxt.eps_prime / om + k * std::pow(2.0, -k);
        if (denom > 0) a.C_omega = std::max(a.C_omega, (cur.eps_prime - nxt.eps_prime) / denom);
    }
    a.recursion_pass = all;
    a.eps_in_unit = true;
    for (const auto& row : a.rows) {
        auto in = [](double e) { return e >= -1e-12 && e <= 1 + 1e-12; };
        a.eps_in_unit = a.eps_in_unit && in(row.eps) && (!row.has_prime || in(row.eps_prime));
    }

    LaurentChain& ch = a.chain;
    ch.k0 = k0;
    double A0 = ctx.A(k0);
    double I0 = ctx.integral(k0, k0, A0).value;
    ch.eps_k0 = (I0 - A0) / (B(k0) - A0);
    ch.eps_over_sqrt_delta = ch.eps_k0 / std::sqrt(delta);
    ch.max_log_f = ctx.max_log_on(k0, ctx.rho());
    ch.omega_at = ctx.omega(std::log2(1.0 / delta));
    ch.c = -ch.max_log_f / ch.omega_at;
    ch.n_lo = -(1L << k0);
    ch.n_hi = c.half() - 1;
    double lr = std::log(ctx.rho());
    for (long n = ch.n_lo; n <= ch.n_hi; ++n) {
        double v = std::abs(c.at(n));
        if (v == 0) continue;
        double log_bound = (-1.0 - double(n)) * lr + ch.max_log_f;
        ch.worst_ratio = std::max(ch.worst_ratio, std::exp(std::log(v) - log_bound));
    }
    ch.laurent_holds = ch.worst_ratio <= 1 + 1e-9;
    ch.collapse = ch.c > 0;

    std::ostringstream notes;
    notes << "continuity set replaced by sampled-circle maxima; omega capped by t^2";
    if (a.C2_measured < 0) notes << "; measured C2 negative, B_k uses 0";
    if (a.excluded_nodes) notes << "; " << a.excluded_nodes << " nodes with f_k = 0 excluded";
    if (!ch.collapse) notes << "; no collapse: max log|f_k0| on |z| = 1 - sqrt(delta) is not negative";
    a.notes = notes.str();
    return a;
}

ChainFit fit_chain(const std::vector<UniquenessAudit>& audits) {
    ChainFit f;
    f.c_fit = std::numeric_limits<double>::infinity();
    f.laurent_holds = f.recursion_pass = !audits.empty();
    for (const auto& a : audits) {
        f.deltas.push_back(a.delta);
        f.c_values.push_back(a.chain.c);
        f.c_fit = std::min(f.c_fit, a.chain.c);
        f.laurent_holds = f.laurent_holds && a.chain.laurent_holds;
        f.recursion_pass = f.recursion_pass && a.recursion_pass;
    }
    if (audits.empty()) f.c_fit = 0;
    f.pass = f.recursion_pass && f.laurent_holds && f.c_fit > 0;
    return f;
}

void to_json(nlohmann::json& j, const HarmonicMeasureEstimate& e) {
    j = {{"value", e.value},
         {"stderr", e.stderr_},
         {"paths", e.paths},
         {"seed", e.seed},
         {"step_fraction", e.step_fraction},
         {"eps_stop", e.eps_stop},
         {"ambiguous", e.ambiguous},
         {"ambiguous_fraction", e.ambiguous_fraction},
         {"ambiguous_ok", e.ambiguous_ok},
         {"mean_steps", e.mean_steps}};
}

void to_json(nlohmann::json& j, const HarmprivReport& r) {
    j = {{"eps", r.eps},           {"l", r.l},
         {"gap_mass", r.gap_mass}, {"allowed_mass", r.allowed_mass},
         {"estimate", r.estimate}, {"deficit", r.deficit},
         {"fitted_C1", r.fitted_C1}, {"C1_max", r.C1_max},
         {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const UniquenessAudit& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : a.rows) {
        nlohmann::json x = {{"k", r.k},       {"r_k", r.r},          {"A_k", r.A},
                            {"B_k", r.B},     {"audit_I_k", r.I},    {"eps_k", r.eps},
                            {"bounded", r.bounded}, {"excluded_nodes", r.excluded_nodes}};
        if (r.has_prime) x["audit_I_prime_k"] = r.I_prime, x["eps_prime_k"] = r.eps_prime;
        if (r.has_recursion) {
            x["measure_swap"] = {{"lhs", r.measure_swap_lhs}, {"rhs", r.measure_swap_rhs}};
            x["level_swap"] = {{"lhs", r.level_swap_lhs}, {"rhs", r.level_swap_rhs}};
            x["truncation"] = {{"lhs", r.main_lhs}, {"rhs", r.main_rhs}};
            x["ineq_lhs"] = r.ineq_lhs;
            x["ineq_rhs"] = r.ineq_rhs;
            x["pass"] = r.pass;
        }
        rows.push_back(x);
    }
    const LaurentChain& c = a.chain;
    j = {{"delta", a.delta},
         {"z0", {a.z0.real(), a.z0.imag()}},
         {"k_lo", a.k_lo},
         {"k_max", a.k_max},
         {"omega", a.omega},
         {"C2_measured", a.C2_measured},
         {"C2", a.C2},
         {"C_measure_swap", a.C_measure_swap},
         {"C_level_swap", a.C_level_swap},
         {"C_omega", a.C_omega},
         {"rows", rows},
         {"chain",
          {{"k0", c.k0},
           {"eps_k0", c.eps_k0},
           {"eps_over_sqrt_delta", c.eps_over_sqrt_delta},
           {"max_log_f", c.max_log_f},
           {"omega_at", c.omega_at},
           {"c", c.c},
           {"n_range", {c.n_lo, c.n_hi}},
           {"worst_ratio", c.worst_ratio},
           {"laurent_holds", c.laurent_holds},
           {"collapse", c.collapse}}},
         {"excluded_nodes", a.excluded_nodes},
         {"recursion_pass", a.recursion_pass},
         {"eps_in_unit", a.eps_in_unit},
         {"notes", a.notes}};
}

void to_json(nlohmann::json& j, const ChainFit& f) {
    j = {{"deltas", f.deltas},
         {"c_values", f.c_values},
         {"c_fit", f.c_fit},
         {"laurent_holds", f.laurent_holds},
         {"recursion_pass", f.recursion_pass},
         {"pass", f.pass}};
}

Domain domain_from_json(const nlohmann::json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "disk") return Domain::unit_disk();
        if (kind == "annulus") return Domain::annulus(j.at("inner").get<double>());
        if (kind == "privalov") {
            std::vector<Arc> E;
            for (const auto& a : j.at("E")) E.push_back(Arc{a.at(0).get<double>(), a.at(1).get<double>()});
            return Domain::privalov(E, j.value("inner", 0.0));
        }
        fail(ErrorKind::config, "unknown domain kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::config, std::string("bad domain description: ") + e.what());
    }
}

Target target_from_json(const nlohmann::json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "outer") return Target::outer_circle();
        if (kind == "arc") return Target::outer_arc(j.at("lo").get<double>(), j.at("hi").get<double>());
        if (kind == "inner") return Target::inner_circle();
        if (kind == "all") return Target::everything();
        if (kind == "disks") {
            Target t;
            t.disks = true;
            return t;
        }
        fail(ErrorKind::config, "unknown target kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::config, std::string("bad target description: ") + e.what());
    }
}

}  // namespace nullseries
