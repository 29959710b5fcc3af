#include "nullseries/profile.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "nullseries/errors.hpp"

namespace nullseries {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr int J = bump_max_order + 1;

// Truncated Taylor coefficients f^(k)/k!.
using Jet = std::array<double, J>;

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < J; ++i) r[i] = a[i] + b[i];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r{};
    for (int k = 0; k < J; ++k)
        for (int i = 0; i <= k; ++i) r[k] += a[i] * b[k - i];
    return r;
}

Jet recip(const Jet& a) {
    Jet r{};
    r[0] = 1.0 / a[0];
    for (int k = 1; k < J; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) s += a[i] * r[k - i];
        r[k] = -s * r[0];
    }
    return r;
}

Jet jexp(const Jet& a) {
    Jet r{};
    r[0] = std::exp(a[0]);
    for (int k = 1; k < J; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) s += i * a[i] * r[k - i];
        r[k] = s / k;
    }
    return r;
}

// E(u) = exp(-1/u) for u > 0, else 0.
Jet E(const Jet& u) {
    if (u[0] <= 0 || std::exp(-1.0 / u[0]) == 0.0) return Jet{};
    Jet m = recip(u);
    for (double& c : m) c = -c;
    return jexp(m);
}

Jet bump_jet(double x) {
    Jet u{};
    u[0] = 6.0 * x - 2.0;
    u[1] = 6.0;
    Jet v{};
    v[0] = 1.0 - u[0];
    v[1] = -6.0;
    Jet e1 = E(u), e2 = E(v);
    return e1 * recip(e1 + e2);
}

double bump0(double x) {
    if (x <= 1.0 / 3.0) return 0.0;
    if (x >= 0.5) return 1.0;
    double u = 6.0 * x - 2.0;
    double e1 = std::exp(-1.0 / u), e2 = std::exp(-1.0 / (1.0 - u));
    return e1 / (e1 + e2);
}

template <class F>
double gl(F f, double lo, double hi, int panels = 4) {
    if (hi <= lo) return 0.0;
    double w = (hi - lo) / panels, s = 0.0;
    for (int i = 0; i < panels; ++i)
        s += boost::math::quadrature::gauss<double, 20>::integrate(f, lo + i * w, lo + (i + 1) * w);
    return s;
}

// int_{1/3}^x a
double bump_primitive(double x) {
    if (x <= 1.0 / 3.0) return 0.0;
    static const double at_half = gl(bump0, 1.0 / 3.0, 0.5);
    if (x >= 0.5) return at_half + (x - 0.5);
    return gl(bump0, 1.0 / 3.0, x);
}

// int_0^x y^{-1/3} a(1-y)
double singular_primitive(double x) {
    auto f = [](double y) { return std::cbrt(1.0 / y) * bump0(1.0 - y); };
    static const double base = 1.5 * std::cbrt(0.25);
    static const double full = base + gl(f, 0.5, 2.0 / 3.0);
    if (x <= 0.5) return 1.5 * std::cbrt(x * x);
    if (x >= 2.0 / 3.0) return full;
    return base + gl(f, 0.5, x);
}

// int_alpha^beta l, 0 <= alpha <= beta <= 1, in the variable w = v^{2/3}.
double quad_l(double alpha, double beta) {
    if (beta <= alpha) return 0.0;
    auto f = [](double w) {
        double v = w * std::sqrt(w);
        if (v <= 0.0) return -1.5;
        return l_eval(v) * 1.5 * std::sqrt(w);
    };
    double wa = std::cbrt(alpha * alpha), wb = std::cbrt(beta * beta);
    std::array<double, 3> breaks{std::cbrt(1.0 / 9.0), std::cbrt(0.25), std::cbrt(4.0 / 9.0)};
    double s = 0.0, lo = wa;
    for (double b : breaks) {
        if (b <= lo) continue;
        if (b >= wb) break;
        s += gl(f, lo, b, 2);
        lo = b;
    }
    return s + gl(f, lo, wb, 2);
}

double side_sign(Side side) { return side == Side::plus ? 1.0 : -1.0; }

}  // namespace

double bump(double x, int D) {
    if (D < 0 || D > bump_max_order) fail(ErrorKind::capability, "bump derivative order beyond the supported maximum");
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::domain, "bump evaluated outside [0,1]");
    if (D == 0) return bump0(x);
    if (x <= 1.0 / 3.0 || x >= 0.5) return 0.0;
    Jet j = bump_jet(x);
    double fact = 1.0;
    for (int i = 2; i <= D; ++i) fact *= i;
    return j[size_t(D)] * fact;
}

double bump_growth_constant(int D) {
    double C = 0.0;
    for (int d = 1; d <= D; ++d) {
        double M = 0.0;
        for (int i = 0; i <= 4000; ++i) M = std::max(M, std::abs(bump(1.0 / 3.0 + i / 24000.0, d)));
        double target = std::log(std::max(M, 1.0));
        double lo = 1.0, hi = 1e3;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (mid * std::log(mid) >= target ? hi : lo) = mid;
        }
        C = std::max(C, hi / d);
    }
    return C;
}

double l_eval(double t) {
    if (t == 0.0) return neg_inf;
    if (!(t > 0.0 && t <= 1.0)) fail(ErrorKind::domain, "l evaluated outside (0,1]");
    double sing = t < 2.0 / 3.0 ? std::cbrt(1.0 / t) * bump0(1.0 - t) : 0.0;
    return -sing - bump0(t);
}

double l_pm(double s, double x, Side side) {
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::domain, "offset s outside [0,1]");
    double sg = side_sign(side);
    double m = 2.0 + sg * s, e = 3.0 + sg * s;
    if (x <= 0.0 || x > e) return 0.0;
    if (x <= 1.0) return l_eval(x);
    if (x <= m) return -1.0;
    return l_eval(std::min(e - x, 1.0));
}

double l_primitive(double x) {
    if (x <= 0.0) return 0.0;
    x = std::min(x, 1.0);
    return -singular_primitive(x) - bump_primitive(x);
}

double profile_mass() {
    static const double lam = l_primitive(1.0);
    return lam;
}

double l_pm_primitive(double s, double x, Side side) {
    double sg = side_sign(side);
    double m = 2.0 + sg * s, e = 3.0 + sg * s, lam = profile_mass();
    if (x <= 0.0) return 0.0;
    if (x <= 1.0) return l_primitive(x);
    if (x <= m) return lam - (x - 1.0);
    if (x < e) return lam - (m - 1.0) + lam - l_primitive(e - x);
    return 2.0 * lam - (m - 1.0);
}

double l_pm_quadrature(double s, double x, Side side) {
    double sg = side_sign(side);
    double m = 2.0 + sg * s, e = 3.0 + sg * s;
    if (x <= 0.0) return 0.0;
    double r = quad_l(0.0, std::min(x, 1.0));
    if (x > 1.0) r -= std::min(x, m) - 1.0;
    if (x > m) r += quad_l(std::max(e - x, 0.0), 1.0);
    return r;
}

ProfileFamily build_profile(const CantorSet& set, const WeightSpec& omega) {
    ProfileFamily p;
    p.set = set;
    p.omega = omega;
    p.lambda = profile_mass();
    int n_max = set.n_max;
    p.omega_at.assign(size_t(n_max) + 1, 0.0);
    p.neg_mass.assign(size_t(n_max) + 1, 0.0);
    p.plateau.assign(size_t(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        p.omega_at[size_t(n)] = eval_weight(omega, double(n));
        p.neg_mass[size_t(n)] = p.neg_mass[size_t(n) - 1] +
                                std::ldexp(p.omega_at[size_t(n)] * set.tau(n), n) * (2.0 - 4.0 * p.lambda);
        p.plateau[size_t(n)] = p.neg_mass[size_t(n)] / (two_pi * set.schedule.phi[size_t(n)]);
    }
    return p;
}

std::vector<Piece> ProfileFamily::pieces(int n) const {
    if (n < 0 || n > n_max()) fail(ErrorKind::range, "profile level outside the family");
    std::vector<Piece> out;
    out.reserve((size_t(5) << n) + 1);
    auto emit = [&](auto&& self, int l, long k) -> void {
        if (l == n) {
            out.push_back({set.left(l, k), set.right(l, k), PieceKind::plateau, n, k, 0.0});
            return;
        }
        double half = set.sigma(l) / 2;
        for (int h = 0; h < 2; ++h) {
            long c = 2 * k + h;
            double hs = set.left(l, k) + h * half;
            double s = set.s[size_t(l + 1)][size_t(c)];
            out.push_back({hs, set.left(l + 1, c), PieceKind::flank_plus, l + 1, c, s});
            self(self, l + 1, c);
            out.push_back({set.right(l + 1, c), hs + half, PieceKind::flank_minus, l + 1, c, s});
        }
    };
    emit(emit, 0, 0);
    return out;
}

double ProfileFamily::piece_value(const Piece& p, double t) const {
    if (p.kind == PieceKind::plateau) return plateau[size_t(p.level)];
    if (t <= p.start || t >= p.end) return neg_inf;
    Side side = p.kind == PieceKind::flank_plus ? Side::plus : Side::minus;
    double e = 3.0 + side_sign(side) * p.s;
    double x = std::min((t - p.start) / set.tau(p.level), e);
    return omega_at[size_t(p.level)] * l_pm(p.s, x, side);
}

double ProfileFamily::piece_primitive(const Piece& p, double t) const {
    if (t <= p.start) return 0.0;
    if (p.kind == PieceKind::plateau) return plateau[size_t(p.level)] * (std::min(t, p.end) - p.start);
    if (t >= p.end) return piece_mass(p);
    Side side = p.kind == PieceKind::flank_plus ? Side::plus : Side::minus;
    double tau = set.tau(p.level);
    return omega_at[size_t(p.level)] * tau * l_pm_primitive(p.s, (t - p.start) / tau, side);
}

double ProfileFamily::piece_mass(const Piece& p) const {
    if (p.kind == PieceKind::plateau) return plateau[size_t(p.level)] * (p.end - p.start);
    double sg = p.kind == PieceKind::flank_plus ? 1.0 : -1.0;
    return omega_at[size_t(p.level)] * set.tau(p.level) * (2.0 * lambda - (1.0 + sg * p.s));
}

double g_eval(const ProfileFamily& p, int n, double t) {
    if (n < 0 || n > p.n_max()) fail(ErrorKind::range, "profile level outside the family");
    if (n == 0) return 0.0;
    const CantorSet& S = p.set;
    PointClass pc = classify(S, t, n);
    switch (pc.status) {
        case PointStatus::singular: {
            if (pc.level < n) return neg_inf;
            const auto& a = S.a[size_t(n)];
            double half = S.sigma(n) / 2;
            auto it = std::upper_bound(a.begin(), a.end(), pc.t);
            if (it != a.begin()) {
                double mid = *(it - 1) + half;
                if (mid == pc.t || std::nextafter(mid, pc.t) == pc.t) return p.plateau[size_t(n)];
            }
            return neg_inf;
        }
        case PointStatus::inside_deepest: return p.plateau[size_t(n)];
        case PointStatus::escaped: {
            int l = pc.level;
            long c = 2 * pc.parent + pc.half;
            double s = S.s[size_t(l)][size_t(c)];
            double hs = S.left(l - 1, pc.parent) + pc.half * S.sigma(l - 1) / 2;
            Piece piece = pc.gap == Gap::left
                              ? Piece{hs, S.left(l, c), PieceKind::flank_plus, l, c, s}
                              : Piece{S.right(l, c), hs + S.sigma(l - 1) / 2, PieceKind::flank_minus, l, c, s};
            return p.piece_value(piece, pc.t);
        }
    }
    return 0.0;
}

namespace {

struct Primitive {
    std::vector<Piece> pieces;
    std::vector<double> prefix;  // mass before piece i

    Primitive(const ProfileFamily& p, int n) : pieces(p.pieces(n)) {
        prefix.resize(pieces.size() + 1, 0.0);
        for (size_t i = 0; i < pieces.size(); ++i) prefix[i + 1] = prefix[i] + p.piece_mass(pieces[i]);
    }

    double at(const ProfileFamily& p, double t) const {
        auto it = std::upper_bound(pieces.begin(), pieces.end(), t,
                                   [](double x, const Piece& q) { return x < q.start; });
        if (it == pieces.begin()) return 0.0;
        size_t i = size_t(it - pieces.begin()) - 1;
        return prefix[i] + p.piece_primitive(pieces[i], t);
    }
};

}  // namespace

double g_integral(const ProfileFamily& p, int n, double u, double v) {
    if (n == 0) return 0.0;
    Primitive P(p, n);
    return P.at(p, v) - P.at(p, u);
}

double g_total_quadrature(const ProfileFamily& p, int n) {
    double s = 0.0;
    for (const Piece& q : p.pieces(n)) {
        if (q.kind == PieceKind::plateau) {
            s += p.piece_mass(q);
            continue;
        }
        Side side = q.kind == PieceKind::flank_plus ? Side::plus : Side::minus;
        s += p.omega_at[size_t(q.level)] * p.set.tau(q.level) * l_pm_quadrature(q.s, 3.0 + side_sign(side) * q.s, side);
    }
    return s;
}

double negative_mass_quadrature(const ProfileFamily& p, int n, long k) {
    if (n < 1 || n > p.n_max()) fail(ErrorKind::range, "profile level outside the family");
    if (k < 0 || k >= (1L << (n - 1))) fail(ErrorKind::range, "interval index outside the level");
    double m = 0.0, w = p.omega_at[size_t(n)] * p.set.tau(n);
    for (long c = 2 * k; c <= 2 * k + 1; ++c) {
        double s = p.set.s[size_t(n)][size_t(c)];
        m -= w * l_pm_quadrature(s, 3.0 + s, Side::plus);
        m -= w * l_pm_quadrature(s, 3.0 - s, Side::minus);
    }
    return m;
}

std::vector<double> g_cell_averages(const ProfileFamily& p, int n, std::size_t N) {
    if (!is_power_of_two(N)) fail(ErrorKind::shape, "grid size must be a power of two");
    std::vector<double> avg(N, 0.0);
    if (n == 0) return avg;
    Primitive P(p, n);
    const double h = two_pi / double(N);
    std::vector<double> B(N + 1);
    size_t i = 0;
    for (size_t j = 1; j <= N; ++j) {
        double b = (double(j) - 0.5) * h;
        while (i + 1 < P.pieces.size() && P.pieces[i + 1].start <= b) ++i;
        B[j] = P.prefix[i] + p.piece_primitive(P.pieces[i], b);
    }
    B[0] = B[N] - P.prefix.back();
    for (size_t j = 0; j < N; ++j) avg[j] = (B[j + 1] - B[j]) / h;
    return avg;
}

GridFunction g_point_samples(const ProfileFamily& p, int n, std::size_t N) {
    if (!is_power_of_two(N)) fail(ErrorKind::shape, "grid size must be a power of two");
    GridFunction g;
    g.values.assign(N, 0.0);
    g.tag_rule = "pole: value -inf";
    if (n == 0) return g;
    auto pieces = p.pieces(n);
    size_t i = 0;
    for (size_t j = 0; j < N; ++j) {
        double t = g.t(j);
        while (i + 1 < pieces.size() && pieces[i + 1].start <= t) ++i;
        const Piece& q = pieces[i];
        double v = (t == q.start || t == q.end) ? neg_inf : p.piece_value(q, t);
        if (std::isinf(v)) g.tags.push_back(j);
        g.values[j] = v;
    }
    return g;
}

GrowthReport growth_report(const ProfileFamily& p, double eps, int burn_in) {
    GrowthReport r;
    r.eps = eps;
    r.burn_in = burn_in;
    double gmin = INFINITY, gmax = 0.0;
    for (int n = 1; n <= p.n_max(); ++n) {
        GrowthLevel L;
        L.n = n;
        L.ratio_min = INFINITY;
        double denom = p.set.tau(n) * p.omega_at[size_t(n)];
        for (long k = 0; k < (1L << (n - 1)); ++k) {
            double v = negative_mass_quadrature(p, n, k) / denom;
            L.ratio_min = std::min(L.ratio_min, v);
            L.ratio_max = std::max(L.ratio_max, v);
        }
        gmin = std::min(gmin, L.ratio_min);
        gmax = std::max(gmax, L.ratio_max);
        L.plateau = p.plateau[size_t(n)];
        L.plateau_over_n = L.plateau / n;
        L.neg_over_power = p.neg_mass[size_t(n)] / std::pow(double(n), 1.0 - eps);
        if (n < p.n_max()) {
            Primitive hi(p, n + 1), lo(p, n);
            double mx = -INFINITY, mn = INFINITY;
            for (const Piece& q : hi.pieces) {
                double v = hi.at(p, q.end) - lo.at(p, q.end);
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            L.increment_constant = std::ldexp(mx - mn, n);
        }
        r.levels.push_back(L);
    }
    r.ratio_bounded = gmin > 0 && gmax / gmin <= 10.0;
    r.plateau_over_n_decreasing = true;
    r.neg_mass_growing = true;
    double cmin = INFINITY, cmax = 0.0;
    for (size_t i = 0; i < r.levels.size(); ++i) {
        const auto& L = r.levels[i];
        if (L.n > burn_in) {
            const auto& P = r.levels[i - 1];
            r.plateau_over_n_decreasing = r.plateau_over_n_decreasing && L.plateau_over_n < P.plateau_over_n;
            r.neg_mass_growing = r.neg_mass_growing && L.neg_over_power > P.neg_over_power;
        }
        if (L.n < p.n_max()) {
            cmin = std::min(cmin, L.increment_constant);
            cmax = std::max(cmax, L.increment_constant);
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (const auto& L : r.levels) {
        if (L.n < burn_in) continue;
        double x = std::log(double(L.n)), y = std::log(p.neg_mass[size_t(L.n)]);
        sx += x, sy += y, sxx += x * x, sxy += x * y, cnt += 1;
    }
    if (cnt >= 2) r.neg_mass_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    r.increment_spread = cmax / cmin;
    r.increment_stable = std::isfinite(r.increment_spread) && r.increment_spread <= 10.0;
    return r;
}

void write_profile_csv(const ProfileFamily& p, int n, std::size_t N, const std::string& path) {
    GridFunction g = g_point_samples(p, n, N);
    std::ofstream os(path);
    if (!os) fail(ErrorKind::value, "cannot write " + path);
    os << "t,g,pole\n";
    os.precision(17);
    for (size_t j = 0; j < N; ++j) {
        double v = g.values[j].real();
        os << g.t(j) << ',';
        if (std::isinf(v)) os << "-inf,1\n";
        else os << v << ",0\n";
    }
}

}  // namespace nullseries
