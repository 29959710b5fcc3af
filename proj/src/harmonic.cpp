#include "nullseries/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nullseries/errors.hpp"
#include "nullseries/fft.hpp"

namespace nullseries {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

double sgn(long n) { return n > 0 ? 1.0 : (n < 0 ? -1.0 : 0.0); }

}  // namespace

SpectralSeries analyze(const GridFunction& g) {
    if (!is_power_of_two(g.size())) fail(ErrorKind::shape, "analyze needs a power-of-two grid");
    SpectralSeries s;
    s.coeffs = g.values;
    fft::forward(s.coeffs);
    const double inv = 1.0 / double(g.size());
    for (auto& c : s.coeffs) c *= inv;
    return s;
}

GridFunction synthesize(const SpectralSeries& s, std::size_t N) {
    std::size_t M = s.size();
    if (!is_power_of_two(N) || !is_power_of_two(M) || N < M)
        fail(ErrorKind::shape, "synthesize needs power-of-two sizes with N >= series size");
    GridFunction g;
    if (N == M) {
        g.values = s.coeffs;
    } else {
        g.values.assign(N, 0.0);
        long h = long(M / 2);
        for (long n = -h + 1; n < h; ++n) g.values[std::size_t((n + long(N)) % long(N))] = s.at(n);
        cplx nyq = s.at(h) * 0.5;
        g.values[std::size_t(h)] += nyq;
        g.values[N - std::size_t(h)] += nyq;
    }
    fft::backward(g.values);
    return g;
}

SpectralSeries conjugate(const SpectralSeries& s) {
    SpectralSeries out = s;
    long h = s.half();
    for (long n = -h + 1; n < h; ++n) out.at(n) = -I * sgn(n) * s.at(n);
    out.at(h) = 0.0;
    out.origin = "conjugate(" + s.origin + ")";
    return out;
}

GridFunction conjugate(const GridFunction& g) {
    GridFunction re;
    re.values.resize(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) re.values[j] = g.values[j].real();
    GridFunction out = synthesize(conjugate(analyze(re)), g.size());
    for (auto& v : out.values) v = v.real();
    return out;
}

cplx poisson_eval(const SpectralSeries& s, cplx z, PoissonMode mode) {
    double r = std::abs(z);
    if (!(r < 1.0)) fail(ErrorKind::domain, "poisson evaluation needs |z| < 1");
    long h = s.half();
    cplx sum = s.at(0);
    if (mode == PoissonMode::conjugate) sum = 0.0;
    cplx zp = 1.0, zc = 1.0;
    const cplx zbar = std::conj(z);
    for (long n = 1; n <= h; ++n) {
        zp *= z;
        zc *= zbar;
        cplx cp = s.at(n), cm = s.at(-n);
        switch (mode) {
            case PoissonMode::harmonic_extension:
                if (n == h) sum += cp * 0.5 * (zp + zc);
                else sum += cp * zp + cm * zc;
                break;
            case PoissonMode::conjugate:
                if (n < h) sum += -I * cp * zp + I * cm * zc;
                break;
            case PoissonMode::analytic_completion:
                sum += (n == h ? 1.0 : 2.0) * cp * zp;
                break;
        }
    }
    return sum;
}

std::vector<cplx> circle_values(const SpectralSeries& s, double r, PoissonMode mode, std::size_t Q) {
    if (!(r >= 0.0 && r < 1.0)) fail(ErrorKind::domain, "circle radius must lie in [0,1)");
    if (!is_power_of_two(Q)) fail(ErrorKind::shape, "node count must be a power of two");
    std::vector<cplx> buf(Q, 0.0);
    long h = s.half();
    auto put = [&](long n, cplx v) { buf[std::size_t(((n % long(Q)) + long(Q)) % long(Q))] += v; };
    if (mode != PoissonMode::conjugate) put(0, s.at(0));
    double rp = 1.0;
    for (long n = 1; n <= h; ++n) {
        rp *= r;
        if (rp == 0.0) break;
        cplx cp = s.at(n), cm = s.at(-n);
        switch (mode) {
            case PoissonMode::harmonic_extension:
                if (n == h) {
                    put(n, 0.5 * cp * rp);
                    put(-n, 0.5 * cp * rp);
                } else {
                    put(n, cp * rp);
                    put(-n, cm * rp);
                }
                break;
            case PoissonMode::conjugate:
                if (n < h) {
                    put(n, -I * cp * rp);
                    put(-n, I * cm * rp);
                }
                break;
            case PoissonMode::analytic_completion:
                put(n, (n == h ? 1.0 : 2.0) * cp * rp);
                break;
        }
    }
    fft::backward(buf);
    return buf;
}

std::size_t grid_for_radius(double r, double tol) {
    if (!(r > 0.0 && r < 1.0) || !(tol > 0.0 && tol < 1.0)) fail(ErrorKind::domain, "grid_for_radius needs 0<r<1, 0<tol<1");
    double half = std::ceil(std::log(tol) / std::log(r));
    std::size_t N = 2;
    while (double(N / 2) < half) N *= 2;
    return N;
}

SpectralSeries g_spectrum(const ProfileFamily& p, int n, std::size_t N) {
    SpectralSeries s = analyze(GridFunction::from_real(g_cell_averages(p, n, N)));
    long h = s.half();
    for (long k = 1; k < h; ++k) {
        double x = pi * double(k) / double(N);
        double box = std::sin(x) / x;
        s.at(k) /= box;
        s.at(-k) /= box;
    }
    s.at(h) = 0.0;
    s.origin = "g";
    s.depth = n;
    return s;
}

double distance_to_arcs(const CantorSet& set, int n, cplx z) {
    double rho = std::abs(z);
    double theta = std::arg(z);
    double delta = distance(set, theta, DistanceTarget::K_n, n);
    return std::sqrt(std::max(0.0, 1.0 + rho * rho - 2.0 * rho * std::cos(delta)));
}

CauchyReport cauchy_convergence_check(const ProfileFamily& p, std::size_t N, const std::vector<cplx>& probes, int n_top) {
    if (n_top < 0) n_top = p.n_max();
    if (n_top > p.n_max()) fail(ErrorKind::range, "cauchy check deeper than the family");
    CauchyReport rep;
    std::vector<cplx> used;
    for (cplx z : probes) {
        double rho = std::abs(z);
        if (rho >= 1.0 || (1.0 - rho) * double(N / 2) < 30.0) {
            ++rep.probes_excluded;
            continue;
        }
        used.push_back(z);
    }
    rep.probes_used = used.size();
    rep.min_distance = INFINITY;
    std::vector<SpectralSeries> spec;
    for (int n = 0; n <= n_top; ++n) spec.push_back(g_spectrum(p, n, N));
    double fmin = INFINITY, fmax = 0.0;
    rep.geometric_decay = true;
    for (int n = 1; n < n_top; ++n) {
        SpectralSeries d = spec[size_t(n) + 1];
        for (std::size_t i = 0; i < d.size(); ++i) d.coeffs[i] -= spec[size_t(n)].coeffs[i];
        CauchyLevel L;
        L.n = n;
        L.center_diff = std::abs(d.at(0));
        for (cplx z : used) {
            double dist = distance_to_arcs(p.set, n, z);
            rep.min_distance = std::min(rep.min_distance, dist);
            double dg = std::abs(poisson_eval(d, z, PoissonMode::harmonic_extension));
            double dc = std::abs(poisson_eval(d, z, PoissonMode::conjugate));
            L.max_diff_G = std::max(L.max_diff_G, dg);
            L.fit_G = std::max(L.fit_G, std::ldexp(dg * dist, n));
            L.fit_conj = std::max(L.fit_conj, std::ldexp(dc * dist, n));
        }
        if (!rep.levels.empty() && L.max_diff_G > rep.levels.back().max_diff_G) rep.geometric_decay = false;
        fmin = std::min(fmin, L.fit_G);
        fmax = std::max(fmax, L.fit_G);
        rep.levels.push_back(L);
    }
    rep.fit_spread = fmax / fmin;
    // One constant must serve every level: the fitted values may not grow with depth.
    double early = 0.0, late = 0.0;
    for (const auto& L : rep.levels) {
        double& bucket = 2 * L.n <= n_top ? early : late;
        bucket = std::max(bucket, L.fit_G);
    }
    rep.fit_constant = fmax;
    rep.pass = !used.empty() && std::isfinite(fmax) && late <= early;
    return rep;
}

void write_series_csv(const SpectralSeries& s, const std::string& path, long max_index) {
    std::ofstream os(path);
    if (!os) fail(ErrorKind::value, "cannot write " + path);
    long h = s.half();
    long lo = max_index < 0 ? -h + 1 : -std::min(max_index, h - 1);
    long hi = max_index < 0 ? h : std::min(max_index, h);
    os << "n,re,im\n";
    os.precision(17);
    for (long n = lo; n <= hi; ++n) os << n << ',' << s.at(n).real() << ',' << s.at(n).imag() << '\n';
}

SpectralSeries read_series_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(ErrorKind::config, "cannot read " + path);
    std::string line;
    std::getline(is, line);
    if (line.rfind("n,re,im", 0) != 0) fail(ErrorKind::config, path + " lacks the n,re,im header");
    std::vector<std::pair<long, cplx>> rows;
    long span = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long n;
        double re, im;
        char c1, c2;
        if (!(ls >> n >> c1 >> re >> c2 >> im)) fail(ErrorKind::config, "malformed row in " + path);
        rows.emplace_back(n, cplx(re, im));
        span = std::max(span, std::abs(n));
    }
    std::size_t N = 2;
    while (long(N / 2) <= span) N *= 2;
    SpectralSeries s;
    s.coeffs.assign(N, 0.0);
    for (auto& [n, v] : rows) s.at(n) = v;
    return s;
}

void write_grid_csv(const GridFunction& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) fail(ErrorKind::value, "cannot write " + path);
    os << "t,re,im\n";
    os.precision(17);
    for (std::size_t j = 0; j < g.size(); ++j) os << g.t(j) << ',' << g.values[j].real() << ',' << g.values[j].imag() << '\n';
}

}  // namespace nullseries
