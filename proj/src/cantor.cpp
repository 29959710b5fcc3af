#include "nullseries/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullseries/errors.hpp"

namespace nullseries {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double circ(double x, double y) {
    double d = std::abs(x - y);
    return std::min(d, two_pi - d);
}

bool same_point(double t, double p) { return t == p || std::nextafter(p, t) == t; }

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
    h = mix64(h ^ (index + 0x8cb92ba72f3d8dd7ULL));
    return double(h >> 11) * 0x1.0p-53;
}

double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

CantorSet generate(const ThicknessSchedule& sch, int n_max, std::uint64_t seed, OffsetMode mode, double fixed_value) {
    if (n_max > sch.n_max) fail(ErrorKind::range, "cantor depth exceeds schedule depth");
    if (n_max < 0) fail(ErrorKind::value, "negative cantor depth");
    if (mode == OffsetMode::fixed && !(fixed_value >= 0.0 && fixed_value <= 1.0))
        fail(ErrorKind::value, "fixed offset must lie in [0,1]");
    CantorSet c;
    c.schedule = sch;
    c.n_max = n_max;
    c.seed = seed;
    c.mode = mode;
    c.fixed_value = fixed_value;
    c.s.resize(size_t(n_max) + 1);
    c.a.resize(size_t(n_max) + 1);
    c.q.resize(size_t(n_max) + 1);
    c.a[0] = {0.0};
    c.q[0] = {0.0, std::numbers::pi, two_pi};
    for (int n = 1; n <= n_max; ++n) {
        size_t count = size_t(1) << n;
        auto& s = c.s[size_t(n)];
        auto& a = c.a[size_t(n)];
        s.resize(count);
        a.resize(count);
        double tau = sch.tau[size_t(n)], half = sch.sigma[size_t(n - 1)] / 2;
        for (size_t k = 0; k < count; ++k) {
            s[k] = mode == OffsetMode::fixed ? fixed_value : counter_uniform(seed, std::uint64_t(n), k);
            a[k] = c.a[size_t(n - 1)][k / 2] + (k % 2 ? half : 0.0) + tau * (3.0 + s[k]);
        }
        auto& q = c.q[size_t(n)];
        q.reserve(3 * count);
        double sig = sch.sigma[size_t(n)];
        for (double x : a) {
            q.push_back(x);
            q.push_back(x + sig / 2);
            q.push_back(x + sig);
        }
        std::sort(q.begin(), q.end());
    }
    return c;
}

PointClass classify(const CantorSet& set, double t, int depth) {
    if (depth > set.n_max || depth < 0) fail(ErrorKind::range, "classify depth exceeds cantor depth");
    PointClass pc;
    t = wrap_angle(t);
    pc.t = t;
    for (int n = 0; n <= depth; ++n) {
        const auto& q = set.q[size_t(n)];
        auto it = std::lower_bound(q.begin(), q.end(), t);
        bool hit = (it != q.end() && same_point(t, *it)) || (it != q.begin() && same_point(t, *(it - 1)));
        if (n == 0 && same_point(t, two_pi)) hit = true;
        if (hit) {
            pc.status = PointStatus::singular;
            pc.level = n;
            return pc;
        }
    }
    long k = 0;
    for (int n = 1; n <= depth; ++n) {
        double mid = set.left(n - 1, k) + set.sigma(n - 1) / 2;
        int h = t < mid ? 0 : 1;
        long c = 2 * k + h;
        if (t >= set.left(n, c) && t <= set.right(n, c)) {
            k = c;
            continue;
        }
        pc.status = PointStatus::escaped;
        pc.level = n;
        pc.parent = k;
        pc.half = h;
        pc.gap = t < set.left(n, c) ? Gap::left : Gap::right;
        return pc;
    }
    pc.status = PointStatus::inside_deepest;
    pc.interval = k;
    pc.level = depth;
    return pc;
}

double distance(const CantorSet& set, double t, DistanceTarget target, int n) {
    if (n > set.n_max || n < 0) fail(ErrorKind::range, "distance depth exceeds cantor depth");
    t = wrap_angle(t);
    const auto& a = set.a[size_t(n)];
    double sig = set.sigma(n);
    auto to_interval = [&](size_t i) {
        double l = a[i], r = a[i] + sig;
        if (t >= l && t <= r) return 0.0;
        return std::min(circ(t, l), circ(t, r));
    };
    size_t idx = size_t(std::upper_bound(a.begin(), a.end(), t) - a.begin());
    double d = std::min(to_interval(idx == 0 ? a.size() - 1 : idx - 1), to_interval(idx == a.size() ? 0 : idx));
    d = std::min({d, to_interval(0), to_interval(a.size() - 1)});
    if (target == DistanceTarget::K_prime) {
        for (int m = 0; m <= n && d > 0; ++m) {
            const auto& q = set.q[size_t(m)];
            auto it = std::lower_bound(q.begin(), q.end(), t);
            if (it != q.end()) d = std::min(d, circ(t, *it));
            if (it != q.begin()) d = std::min(d, circ(t, *(it - 1)));
            d = std::min({d, circ(t, q.front()), circ(t, q.back())});
        }
    }
    return d;
}

std::vector<MeasureRow> measure_report(const CantorSet& set) {
    std::vector<MeasureRow> rows;
    for (int n = 0; n <= set.n_max; ++n) {
        double sum = 0.0, comp = 0.0;
        for (double l : set.a[size_t(n)]) {
            double y = ((l + set.sigma(n)) - l) - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        double expected = two_pi * set.schedule.phi[size_t(n)];
        rows.push_back({n, sum, expected, std::abs(sum - expected) / expected});
    }
    return rows;
}

GeometryReport check_geometry(const CantorSet& set) {
    GeometryReport g;
    g.worst_margin = INFINITY;
    const double slack = 1e-12;
    for (int n = 1; n <= set.n_max; ++n) {
        double tau = set.tau(n), half = set.sigma(n - 1) / 2;
        long count = 1L << n;
        for (long c = 0; c < count; ++c) {
            long k = c / 2;
            double hs = set.left(n - 1, k) + (c % 2 ? half : 0.0), he = hs + half;
            double l = set.left(n, c), r = set.right(n, c);
            if (!(l >= hs && r <= he)) g.nested = false;
            double ml = (l - hs) / tau, mr = (he - r) / tau;
            if (ml < 3.0 - slack || mr < 2.0 - slack) g.margins = false;
            g.worst_margin = std::min(g.worst_margin, std::min(ml - 3.0, mr - 2.0));
            if (c + 1 < count && set.left(n, c + 1) - r < 2.0 * tau * (1 - slack)) g.disjoint = false;
            ++g.checked;
        }
    }
    return g;
}

void to_json(nlohmann::json& j, const CantorSet& c) {
    j = nlohmann::json{{"seed", c.seed},
                       {"mode", c.mode == OffsetMode::fixed ? "fixed" : "random"},
                       {"depth", c.n_max}};
    if (c.mode == OffsetMode::fixed) j["fixed_value"] = c.fixed_value;
    j["endpoints"] = c.a;
}

CantorSet cantor_from_json(const nlohmann::json& j, const ThicknessSchedule& s) {
    std::string mode = j.value("mode", std::string("random"));
    if (mode != "random" && mode != "fixed") fail(ErrorKind::config, "unknown offset mode '" + mode + "'");
    CantorSet c = generate(s, j.at("depth").get<int>(), j.at("seed").get<std::uint64_t>(),
                           mode == "fixed" ? OffsetMode::fixed : OffsetMode::random, j.value("fixed_value", 0.0));
    if (j.contains("endpoints") && j["endpoints"].get<std::vector<std::vector<double>>>() != c.a)
        fail(ErrorKind::value, "endpoint table disagrees with the table regenerated from the seed");
    return c;
}

}  // namespace nullseries
