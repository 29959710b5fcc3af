#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/profile.hpp"

using namespace nullseries;

namespace {
constexpr double two_pi = 2 * std::numbers::pi;

// int_0^x l(t) dt with t = u^3, composite Simpson in u; the integrand -3u a(1-u^3) - 3u^2 a(u^3) is smooth.
double l_integral_oracle(double x, int panels = 20000) {
    double U = std::cbrt(x), h = U / panels, s = 0;
    auto f = [](double u) {
        double t = u * u * u;
        if (t <= 0) return 0.0;
        return 3 * u * u * l_eval(t);
    };
    for (int i = 0; i <= panels; ++i) {
        double w = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
        s += w * f(i * h);
    }
    return s * h / 3;
}

ProfileFamily family(int n, std::uint64_t seed, OffsetMode mode = OffsetMode::random, double v = 0) {
    WeightSpec w = WeightSpec::t_log();
    ThicknessSchedule s = build_schedule(w, derive_omega2(w), n);
    return build_profile(generate(s, n, seed, mode, v), w);
}
}  // namespace

TEST_CASE("bump values and flat pieces") {
    CHECK(bump(0.2) == 0.0);
    CHECK(bump(0.75) == 1.0);
    CHECK(bump(0.2, 3) == 0.0);
    CHECK(bump(0.9, 5) == 0.0);
    CHECK(bump(5.0 / 12.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(bump(0.4, bump_max_order + 1), Error);
}

TEST_CASE("bump derivatives agree with central differences") {
    for (double x : {0.36, 0.4, 0.43, 0.47}) {
        for (int d = 1; d <= 4; ++d) {
            auto central = [&](double h) { return (bump(x + h, d - 1) - bump(x - h, d - 1)) / (2 * h); };
            double fd = (4 * central(5e-4) - central(1e-3)) / 3;
            CHECK(bump(x, d) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    CHECK(bump_growth_constant(4) > 0);
}

TEST_CASE("l and l^pm pointwise") {
    CHECK(l_eval(0.125) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(l_eval(0.8) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::isinf(l_eval(0.0)));
    for (double s : {0.0, 0.3, 1.0}) {
        CHECK(l_pm(s, 1.5, Side::plus) == -1.0);
        CHECK(l_pm(s, 4.2, Side::plus) == 0.0);
        CHECK(l_pm(s, 4.2, Side::minus) == 0.0);
    }
}

TEST_CASE("profile mass and primitives against an independent substitution rule") {
    CHECK(profile_mass() == doctest::Approx(l_integral_oracle(1.0)).epsilon(1e-10));
    for (double x : {0.01, 0.3, 0.45, 0.6, 0.9}) CHECK(l_primitive(x) == doctest::Approx(l_integral_oracle(x)).epsilon(1e-9));
    for (double s : {0.0, 0.37, 1.0})
        for (Side side : {Side::plus, Side::minus})
            for (double x : {0.5, 1.7, 2.6, 3.5, 4.0})
                CHECK(l_pm_primitive(s, x, side) == doctest::Approx(l_pm_quadrature(s, x, side)).epsilon(1e-10));
}

TEST_CASE("g_n mean zero and pole signalling") {
    ProfileFamily p = family(8, 5);
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(g_total_quadrature(p, n)) <= 1e-8);
    CHECK(std::isinf(g_eval(p, 3, p.set.left(2, 1))));
    CHECK(g_eval(p, 3, p.set.left(3, 2) + p.set.sigma(3) * 0.1) == doctest::Approx(p.plateau[3]));
    CHECK(p.plateau[3] > 0);
}

TEST_CASE("plateau equals flank mass over m(K_n)") {
    ProfileFamily p = family(6, 2);
    for (int n = 1; n <= 6; ++n) {
        double flank = 0;
        for (int l = 1; l <= n; ++l) {
            double tau = p.set.tau(l);
            for (long c = 0; c < (1L << l); ++c) {
                double s = p.set.s[size_t(l)][size_t(c)];
                flank += p.omega_at[size_t(l)] * tau *
                         (l_pm_quadrature(s, 3 + s, Side::plus) + l_pm_quadrature(s, 3 - s, Side::minus));
            }
        }
        double mK = two_pi * p.set.schedule.phi[size_t(n)];
        CHECK(p.plateau[size_t(n)] == doctest::Approx(-flank / mK).epsilon(1e-10));
    }
}

TEST_CASE("max g_n is the plateau") {
    ProfileFamily p = family(6, 3);
    GridFunction g = g_point_samples(p, 6, 1 << 14);
    double mx = -INFINITY;
    for (const auto& v : g.values) mx = std::max(mx, v.real());
    CHECK(mx == doctest::Approx(p.plateau[6]));
}

TEST_CASE("g_{n+1} and g_n differ only on K_n") {
    ProfileFamily p = family(7, 4);
    int mismatches = 0;
    for (int i = 0; i < 4000; ++i) {
        double t = two_pi * (i + 0.5) / 4000;
        PointClass pc = classify(p.set, t, 7);
        for (int n = 1; n < 7; ++n) {
            bool outside = pc.status == PointStatus::escaped && pc.level <= n;
            if (outside && g_eval(p, n + 1, t) != g_eval(p, n, t)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("negative mass per interval: seed invariant, translation invariant") {
    ProfileFamily a = family(8, 0), b = family(8, 1), c = family(8, 2);
    ProfileFamily f = family(8, 0, OffsetMode::fixed, 0.0);
    for (int n = 1; n <= 8; ++n) {
        double ref = negative_mass_quadrature(a, n, 0);
        long last = (1L << (n - 1)) - 1;
        CHECK(negative_mass_quadrature(b, n, last) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(negative_mass_quadrature(c, n, last / 2) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(negative_mass_quadrature(f, n, last) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(negative_mass_quadrature(a, 3, 4), Error);
}

TEST_CASE("growth report on depth 12") {
    GrowthReport g = growth_report(family(12, 0));
    CHECK(g.ratio_bounded);
    CHECK(g.plateau_over_n_decreasing);
    CHECK(g.increment_stable);
    for (const auto& L : g.levels)
        if (L.n >= 1) CHECK(L.ratio_min == doctest::Approx(L.ratio_max).epsilon(1e-9));
}

TEST_CASE("cell averages carry exact mass") {
    ProfileFamily p = family(6, 9);
    auto avg = g_cell_averages(p, 6, 1 << 12);
    double h = two_pi / (1 << 12), tot = 0;
    for (double v : avg) tot += v * h;
    CHECK(std::abs(tot) <= 1e-9);
    CHECK_THROWS_AS(g_cell_averages(p, 6, 1000), Error);
}
