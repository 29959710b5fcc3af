#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/harmonic.hpp"

using namespace nullseries;

namespace {
constexpr double two_pi = 2 * std::numbers::pi;

GridFunction sampled(std::size_t N, auto&& f) {
    GridFunction g;
    g.values.resize(N);
    for (std::size_t j = 0; j < N; ++j) g.values[j] = f(two_pi * double(j) / double(N));
    return g;
}

// Direct O(N^2) DFT, independent of the FFT backend.
cplx direct_coeff(const GridFunction& g, long n) {
    cplx s = 0;
    double N = double(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) s += g.values[j] * std::polar(1.0, -double(n) * two_pi * double(j) / N);
    return s / N;
}
}  // namespace

TEST_CASE("analyze: constants and pure exponentials") {
    SpectralSeries one = analyze(sampled(64, [](double) { return cplx(1, 0); }));
    CHECK(std::abs(one.at(0) - 1.0) < 1e-15);
    for (long n = -31; n <= 32; ++n)
        if (n) CHECK(std::abs(one.at(n)) < 1e-15);
    SpectralSeries e5 = analyze(sampled(64, [](double t) { return std::polar(1.0, 5 * t); }));
    CHECK(std::abs(e5.at(5) - 1.0) < 1e-14);
    CHECK(std::abs(e5.at(-5)) < 1e-14);
}

TEST_CASE("analyze matches a direct DFT") {
    GridFunction g = sampled(128, [](double t) { return cplx(std::exp(std::cos(t)), std::sin(3 * t) * t); });
    SpectralSeries s = analyze(g);
    for (long n : {-63L, -7L, 0L, 1L, 40L, 64L}) CHECK(std::abs(s.at(n) - direct_coeff(g, n)) < 1e-13);
}

TEST_CASE("conjugation pairs, kills the mean, is an involution up to sign") {
    const std::size_t N = 256;
    auto c3 = conjugate(GridFunction::from_real(sampled(N, [](double t) { return cplx(std::cos(3 * t)); }).real())).real();
    auto s1 = conjugate(sampled(N, [](double t) { return cplx(std::sin(t)); })).real();
    auto k = conjugate(sampled(N, [](double) { return cplx(2.5); })).real();
    for (std::size_t j = 0; j < N; ++j) {
        double t = two_pi * double(j) / N;
        CHECK(c3[j] == doctest::Approx(std::sin(3 * t)).scale(1).epsilon(1e-12));
        CHECK(s1[j] == doctest::Approx(-std::cos(t)).scale(1).epsilon(1e-12));
        CHECK(std::abs(k[j]) < 1e-14);
    }
    GridFunction g = sampled(N, [](double t) { return cplx(1 + std::cos(t) + 0.5 * std::sin(7 * t)); });
    auto twice = conjugate(conjugate(g)).real();
    auto orig = g.real();
    for (std::size_t j = 0; j < N; ++j) CHECK(twice[j] == doctest::Approx(-(orig[j] - 1.0)).scale(1).epsilon(1e-12));
}

TEST_CASE("synthesize inverts analyze and zero-pads") {
    GridFunction g = sampled(64, [](double t) { return cplx(std::cos(2 * t), std::sin(5 * t)); });
    SpectralSeries s = analyze(g);
    GridFunction back = synthesize(s, 64);
    for (std::size_t j = 0; j < 64; ++j) CHECK(std::abs(back.values[j] - g.values[j]) < 1e-14);
    GridFunction fine = synthesize(s, 256);
    for (std::size_t j = 0; j < 256; ++j) {
        double t = two_pi * double(j) / 256;
        CHECK(std::abs(fine.values[j] - cplx(std::cos(2 * t), std::sin(5 * t))) < 1e-13);
    }
}

TEST_CASE("Poisson evaluation modes") {
    SpectralSeries s;
    s.coeffs.assign(32, 0.0);
    s.at(0) = 0.7;
    s.at(3) = cplx(0.2, -0.1);
    s.at(-3) = std::conj(s.at(3));
    CHECK(std::abs(poisson_eval(s, 0.0, PoissonMode::harmonic_extension) - 0.7) < 1e-15);
    cplx z = std::polar(0.6, 1.1);
    cplx F = poisson_eval(s, z, PoissonMode::analytic_completion);
    CHECK(F.real() == doctest::Approx(poisson_eval(s, z, PoissonMode::harmonic_extension).real()));
    CHECK(F.imag() == doctest::Approx(poisson_eval(s, z, PoissonMode::conjugate).real()));

    SpectralSeries ek;
    ek.coeffs.assign(32, 0.0);
    ek.at(4) = 1.0;
    CHECK(std::abs(poisson_eval(ek, z, PoissonMode::analytic_completion) - 2.0 * std::pow(z, 4)) < 1e-14);

    // radial limit reproduces the polynomial
    double t = 0.4;
    cplx near = poisson_eval(s, std::polar(1 - 1e-9, t), PoissonMode::harmonic_extension);
    CHECK(near.real() == doctest::Approx(0.7 + 2 * (s.at(3) * std::polar(1.0, 3 * t)).real()).epsilon(1e-8));
    CHECK_THROWS_AS(poisson_eval(s, 1.0, PoissonMode::harmonic_extension), Error);
}

TEST_CASE("circle_values agrees with pointwise Poisson") {
    SpectralSeries s = analyze(sampled(128, [](double t) { return cplx(std::exp(std::cos(t))); }));
    auto v = circle_values(s, 0.8, PoissonMode::analytic_completion, 64);
    for (std::size_t j = 0; j < 64; j += 7) {
        cplx z = std::polar(0.8, two_pi * double(j) / 64);
        CHECK(std::abs(v[j] - poisson_eval(s, z, PoissonMode::analytic_completion)) < 1e-12);
    }
    CHECK(grid_for_radius(0.5, 1e-12) >= 80);
}

TEST_CASE("Cauchy check: zero at the centre and geometric decay away from K") {
    WeightSpec w = WeightSpec::t_log();
    ThicknessSchedule sch = build_schedule(w, derive_omega2(w), 8);
    ProfileFamily p = build_profile(generate(sch, 8, 0), w);
    std::vector<cplx> probes{0.0};
    for (int i = 0; i < 12; ++i) probes.push_back(std::polar(0.85, two_pi * (i + 0.5) / 12));
    CauchyReport r = cauchy_convergence_check(p, std::size_t(1) << 16, probes, 7);
    for (const auto& L : r.levels) CHECK(L.center_diff < 1e-10);
    CHECK(r.geometric_decay);
    CHECK(r.pass);
}

TEST_CASE("series CSV round trip keeps both ends") {
    SpectralSeries s;
    s.coeffs.assign(16, 0.0);
    for (long n = -7; n <= 8; ++n) s.at(n) = cplx(double(n), -0.5 * double(n));
    std::string path = "test_harmonic_series.csv";
    write_series_csv(s, path);
    SpectralSeries back = read_series_csv(path);
    for (long n = -7; n <= 7; ++n) CHECK(back.at(n) == s.at(n));
    std::remove(path.c_str());
}
