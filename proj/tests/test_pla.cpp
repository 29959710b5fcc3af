#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/pla.hpp"

using namespace nullseries;

namespace {
constexpr double two_pi = 2 * std::numbers::pi;

ProfileFamily family(int n, std::uint64_t seed = 0) {
    WeightSpec w = WeightSpec::t_log();
    ThicknessSchedule s = build_schedule(w, derive_omega2(w), n);
    return build_profile(generate(s, n, seed), w);
}

TaylorLadder monomial_ladder(int k) {
    TaylorLadder L;
    L.depth = 0;
    L.N = 64;
    L.circle = [k](int, double r, std::size_t Q) {
        std::vector<cplx> v(Q);
        for (std::size_t j = 0; j < Q; ++j) v[j] = std::pow(std::polar(r, two_pi * double(j) / double(Q)), k);
        return v;
    };
    return L;
}

NullSeries synthetic(long M, auto&& neg) {
    SpectralSeries fhat;
    fhat.coeffs.assign(std::size_t(4 * M), 0.0);
    for (long m = 1; m <= M; ++m) fhat.at(-m) = neg(m);
    return null_series_from(fhat, std::vector<cplx>(std::size_t(M) + 1, 0.0), M);
}
}  // namespace

TEST_CASE("depth 0 is the constant one") {
    ProfileFamily p = family(4);
    PlaFunction f = build_pla(p, 0, 1 << 10);
    for (const auto& v : f.boundary.values) CHECK(std::abs(v - 1.0) < 1e-15);
    CHECK(std::abs(f.spectrum.at(0) - 1.0) < 1e-15);
    for (long n = 1; n < 512; ++n) CHECK(std::abs(f.spectrum.at(n)) + std::abs(f.spectrum.at(-n)) < 1e-15);
}

TEST_CASE("sup of |f_n| is e^plateau and |f_n| = e^{g_n}") {
    ProfileFamily p = family(6, 1);
    PlaFunction f = build_pla(p, 6, 1 << 14);
    double mx = 0;
    for (std::size_t j = 0; j < f.N; ++j) {
        mx = std::max(mx, std::abs(f.boundary.values[j]));
        double g = f.g_point.values[j].real();
        if (std::isfinite(g)) CHECK(std::abs(f.boundary.values[j]) == doctest::Approx(std::exp(g)).epsilon(1e-12));
    }
    CHECK(mx == doctest::Approx(std::exp(p.plateau[6])).epsilon(1e-12));
}

TEST_CASE("negative-frequency energy on the Abel circle") {
    ProfileFamily p = family(8, 2);
    for (int n = 0; n <= 8; ++n) {
        PlaFunction f = build_pla(p, n, 1 << 16);
        CHECK(f.hinf.abel_fraction < 1e-6);
        CHECK(f.hinf.pass);
    }
    CHECK_THROWS_AS(build_pla(p, 8, 1 << 12), Error);
}

TEST_CASE("taylor_coeff on monomial and constant ladders") {
    for (int k : {0, 1, 5, 17}) {
        TaylorLadder L = monomial_ladder(k);
        CHECK(std::abs(taylor_coeff(L, k) - 1.0) < 1e-12);
        CHECK(std::abs(taylor_coeff(L, k + 1)) < 1e-12);
    }
    TaylorLadder one = monomial_ladder(0);
    for (long m : {1L, 2L, 9L, 100L}) CHECK(std::abs(taylor_coeff(one, m)) < 1e-12);
    auto all = taylor_coeffs(monomial_ladder(3), 40);
    for (long m = 0; m <= 40; ++m) CHECK(std::abs(all[std::size_t(m)] - (m == 3 ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("ladder depth rule and strict capability") {
    ProfileFamily p = family(6);
    TaylorLadder L = make_ladder(p, 1 << 14);
    CHECK(L.depth_for(1) == 0);
    CHECK(L.depth_for(4) == 4);
    CHECK(L.depth_for(5) == 5);
    CHECK(L.depth_for(1 << 10) == 6);
    TaylorLadder S = make_ladder(p, 1 << 14, 2.0, true);
    CHECK_THROWS_AS(S.depth_for(1 << 10), Error);
    CHECK(S.max_usable_m() == 8);
}

TEST_CASE("contour extraction: stable under refinement, close to the boundary read-off") {
    ProfileFamily p = family(6, 3);
    TaylorLadder coarse = make_ladder(p, 1 << 14), fine = make_ladder(p, 1 << 18);
    for (long m : {2L, 3L, 5L, 6L}) {
        cplx c = taylor_coeff(fine, m);
        CHECK(std::abs(taylor_coeff(coarse, m) - c) < 1e-5);
        // the sampled boundary carries aliasing from the singular conjugate; it converges slowly in N
        PlaFunction f = build_pla(p, fine.depth_for(m), 1 << 18);
        CHECK(std::abs(c - f.spectrum.at(m)) < 1e-2);
    }
}

TEST_CASE("analytic polynomial data gives the zero series") {
    SpectralSeries fhat;
    fhat.coeffs.assign(64, 0.0);
    fhat.at(0) = 1.0, fhat.at(1) = 2.0, fhat.at(3) = cplx(0, 1);
    std::vector<cplx> F(17, 0.0);
    F[0] = 1.0, F[1] = 2.0, F[3] = cplx(0, 1);
    NullSeries s = null_series_from(fhat, F, 16);
    CHECK(s.trivial());
    CHECK(s.max_abs == 0.0);
}

TEST_CASE("constructed series: c(0) and nontriviality") {
    ProfileFamily p = family(8, 0);
    const std::size_t N = 1 << 16;
    PlaFunction f = build_pla(p, 8, N);
    NullSeries s = null_series(f, p, make_ladder(p, N), 1 << 10);
    cplx mean = 0;
    for (std::size_t j = 0; j < N; ++j)
        if (classify(p.set, f.boundary.t(j), 8).status != PointStatus::inside_deepest) mean += f.boundary.values[j];
    mean /= double(N);
    // F_n(0) = exp(mean of g_n) = 1 at every depth
    CHECK(std::abs(s.c.at(0) - (mean - 1.0)) < 1e-9);
    CHECK(s.max_negative > 10 * s.triviality_tolerance);
}

TEST_CASE("decay fit on synthetic tails") {
    WeightSpec w = WeightSpec::power(2);
    NullSeries exact = synthetic(1 << 10, [&](long m) { return std::exp(-eval_weight(w, std::log2(double(m)))); });
    DecayReport r = decay_report(exact, w, 1, 10);
    CHECK(r.c_hat == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.pass);
    NullSeries slow = synthetic(1 << 14, [](long m) { return 1.0 / std::sqrt(double(m)); });
    DecayReport bad = decay_report(slow, w, 6, 14);
    CHECK(bad.c_hat < 0.05);
    CHECK_FALSE(bad.pass);
    CHECK_THROWS_AS(decay_report(slow, w, 15, 16), Error);
}

TEST_CASE("null check on trivial input and inside K") {
    ProfileFamily p = family(6, 0);
    NullSeries zero = synthetic(64, [](long) { return 0.0; });
    zero.depth = 6;
    auto pts = random_escaped_points(p.set, 6, 5, 1);
    NullCheckReport r = null_check(zero, p.set, pts, dyadic_list(1, 64));
    CHECK(r.degenerate);
    for (const auto& q : r.points)
        for (double v : q.abs_sums) CHECK(v == 0.0);
    double inside = p.set.left(6, 3) + p.set.sigma(6) / 3;
    CHECK_THROWS_AS(null_check(zero, p.set, {inside}, dyadic_list(1, 64)), Error);
}

TEST_CASE("null check: a smooth series minus itself") {
    // f = exp(e^{it}) has F-hat(m) = 1/m!
    const std::size_t N = 256;
    GridFunction g;
    for (std::size_t j = 0; j < N; ++j) g.values.push_back(std::exp(std::polar(1.0, two_pi * double(j) / N)));
    std::vector<cplx> F(65);
    double fact = 1;
    for (long m = 0; m <= 64; ++m) F[std::size_t(m)] = 1.0 / fact, fact *= double(m + 1);
    NullSeries s = null_series_from(analyze(g), F, 64);
    s.depth = 4;
    CHECK(s.max_abs < 1e-14);
    ProfileFamily p = family(4);
    NullCheckReport r = null_check(s, p.set, random_escaped_points(p.set, 4, 3, 0), dyadic_list(1, 64));
    for (const auto& q : r.points) CHECK(q.last < 1e-13);
}

TEST_CASE("moment integrals: depth 0 closed form, determinism") {
    ProfileFamily p0 = family(4);
    auto X = moment_integrals(p0, 0, 1 << 12, {0, 1, 7, 100});
    CHECK(std::abs(X[0] - two_pi) < 1e-12);
    for (std::size_t i = 1; i < X.size(); ++i) CHECK(std::abs(X[i]) < 1e-12);
    ProfileFamily a = family(6, 5), b = family(6, 5);
    CHECK(moment_integrals(a, 6, 1 << 14, {64, 256}) == moment_integrals(b, 6, 1 << 14, {64, 256}));
    auto Y = moment_integrals(a, 6, 1 << 14, {0});
    CHECK(std::abs(Y[0]) <= std::exp(a.plateau[6]) * two_pi * a.set.schedule.phi[6] * 1.01);
}

TEST_CASE("moment experiment warns on few trials") {
    WeightSpec w = WeightSpec::t_log();
    MomentOptions opt;
    opt.m_list = {16, 32, 64};
    opt.trials = 8;
    opt.N = 1 << 14;
    opt.max_depth = 8;
    opt.bootstrap = 20;
    MomentReport r = moment_experiment(w, derive_omega2(w), opt, false);
    CHECK(r.warning);
    CHECK(r.rows.size() == 3);
    CHECK(r.slope_lo <= r.slope_hi);
}

TEST_CASE("smoothness bound and the transfer inequality") {
    ProfileFamily p = family(6, 0);
    PlaFunction f = build_pla(p, 6, 1 << 14);
    SmoothnessReport d0 = verify_smoothness(f, p, 0, 8, 1);
    for (const auto& r : d0.rows) CHECK(r.abs_deriv == doctest::Approx(r.abs_f));
    SmoothnessReport d2 = verify_smoothness(f, p, 2, 16, 1);
    CHECK(d2.pass);
    CHECK(std::isfinite(d2.fitted_C));
    CHECK_THROWS_AS(verify_smoothness(f, p, 5, 4, 1), Error);

    GridFunction e;
    for (std::size_t j = 0; j < 256; ++j) e.values.push_back(std::exp(std::cos(two_pi * double(j) / 256)));
    for (int D = 0; D <= 4; ++D) CHECK(transfer_inequality(e, D).pass);
}
