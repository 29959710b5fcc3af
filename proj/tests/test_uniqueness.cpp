#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/uniqueness.hpp"

using namespace nullseries;

namespace {
constexpr double pi = std::numbers::pi;

bool throws_kind(ErrorKind k, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

bool within(const HarmonicMeasureEstimate& e, double exact, double k = 3.0) {
    return std::abs(e.value - exact) <= k * e.stderr_;
}
}  // namespace

TEST_CASE("arcs wrap around the circle") {
    Arc a{5.5, 0.5};
    CHECK(a.length() == doctest::Approx(0.5 + 2 * pi - 5.5));
    CHECK(a.contains(0.1));
    CHECK(a.contains(6.0));
    CHECK_FALSE(a.contains(3.0));
    CHECK(Arc{0, 2 * pi}.length() == doctest::Approx(2 * pi));
}

TEST_CASE("Privalov disks meet the unit circle orthogonally at the arc ends") {
    for (double len : {0.1, 1.0, 3.0}) {
        Arc I{0.7, 0.7 + len};
        OrthogonalDisk d = privalov_disk(I);
        CHECK(std::norm(d.center) == doctest::Approx(1 + d.radius * d.radius));
        CHECK(std::abs(std::polar(1.0, I.lo) - d.center) == doctest::Approx(d.radius));
        CHECK(std::abs(std::polar(1.0, I.hi) - d.center) == doctest::Approx(d.radius));
    }
    CHECK(throws_kind(ErrorKind::domain, [] { privalov_disk(Arc{0, 3.5}); }));
}

TEST_CASE("harmonic measure: disk arcs, annulus, full boundary") {
    auto arc = harmonic_measure(Domain::unit_disk(), 0.0, Target::outer_arc(1.0, 2.5), 20000, 1);
    CHECK(within(arc, 1.5 / (2 * pi)));
    auto ann = harmonic_measure(Domain::annulus(0.7), 0.85, Target::inner_circle(), 20000, 2);
    CHECK(within(ann, std::log(0.85) / std::log(0.7)));
    auto all = harmonic_measure(Domain::annulus(0.7), cplx(0.1, 0.8), Target::everything(), 2000, 3);
    CHECK(all.value == 1.0);
    CHECK(all.ambiguous_ok);
}

TEST_CASE("walks are reproducible per path index") {
    WalkOptions opt;
    ExitPoint a = walk_on_spheres(Domain::unit_disk(), 0.3, 7, 123, opt);
    ExitPoint b = walk_on_spheres(Domain::unit_disk(), 0.3, 7, 123, opt);
    CHECK(a.w == b.w);
    CHECK(std::abs(std::abs(a.w) - 1.0) < 1e-12);
}

TEST_CASE("harmonic measure preconditions") {
    CHECK(throws_kind(ErrorKind::domain, [] { harmonic_measure(Domain::unit_disk(), 1.2, Target::outer_circle(), 1000, 0); }));
    CHECK(throws_kind(ErrorKind::domain, [] { harmonic_measure(Domain::annulus(0.5), 0.2, Target::outer_circle(), 1000, 0); }));
    CHECK(throws_kind(ErrorKind::precondition, [] { harmonic_measure(Domain::unit_disk(), 0.0, Target::outer_circle(), 10, 0); }));
}

TEST_CASE("Privalov domain with E the full circle has no disks") {
    Domain d = Domain::privalov({Arc{0, 2 * pi}});
    CHECK(d.disks.empty());
    CHECK(harmonic_measure(d, cplx(0.2, -0.5), Target::outer_circle(), 2000, 4).value == 1.0);
    // with no gap the scenario domain is the annulus 1 - l < |w| < 1
    HarmprivScenario s = HarmprivScenario::centered_gap(0.25, 0.2, 0.0, 0.0);
    HarmprivReport r = check_harmpriv(s, 20000, 5);
    CHECK(within(r.estimate, 1 - std::log(std::abs(s.z())) / std::log(0.8)));
}

TEST_CASE("Privalov bound: C1 below 20 and the deficit scales with eps") {
    HarmprivReport big = check_harmpriv(HarmprivScenario::centered_gap(0.25, 0.2), 20000, 11);
    HarmprivReport small = check_harmpriv(HarmprivScenario::centered_gap(0.125, 0.2), 20000, 12);
    CHECK(big.pass);
    CHECK(small.pass);
    CHECK(big.fitted_C1 <= 20);
    double ratio = big.deficit / small.deficit;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.7);
}

TEST_CASE("Privalov scenario preconditions") {
    CHECK(throws_kind(ErrorKind::precondition, [] { check_harmpriv(HarmprivScenario::centered_gap(0.3, 0.2), 1000, 0); }));
    CHECK(throws_kind(ErrorKind::precondition, [] { check_harmpriv(HarmprivScenario::centered_gap(0.25, 0.2, 0, 1.5), 1000, 0); }));
}

TEST_CASE("truncation inequality: equality cases and brute force") {
    TruncationResult top = truncation_lemma({4.0, 4.0}, {0.5, 0.5}, -1.0, 4.0, 0.5);
    CHECK(top.eps == doctest::Approx(1.0));
    CHECK(top.lhs == doctest::Approx(4.0));
    CHECK(top.rhs == doctest::Approx(4.0));
    for (double eps : {0.1, 0.5, 0.9}) {
        TruncationResult r = truncation_lemma({-3.0, 2.0}, {1 - eps, eps}, -3.0, 2.0, -1.0);
        CHECK(std::abs(r.lhs - r.rhs) <= 1e-12);
        CHECK(r.eps == doctest::Approx(eps));
    }
    TruncationSweep s = truncation_sweep(1000, 77);
    CHECK(s.failures == 0);
    CHECK(s.instances == 1000);
    CHECK(throws_kind(ErrorKind::precondition, [] { truncation_lemma({5.0}, {1.0}, 0.0, 4.0, 1.0); }));
    CHECK(throws_kind(ErrorKind::precondition, [] { truncation_lemma({1.0, 2.0}, {0.3, 0.3}, 0.0, 4.0, 1.0); }));
}

TEST_CASE("audit of a single analytic term against the closed form") {
    WeightSpec w = WeightSpec::power(2);
    SpectralSeries c;
    c.coeffs.assign(std::size_t(1) << 12, 0.0);
    c.at(5) = 1.0;
    UniquenessAudit a = audit_uniqueness(c, w, 1.0 / 16, 6);
    CHECK(a.C2 == 0.0);
    for (const auto& row : a.rows) {
        double l = 5 * std::log(row.r);
        double A = -0.5 * row.k * row.k;
        CHECK(row.A == doctest::Approx(A));
        CHECK(row.I == doctest::Approx(std::max(l, A)).epsilon(1e-12));
        CHECK(row.eps == doctest::Approx((std::max(l, A) - A) / -A).epsilon(1e-12));
    }
}

TEST_CASE("synthetic t^2 tail: recursion at every audited level") {
    WeightSpec w = WeightSpec::power(2);
    SpectralSeries c = synthetic_tail(w, 1 << 10);
    CHECK(std::abs(c.at(-1) - 1.0) < 1e-15);
    CHECK(std::abs(c.at(-4) - std::exp(-4.0)) < 1e-15);
    for (double d : {1.0 / 16, 1.0 / 64, 1.0 / 256}) {
        UniquenessAudit a = audit_uniqueness(c, w, d, 8);
        CHECK(a.recursion_pass);
        for (const auto& row : a.rows) {
            if (!row.has_recursion) continue;
            CHECK(row.pass);
            CHECK(row.ineq_lhs <= row.ineq_rhs + 1e-10);
        }
        CHECK(a.chain.laurent_holds);
    }
}

TEST_CASE("audit rejects degenerate or short input") {
    WeightSpec w = WeightSpec::power(2);
    SpectralSeries zero;
    zero.coeffs.assign(4096, 0.0);
    CHECK(throws_kind(ErrorKind::triviality, [&] { audit_uniqueness(zero, w, 1.0 / 16, 8); }));
    SpectralSeries shortc = synthetic_tail(w, 100);
    CHECK(throws_kind(ErrorKind::capability, [&] { audit_uniqueness(shortc, w, 1.0 / 16, 8); }));
    SpectralSeries ok = synthetic_tail(w, 1 << 10);
    CHECK(throws_kind(ErrorKind::contract, [&] { audit_uniqueness(ok, WeightSpec::t_log(), 1.0 / 16, 8); }));
    CHECK(throws_kind(ErrorKind::domain, [&] { audit_uniqueness(ok, w, 1.5, 8); }));
}

TEST_CASE("domain and target json") {
    nlohmann::json j = {{"kind", "annulus"}, {"inner", 0.6}};
    Domain d = domain_from_json(j);
    CHECK(d.kind == DomainKind::annulus);
    CHECK(d.inner == 0.6);
    CHECK(throws_kind(ErrorKind::config, [] { domain_from_json({{"kind", "square"}}); }));
}
