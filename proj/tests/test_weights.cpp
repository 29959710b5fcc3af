#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nullseries/errors.hpp"
#include "nullseries/weights.hpp"

using namespace nullseries;

namespace {
bool throws_kind(ErrorKind k, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}
}  // namespace

TEST_CASE("eval_weight on the closed families") {
    CHECK(eval_weight(WeightSpec::t_log(), 0.0) == 0.0);
    CHECK(eval_weight(WeightSpec::t_log(), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_weight(WeightSpec::power(2), 3.0) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(throws_kind(ErrorKind::domain, [] { eval_weight(WeightSpec::power(2), -1.0); }));
}

TEST_CASE("tabulated weights interpolate and refuse to extrapolate") {
    WeightClaims c{true, false, true};
    WeightSpec w = WeightSpec::tabulated({0, 1, 2, 4}, {0, 1, 3, 9}, c);
    CHECK(eval_weight(w, 1.5) == doctest::Approx(2.0));
    CHECK(eval_weight(w, 3.0) == doctest::Approx(6.0));
    CHECK(throws_kind(ErrorKind::range, [&] { eval_weight(w, 5.0); }));
}

TEST_CASE("reciprocal sum classification") {
    CHECK(reciprocal_sum(WeightSpec::power(1)) == Divergence::divergent);
    CHECK(reciprocal_sum(WeightSpec::power(2)) == Divergence::convergent);
    CHECK(reciprocal_sum(WeightSpec::t_log()) == Divergence::divergent);
    CHECK(reciprocal_sum(WeightSpec::t_log_pow(2)) == Divergence::convergent);
    CHECK(reciprocal_sum(WeightSpec::t_log_pow(0.5)) == Divergence::divergent);
}

TEST_CASE("omega2 formula instantiation for omega(t) = t") {
    WeightSpec w2 = derive_omega2(WeightSpec::power(1), Omega2Rule::log_factor);
    for (double t : {0.5, 1.0, 7.0, 100.0})
        CHECK(eval_weight(w2, t) == doctest::Approx(t * (1 + std::log(1 + t))).epsilon(1e-14));
}

TEST_CASE("automatic rule keeps the reciprocal sum divergent") {
    WeightSpec lin = derive_omega2(WeightSpec::power(1));
    CHECK(lin.rule == Omega2Rule::log_factor);
    WeightSpec tl = derive_omega2(WeightSpec::t_log());
    CHECK(tl.rule == Omega2Rule::abel_dini);
    CHECK(reciprocal_sum(tl) != Divergence::convergent);
    CHECK(ratio_nondecreasing(tl, 1024));
    // omega << omega2: the ratio grows without bound
    CHECK(eval_weight(tl, 1000) / eval_weight(WeightSpec::t_log(), 1000) >
          eval_weight(tl, 10) / eval_weight(WeightSpec::t_log(), 10));
}

TEST_CASE("convergent weights are rejected by derive_omega2") {
    CHECK(throws_kind(ErrorKind::contract, [] { derive_omega2(WeightSpec::power(2)); }));
    WeightClaims lie{true, false, true};
    WeightSpec w = WeightSpec::tabulated({0, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096},
                                         {0, 1, 4, 16, 64, 256, 1024, 4096, 16384, 65536, 262144, 1048576,
                                          4194304, 16777216},
                                         lie);
    CHECK(throws_kind(ErrorKind::contract, [&] { validate_claims(w); }));
}

TEST_CASE("schedule: Phi(0), sigma_0 and the k^2 oracle") {
    ThicknessSchedule s = build_schedule(WeightSpec::power(2), WeightSpec::power(2), 6);
    CHECK(s.phi[0] == 1.0);
    CHECK(s.sigma[0] == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK(s.phi[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(s.phi[2] == doctest::Approx(std::exp(-1.25)).epsilon(1e-15));
    double sum = 0;
    for (int k = 1; k <= 6; ++k) {
        sum += 1.0 / (k * k);
        CHECK(s.phi[size_t(k)] == doctest::Approx(std::exp(-sum)).epsilon(1e-14));
    }
}

TEST_CASE("schedule: tau closed forms and positivity") {
    WeightSpec w = WeightSpec::t_log();
    ThicknessSchedule s = build_schedule(w, derive_omega2(w), 12);
    for (int n = 1; n <= 12; ++n) {
        size_t i = size_t(n);
        CHECK(s.tau[i] > 0);
        CHECK(s.tau[i] == doctest::Approx((s.sigma[i - 1] - 2 * s.sigma[i]) / 12).epsilon(1e-12));
        CHECK(s.tau[i] ==
              doctest::Approx(std::numbers::pi / 3 * std::ldexp(s.phi[i - 1] - s.phi[i], -n)).epsilon(1e-12));
    }
    ScheduleReport r = check_schedule(s);
    CHECK(r.all_tau_positive);
    CHECK(r.all_fit);
    CHECK(r.max_identity_error <= 1e-12);
}

TEST_CASE("Phi-sum ratio for omega2(k) = k(1 + log(1+k)) against direct summation") {
    WeightSpec lin = WeightSpec::power(1);
    WeightSpec w2 = derive_omega2(lin, Omega2Rule::log_factor);
    ScheduleReport r = check_schedule(build_schedule(lin, w2, 256));
    double cum = 0, phi_sum = 0, worst = 0;
    for (int k = 1; k <= 256; ++k) {
        cum += 1.0 / (k * (1 + std::log1p(double(k))));
        phi_sum += std::exp(-cum);
        worst = std::max(worst, phi_sum / (k * std::exp(-cum)));
    }
    CHECK(r.max_phi_sum_ratio == doctest::Approx(worst).epsilon(1e-10));
    CHECK(r.max_phi_sum_ratio <= 10);
}

TEST_CASE("nonpositive omega2 is a value error") {
    WeightClaims c{true, false, true};
    WeightSpec zero = WeightSpec::tabulated({0, 100}, {0, 0}, c);
    CHECK(throws_kind(ErrorKind::value, [&] { build_schedule(zero, zero, 3); }));
}

TEST_CASE("weight json round trip") {
    nlohmann::json j = WeightSpec::t_log_pow(0.5, 3.0);
    WeightSpec w = j.get<WeightSpec>();
    CHECK(eval_weight(w, 5.0) == doctest::Approx(eval_weight(WeightSpec::t_log_pow(0.5, 3.0), 5.0)));
}
