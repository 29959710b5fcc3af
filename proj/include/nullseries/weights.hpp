#pragma once
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace nullseries {

enum class WeightKind { power, t_log, t_log_pow, tabulated, omega2 };

// How omega2 is manufactured from omega.
//   log_factor: w(t) * (1 + ln(1 + t))
//   abel_dini:  w(t) * (1 + S(t)), S the piecewise-linear partial sums of 1/w(k)
//   automatic:  log_factor when it keeps sum 1/w2 divergent, abel_dini otherwise
enum class Omega2Rule { automatic, log_factor, abel_dini };

enum class Divergence { divergent, convergent, undetermined };

struct WeightClaims {
    bool ratio_increasing = false;
    bool ratio_concave = false;
    bool sum_reciprocal_divergent = false;
};

struct WeightSpec {
    WeightKind kind = WeightKind::power;
    double p = 1.0;
    double base = 2.0;
    std::vector<double> table_t;
    std::vector<double> table_v;
    Omega2Rule rule = Omega2Rule::automatic;
    std::shared_ptr<const WeightSpec> inner;
    std::vector<double> partial_sums;  // abel_dini only, S(0..)
    WeightClaims claims;

    static WeightSpec power(double p);
    static WeightSpec t_log(double base = 2.0);
    static WeightSpec t_log_pow(double p, double base = 2.0);
    static WeightSpec tabulated(std::vector<double> t, std::vector<double> v, WeightClaims claims);

    std::string describe() const;
};

double eval_weight(const WeightSpec& w, double t);

// Whether sum_n 1/w(n) diverges. Analytic for the closed families, a dyadic
// block-sum heuristic for tables.
Divergence reciprocal_sum(const WeightSpec& w);

// w(t)/t nondecreasing on a sampled grid up to t_max.
bool ratio_nondecreasing(const WeightSpec& w, double t_max = 4096.0);

// Throws a contract error when a claimed flag is contradicted.
void validate_claims(const WeightSpec& w);

WeightSpec derive_omega2(const WeightSpec& w, Omega2Rule rule = Omega2Rule::automatic,
                         int horizon = 1 << 16);

struct ThicknessSchedule {
    int n_max = 0;
    std::vector<double> phi;    // 0..n_max
    std::vector<double> sigma;  // 0..n_max
    std::vector<double> tau;    // index 0 unused (NaN), 1..n_max
    std::vector<double> omega2_at;  // omega2(k), index 0 unused
    WeightSpec omega;
    WeightSpec omega2;
};

ThicknessSchedule build_schedule(const WeightSpec& omega, const WeightSpec& w2, int n_max);

struct ScheduleLevel {
    int n = 0;
    double tau_over_sigma = 0;
    double inv_six_omega2 = 0;
    double exact_ratio = 0;
    double phi_sum_ratio = 0;   // sum_{k<=n} Phi(k) / (n Phi(n))
    double log_phi_over_log_n = 0;
    bool tau_positive = false;
    bool fits_parent = false;   // 4 tau_{n+1} + sigma_{n+1} <= sigma_n / 2
};

struct ScheduleReport {
    std::vector<ScheduleLevel> levels;
    double max_identity_error = 0;  // relative, tau/sigma and Phi ratio identities
    double max_phi_sum_ratio = 0;
    bool all_tau_positive = true;
    bool log_phi_trend_to_zero = false;
    bool all_fit = true;
};

ScheduleReport check_schedule(const ThicknessSchedule& s);

const char* to_string(WeightKind k);
const char* to_string(Omega2Rule r);
Omega2Rule omega2_rule_from_string(const std::string& s);

void to_json(nlohmann::json& j, const WeightSpec& w);
void from_json(const nlohmann::json& j, WeightSpec& w);
void to_json(nlohmann::json& j, const ThicknessSchedule& s);
void to_json(nlohmann::json& j, const ScheduleReport& r);

}  // namespace nullseries
