#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nullseries/weights.hpp"

namespace nullseries {

const char* code_version();

struct Tolerances {
    double triviality = 1e-9;
    double c_min = 0.05;
    double quadrature = 1e-10;
    double hinf = 1e-6;
    double null_drop = 4.0;
};

struct MomentConfig {
    int trials = 32;
    int grid_log2 = 20;
    long m_lo = 256;
    long m_hi = 8192;
    int max_depth = 12;
    double min_cells = 4.0;
    std::uint64_t seed_base = 1000;
};

struct AuditConfig {
    WeightSpec omega = WeightSpec::power(2.0);
    std::vector<double> deltas{1.0 / 16, 1.0 / 64, 1.0 / 256};
    int k_max = 8;
};

struct RunConfig {
    WeightSpec omega = WeightSpec::t_log(2.0);
    Omega2Rule omega2_rule = Omega2Rule::automatic;
    int n_max = 10;
    int grid_log2 = 18;
    std::uint64_t seed = 0;
    long M = 1L << 14;
    double ladder_C = 2.0;
    Tolerances tol;
    int decay_j_lo = 6;
    int decay_j_hi = 14;
    int null_points = 10;
    int smooth_D = 2;
    int smooth_probes = 16;
    MomentConfig moments;
    AuditConfig audit;
    std::string out = "out";

    std::size_t N() const { return std::size_t(1) << grid_log2; }
    std::string run_id() const;  // derived from the configuration content
};

// Unknown keys and ill-typed values are config errors.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);
void validate(const RunConfig& c);

}  // namespace nullseries
