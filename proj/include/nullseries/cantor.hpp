#pragma once
#include <cstdint>
#include <vector>

#include "nullseries/weights.hpp"

namespace nullseries {

enum class OffsetMode { random, fixed };

// Stateless counter-based uniform on [0,1): a splitmix64 finalizer of (seed, stream, index).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct CantorSet {
    ThicknessSchedule schedule;
    int n_max = 0;
    std::uint64_t seed = 0;
    OffsetMode mode = OffsetMode::random;
    double fixed_value = 0.0;
    std::vector<std::vector<double>> s;  // s[n][k], level 0 empty
    std::vector<std::vector<double>> a;  // left endpoints a[n][k]
    std::vector<std::vector<double>> q;  // Q points introduced at level n, sorted

    double sigma(int n) const { return schedule.sigma[size_t(n)]; }
    double tau(int n) const { return schedule.tau[size_t(n)]; }
    double left(int n, long k) const { return a[size_t(n)][size_t(k)]; }
    double right(int n, long k) const { return a[size_t(n)][size_t(k)] + sigma(n); }
};

CantorSet generate(const ThicknessSchedule& s, int n_max, std::uint64_t seed,
                   OffsetMode mode = OffsetMode::random, double fixed_value = 0.0);

enum class PointStatus { escaped, inside_deepest, singular };
enum class Gap { left, right };

struct PointClass {
    double t = 0;
    PointStatus status = PointStatus::inside_deepest;
    int level = 0;     // escape level n: t in K_{n-1} \ K_n; singular: level of the Q point
    long parent = 0;   // index of I(n-1, k) containing t
    int half = 0;      // 0 left half, 1 right half of the parent
    Gap gap = Gap::left;
    long interval = 0; // inside_deepest: index at depth
};

double wrap_angle(double t);

PointClass classify(const CantorSet& set, double t, int depth);

enum class DistanceTarget { K_n, K_prime };
double distance(const CantorSet& set, double t, DistanceTarget target, int n);

struct MeasureRow {
    int n;
    double measure;
    double expected;
    double rel_error;
};
std::vector<MeasureRow> measure_report(const CantorSet& set);

struct GeometryReport {
    bool nested = true;
    bool margins = true;       // >= 3 tau on the left, >= 2 tau on the right inside each half
    bool disjoint = true;      // neighbouring intervals at one level separated by >= 2 tau_n
    double worst_margin = 0;   // min over levels of (margin / tau) - 2
    long checked = 0;
    bool ok() const { return nested && margins && disjoint; }
};
GeometryReport check_geometry(const CantorSet& set);

void to_json(nlohmann::json& j, const CantorSet& c);
// Rebuilds the set from its seed/mode; the endpoint table, if present, is checked for agreement.
CantorSet cantor_from_json(const nlohmann::json& j, const ThicknessSchedule& s);

}  // namespace nullseries
