#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nullseries/grid.hpp"
#include "nullseries/weights.hpp"

namespace nullseries {

struct Arc {
    double lo = 0;  // counterclockwise from lo to hi, angles in radians
    double hi = 0;
    double length() const;
    bool contains(double theta) const;
};

struct OrthogonalDisk {
    cplx center;
    double radius = 0;
    Arc over;  // the complementary arc it is erected on
};

enum class DomainKind { disk, annulus, privalov };

// Unit disk, optionally minus |z| <= inner and minus the Privalov disks.
struct Domain {
    DomainKind kind = DomainKind::disk;
    double inner = 0;
    std::vector<Arc> E;  // privalov only
    std::vector<OrthogonalDisk> disks;

    static Domain unit_disk();
    static Domain annulus(double inner_radius);
    static Domain privalov(std::vector<Arc> E, double inner_radius = 0);

    bool contains(cplx z) const;
    double boundary_distance(cplx z) const;
};

// Disk through e^{i lo}, e^{i hi} orthogonal to the unit circle; half-angle below pi/2.
OrthogonalDisk privalov_disk(const Arc& I);

enum class Component { outer, inner, disk };

struct ExitPoint {
    Component component = Component::outer;
    std::size_t disk = 0;
    cplx w;  // projection onto the component
};

struct Target {
    bool outer = false;
    bool restrict_arc = false;
    Arc arc;
    bool inner = false;
    bool disks = false;

    static Target outer_circle();
    static Target outer_arc(double lo, double hi);
    static Target inner_circle();
    static Target everything();
    bool hit(const ExitPoint& e) const;
};

struct WalkOptions {
    double step_fraction = 0.95;
    double eps_stop = 1e-5;
    long max_steps = 1000000;
};

struct HarmonicMeasureEstimate {
    double value = 0;
    double stderr_ = 0;
    long paths = 0;
    std::uint64_t seed = 0;
    double step_fraction = 0.95;
    double eps_stop = 1e-5;
    long ambiguous = 0;
    double ambiguous_fraction = 0;
    bool ambiguous_ok = true;  // below 0.5%
    double mean_steps = 0;
};

// Exit position of path `index`; deterministic in (seed, index).
ExitPoint walk_on_spheres(const Domain& d, cplx z, std::uint64_t seed, std::uint64_t index,
                          const WalkOptions& opt, long* steps = nullptr, bool* ambiguous = nullptr);

HarmonicMeasureEstimate harmonic_measure(const Domain& d, cplx z, const Target& target, long paths,
                                         std::uint64_t seed, const WalkOptions& opt = {});

// Mean of h over exit positions, for the Kakutani identity.
HarmonicMeasureEstimate exit_expectation(const Domain& d, cplx z, const std::function<double(const ExitPoint&)>& h,
                                         long paths, std::uint64_t seed, const WalkOptions& opt = {});

struct HarmprivScenario {
    double eps = 0.25;
    double l = 0.2;
    double zeta = 0;                 // direction of z
    std::vector<Arc> gaps;           // complement of E
    static HarmprivScenario centered_gap(double eps, double l, double zeta = 0, double fill = 1.0);
    cplx z() const;
};

struct HarmprivReport {
    double eps = 0, l = 0;
    double gap_mass = 0, allowed_mass = 0;
    HarmonicMeasureEstimate estimate;
    double deficit = 0;
    double fitted_C1 = 0;   // deficit / eps
    double C1_max = 20;
    bool pass = false;
};

HarmprivReport check_harmpriv(const HarmprivScenario& s, long paths, std::uint64_t seed, double C1_max = 20);

struct TruncationResult {
    double A = 0, B = 0, D = 0;
    double mean = 0;
    double eps = 0;
    double lhs = 0;  // int max(L, D)
    double rhs = 0;  // eps B + (1 - eps) D
    bool holds = false;
};

TruncationResult truncation_lemma(const std::vector<double>& L, const std::vector<double>& mu, double A, double B,
                                  double D);

struct TruncationSweep {
    long instances = 0;
    long failures = 0;
    double max_excess = 0;  // max (lhs - rhs), negative when every case is strict
};
TruncationSweep truncation_sweep(long instances, std::uint64_t seed);

struct AuditRow {
    int k = 0;
    double r = 0, A = 0, B = 0;
    double I = 0, eps = 0;
    bool has_prime = false;
    double I_prime = 0, eps_prime = 0;  // with P_{k-1}
    double max_truncated = 0;            // max of [l_k]_{A_k} on circle r_k
    bool bounded = true;                 // A_k <= [l_k]_{A_k} <= B_k there
    std::size_t excluded_nodes = 0;
    // recursion at k (needs k+1 and P_{k-1})
    bool has_recursion = false;
    double measure_swap_lhs = 0, measure_swap_rhs = 0;  // int [l_{k+1}]_{A_{k+1}} dP_k  vs  I_{k+1}
    double level_swap_lhs = 0, level_swap_rhs = 0;  // I_k  vs  int [l_{k+1}]_{A_k} dP_k
    double main_lhs = 0, main_rhs = 0;      // int [l_{k+1}]_{A_k} dP_k  vs  eps'_{k+1} B_{k+1} + (1-eps'_{k+1}) A_k
    double ineq_lhs = 0, ineq_rhs = 0;      // eps'_k  vs  eps'_{k+1}(1 + C2/(B_k-A_k)) + slack/(B_k-A_k)
    bool pass = false;
};

struct LaurentChain {
    int k0 = 0;
    double eps_k0 = 0;
    double eps_over_sqrt_delta = 0;
    double max_log_f = 0;      // max of l_{k0} on |z| = 1 - sqrt(delta)
    double omega_at = 0;       // omega(log2 1/delta)
    double c = 0;              // -max_log_f / omega_at
    long n_lo = 0, n_hi = 0;   // coefficient range checked
    double worst_ratio = 0;    // max |c(n)| / ((1-sqrt delta)^{-1-n} e^{-c omega})
    bool laurent_holds = false;
    bool collapse = false;     // c > 0
};

struct AuditOptions {
    int nodes_min_log2 = 12;
    int nodes_extra_log2 = 6;
    double z0_angle = 0;
    int annulus_radii = 9;
};

struct UniquenessAudit {
    double delta = 0;
    cplx z0;
    int k_lo = 0, k_max = 0;
    std::string omega;
    double C2_measured = 0;
    double C2 = 0;
    double C_measure_swap = 0;   // residual <= C k^2 2^{-k}, k the lower level
    double C_level_swap = 0;   // residual <= C e^{-omega(k)/2}
    double C_omega = 0;    // recursion in the form eps'_k <= eps'_{k+1}(1 + C/omega(k)) + C k 2^{-k}
    std::vector<AuditRow> rows;
    LaurentChain chain;
    std::size_t excluded_nodes = 0;
    bool recursion_pass = false;
    bool eps_in_unit = false;
    std::string notes;
};

// c(-m) = exp(-omega(log2 m)) for 1 <= m <= m_max; zero elsewhere.
SpectralSeries synthetic_tail(const WeightSpec& w, long m_max);

// Largest m with c(-m) stored.
long negative_extent(const SpectralSeries& c);

// f_k on r e^{2 pi i j / Q}.
std::vector<cplx> fk_circle(const SpectralSeries& c, int k, double r, std::size_t Q);

UniquenessAudit audit_uniqueness(const SpectralSeries& c, const WeightSpec& w, double delta, int k_max,
                               const AuditOptions& opt = {});

struct ChainFit {
    std::vector<double> deltas;
    std::vector<double> c_values;
    double c_fit = 0;   // min over deltas
    bool laurent_holds = false;
    bool recursion_pass = false;
    bool pass = false;
};
ChainFit fit_chain(const std::vector<UniquenessAudit>& audits);

void to_json(nlohmann::json& j, const HarmonicMeasureEstimate& e);
void to_json(nlohmann::json& j, const HarmprivReport& r);
void to_json(nlohmann::json& j, const UniquenessAudit& a);
void to_json(nlohmann::json& j, const ChainFit& f);
Domain domain_from_json(const nlohmann::json& j);
Target target_from_json(const nlohmann::json& j);

}  // namespace nullseries
