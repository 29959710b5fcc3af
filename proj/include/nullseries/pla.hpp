#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nullseries/harmonic.hpp"
#include "nullseries/profile.hpp"

namespace nullseries {

struct HInfReport {
    double raw_fraction = 0;    // negative-frequency energy share of the sampled boundary function
    double abel_fraction = 0;   // same share on the circle |z| = abel_radius
    double abel_radius = 0;
    double tolerance = 1e-6;
    bool pass = false;
};

struct PlaOptions {
    double abel_rho = 16.0;        // radius 1 - abel_rho / N
    double hinf_tolerance = 1e-6;
    bool enforce_resolution = true;  // N >= 2^(n+6)
};

struct PlaFunction {
    int depth = 0;
    std::size_t N = 0;
    SpectralSeries g_spec;     // point spectrum of g_n
    GridFunction g_point;      // exact g_n(t_j), poles tagged
    GridFunction conj;         // spectral conjugate at t_j
    GridFunction boundary;     // f_n(t_j) = exp(g_n + i conj)
    SpectralSeries spectrum;   // transform of boundary
    double plateau = 0;
    double cells_per_tau = 0;  // tau_n N / 2 pi
    HInfReport hinf;
};

PlaFunction build_pla(const ProfileFamily& p, int n, std::size_t N, const PlaOptions& opt = {});

// Negative-frequency energy share of exp(H) on radius r, H the analytic completion of the spectrum.
double negative_energy_fraction(const SpectralSeries& g_spec, double r, std::size_t Q);

// Depth ladder for Taylor coefficients of F_n = exp(G_n + i G~_n).
struct TaylorLadder {
    int depth = 0;                 // deepest available level
    std::size_t N = 0;             // grid used for every level's spectrum
    double C = 2.0;                // n(m) = ceil(C log2 m)
    bool strict = false;           // capability error instead of capping
    // Samples of F_d at r e^{2 pi i j/Q}.
    std::function<std::vector<cplx>(int d, double r, std::size_t Q)> circle;

    int depth_for(long m) const;   // n(m), capped unless strict
    long max_usable_m() const;
};

TaylorLadder make_ladder(const ProfileFamily& p, std::size_t N, double C = 2.0, bool strict = false);

// Taylor coefficient from samples on radius r: (1/Q) sum_j F_j e^{-i m theta_j} r^{-m}.
cplx contour_coefficient(const std::vector<cplx>& samples, double r, long m);
cplx taylor_coeff(const TaylorLadder& L, long m);
// All coefficients 0..m_max, one contour per dyadic block and depth.
std::vector<cplx> taylor_coeffs(const TaylorLadder& L, long m_max);

struct NullSeries {
    SpectralSeries c;
    long M = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    std::string omega;
    std::size_t N = 0;
    double ladder_C = 2.0;
    double max_abs = 0;
    double max_negative = 0;
    double triviality_tolerance = 1e-9;
    bool trivial() const { return max_abs <= triviality_tolerance; }
};

// c(n) = fhat(n) - Fhat(n) for 0 <= n <= M, c(n) = fhat(n) for -M <= n < 0,
// fhat read from the boundary function restricted to the complement of K_depth.
NullSeries null_series(const PlaFunction& f, const ProfileFamily& p, const TaylorLadder& L, long M,
                       double triviality_tolerance = 1e-9);
// Same assembly from explicit coefficient data; Fhat(m) for m >= 0.
NullSeries null_series_from(const SpectralSeries& fhat, const std::vector<cplx>& Fhat, long M,
                            double triviality_tolerance = 1e-9);

struct DecayRow {
    int j = 0;                 // dyad [2^j, 2^{j+1})
    double block_max = 0;      // max |c(-m)| over the dyad
    double at_dyadic = 0;      // |c(-2^j)|
    double omega_j = 0;        // omega(j)
    double c_hat = 0;          // -log(block_max) / omega(j)
    double deficit = 0;        // c_min omega(j) + log(block_max)
};

struct DecayReport {
    std::vector<DecayRow> rows;
    double c_hat = 0;
    double c_min = 0.05;
    double deficit_slope = 0;
    bool pass = false;
};

DecayReport decay_report(const NullSeries& s, const WeightSpec& w, int j_lo, int j_hi, double c_min = 0.05);

struct NullCheckPoint {
    double t = 0;
    int escape_level = 0;
    std::vector<long> N_list;
    std::vector<double> abs_sums;
    double peak = 0;
    double last = 0;
    double drop = 0;  // peak / last
    bool pass = false;
};

struct NullCheckReport {
    std::vector<NullCheckPoint> points;
    double required_drop = 4.0;
    bool degenerate = false;
    bool pass = false;
};

NullCheckReport null_check(const NullSeries& s, const CantorSet& set, const std::vector<double>& points,
                           const std::vector<long>& N_list, double required_drop = 4.0);
std::vector<double> random_escaped_points(const CantorSet& set, int depth, int count, std::uint64_t seed);
std::vector<long> dyadic_list(long lo, long hi);

struct MomentOptions {
    std::vector<long> m_list;
    int trials = 64;
    std::uint64_t seed_base = 1000;
    std::size_t N = std::size_t(1) << 20;
    int max_depth = 12;             // recipe depth
    double ladder_C = 2.0;
    double min_cells_per_tau = 4.0; // deepest level whose tau_n spans this many cells
    int min_trials = 30;
    int bootstrap = 200;
};

struct MomentRow {
    long m = 0;
    int depth = 0;
    double mean_x4 = 0;
    double stderr_x4 = 0;
};

struct MomentReport {
    std::vector<MomentRow> rows;
    double slope = 0;
    double slope_lo = 0, slope_hi = 0;  // bootstrap 90% interval
    double threshold = -1.0;
    int depth_used = 0;
    int resolved_depth = 0;
    double cells_per_tau = 0;
    double refinement_change = 0;  // relative change of trial-0 E|X|^4 profile under N -> 2N
    bool warning = false;
    std::string warning_text;
    bool pass = false;
};

// X_m = sum_k int_{I(n,k)} f_n e^{-imx} dx on one trial's family.
std::vector<cplx> moment_integrals(const ProfileFamily& p, int n, std::size_t N, const std::vector<long>& m_list);
int resolved_depth(const ThicknessSchedule& s, std::size_t N, double min_cells, int cap);
MomentReport moment_experiment(const WeightSpec& omega, const WeightSpec& omega2, const MomentOptions& opt,
                               bool check_refinement = true);

struct SmoothRow {
    double t = 0;
    double dist = 0;
    double abs_f = 0;
    double abs_deriv = 0;
    double needed_C = 0;
};

struct SmoothnessReport {
    int D = 0;
    std::vector<SmoothRow> rows;
    std::size_t excluded = 0;
    double fitted_C = 0;
    bool pass = false;
};

// Finite-difference check of |f^(D)| <= |f| (C D)^{C D} / d(x,K')^{2D} at escaped probes.
SmoothnessReport verify_smoothness(const PlaFunction& f, const ProfileFamily& p, int D, int probes,
                                   std::uint64_t seed);

struct TransferReport {
    int D = 0;
    double sup_derivative = 0;
    double worst_ratio = 0;  // max_m |fhat(m)| m^D / sup|f^(D)|
    bool pass = false;
};
// |fhat(m)| <= |m|^{-D} sup|f^(D)| on a band-limited grid function.
TransferReport transfer_inequality(const GridFunction& f, int D);

void to_json(nlohmann::json& j, const HInfReport& r);
void to_json(nlohmann::json& j, const DecayReport& r);
void to_json(nlohmann::json& j, const NullCheckReport& r);
void to_json(nlohmann::json& j, const MomentReport& r);
void to_json(nlohmann::json& j, const SmoothnessReport& r);

}  // namespace nullseries
