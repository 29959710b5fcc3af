#pragma once
#include <array>
#include <vector>

#include "nullseries/cantor.hpp"
#include "nullseries/grid.hpp"
#include "nullseries/weights.hpp"

namespace nullseries {

constexpr int bump_max_order = 8;

// a(x) and its derivatives, exact through truncated Taylor arithmetic.
double bump(double x, int D = 0);
// Smallest C with max_x |a^(d)(x)| <= (C d)^(C d) for all 1 <= d <= D.
double bump_growth_constant(int D = bump_max_order);

double l_eval(double t);                                // -inf at t = 0
enum class Side { plus, minus };
double l_pm(double s, double x, Side side);
double l_primitive(double x);                            // int_0^x l, x in [0,1]
double l_pm_primitive(double s, double x, Side side);    // int_0^x l^pm
double profile_mass();                                   // Lambda = int_0^1 l

// Independent quadrature of int_0^x l^pm using the x^(2/3) substitution at both poles.
double l_pm_quadrature(double s, double x, Side side);

enum class PieceKind { flank_plus, flank_minus, plateau };

struct Piece {
    double start;
    double end;
    PieceKind kind;
    int level;    // flank level, or n for plateau pieces
    long index;   // child index at that level
    double s;     // offset of the child (flanks)
};

struct ProfileFamily {
    CantorSet set;
    WeightSpec omega;
    double lambda = 0;
    std::vector<double> omega_at;   // omega(n)
    std::vector<double> neg_mass;   // W_n = sum_{l<=n} 2^l omega(l) tau_l (2 - 4 Lambda)
    std::vector<double> plateau;    // plateau(n) = W_n / (2 pi Phi(n)), plateau(0) = 0

    int n_max() const { return set.n_max; }
    // Tiling of the circle by g_n pieces in increasing order.
    std::vector<Piece> pieces(int n) const;
    double piece_value(const Piece& p, double t) const;
    double piece_primitive(const Piece& p, double t) const;   // int_start^t
    double piece_mass(const Piece& p) const;
};

ProfileFamily build_profile(const CantorSet& set, const WeightSpec& omega);

// g_n(t); -inf at poles.
double g_eval(const ProfileFamily& p, int n, double t);
// Exact integral of g_n over [u, v] inside [0, 2 pi].
double g_integral(const ProfileFamily& p, int n, double u, double v);
// int over the circle by panel quadrature; zero up to quadrature error.
double g_total_quadrature(const ProfileFamily& p, int n);
// Negative mass of g_n inside I(n-1, k), by quadrature.
double negative_mass_quadrature(const ProfileFamily& p, int n, long k);

// Cell averages (1/h) int_{t_j - h/2}^{t_j + h/2} g_n; exact mass on every cell.
std::vector<double> g_cell_averages(const ProfileFamily& p, int n, std::size_t N);
// Point samples g_n(t_j); poles are tagged and carry -inf.
GridFunction g_point_samples(const ProfileFamily& p, int n, std::size_t N);

struct GrowthLevel {
    int n = 0;
    double ratio_min = 0, ratio_max = 0;   // (i)
    double plateau = 0, plateau_over_n = 0; // (ii)
    double neg_over_power = 0;             // (iii) W_n / n^(1 - eps)
    double increment_constant = 0;         // (iv) 2^n sup |int_t^u (g_{n+1} - g_n)|
};

struct GrowthReport {
    std::vector<GrowthLevel> levels;
    double eps = 0.1;
    bool ratio_bounded = false;
    bool plateau_over_n_decreasing = false;  // for n >= burn_in
    bool neg_mass_growing = false;
    double neg_mass_exponent = 0;  // log-log slope of W_n for n >= burn_in
    bool increment_stable = false;
    int burn_in = 4;
    double increment_spread = 0;   // max/min of the fitted constants
};

GrowthReport growth_report(const ProfileFamily& p, double eps = 0.1, int burn_in = 4);

void write_profile_csv(const ProfileFamily& p, int n, std::size_t N, const std::string& path);

}  // namespace nullseries
