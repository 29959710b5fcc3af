#pragma once
#include <string>
#include <vector>

#include "nullseries/grid.hpp"
#include "nullseries/profile.hpp"

namespace nullseries {

// c(n) = (1/N) sum_j f(t_j) e^{-i n t_j}
SpectralSeries analyze(const GridFunction& g);
// Inverse of analyze; N >= series size zero-pads (the Nyquist term is split evenly).
GridFunction synthesize(const SpectralSeries& s, std::size_t N);

// Multiplier -i sign(n); the mean and the Nyquist term are removed.
SpectralSeries conjugate(const SpectralSeries& s);
GridFunction conjugate(const GridFunction& g);

enum class PoissonMode { harmonic_extension, conjugate, analytic_completion };

cplx poisson_eval(const SpectralSeries& s, cplx z, PoissonMode mode);
// Values at r e^{2 pi i j / Q}, j < Q, through one inverse transform.
std::vector<cplx> circle_values(const SpectralSeries& s, double r, PoissonMode mode, std::size_t Q);
// Smallest power-of-two N whose dropped tail r^{N/2} is below tol.
std::size_t grid_for_radius(double r, double tol);

// Point-value spectrum of g_n: transformed cell averages divided by the box factor sinc(n/N).
SpectralSeries g_spectrum(const ProfileFamily& p, int n, std::size_t N);

struct CauchyLevel {
    int n = 0;
    double fit_G = 0;       // max over probes of |G_{n+1}-G_n| 2^n d
    double fit_conj = 0;
    double max_diff_G = 0;
    double center_diff = 0;  // |G_{n+1}(0) - G_n(0)|
};

struct CauchyReport {
    std::vector<CauchyLevel> levels;
    std::size_t probes_used = 0;
    std::size_t probes_excluded = 0;
    double min_distance = 0;
    double fit_spread = 0;       // max/min of fit_G over levels
    double fit_constant = 0;     // C serving all levels
    bool geometric_decay = false;  // max_diff_G decreases level over level
    bool pass = false;
};

double distance_to_arcs(const CantorSet& set, int n, cplx z);

CauchyReport cauchy_convergence_check(const ProfileFamily& p, std::size_t N, const std::vector<cplx>& probes,
                                      int n_top = -1);

void write_series_csv(const SpectralSeries& s, const std::string& path, long max_index = -1);
SpectralSeries read_series_csv(const std::string& path);
void write_grid_csv(const GridFunction& g, const std::string& path);

}  // namespace nullseries
