#include "nullseries/grid.hpp"

#include <numbers>

namespace nullseries {

double GridFunction::t(std::size_t j) const { return 2.0 * std::numbers::pi * double(j) / double(values.size()); }

GridFunction GridFunction::from_real(const std::vector<double>& v) {
    GridFunction g;
    g.values.assign(v.begin(), v.end());
    return g;
}

std::vector<double> GridFunction::real() const {
    std::vector<double> r(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) r[j] = values[j].real();
    return r;
}

cplx SpectralSeries::at(long n) const {
    long N = long(coeffs.size());
    return coeffs[std::size_t(((n % N) + N) % N)];
}

cplx& SpectralSeries::at(long n) {
    long N = long(coeffs.size());
    return coeffs[std::size_t(((n % N) + N) % N)];
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace nullseries
