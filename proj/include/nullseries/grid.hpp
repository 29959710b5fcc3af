#pragma once
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace nullseries {

using cplx = std::complex<double>;

// Samples at t_j = 2 pi j / N.
struct GridFunction {
    std::vector<cplx> values;
    std::vector<std::size_t> tags;  // singular samples
    std::string tag_rule;

    std::size_t size() const { return values.size(); }
    double t(std::size_t j) const;
    static GridFunction from_real(const std::vector<double>& v);
    std::vector<double> real() const;
};

// Two-sided coefficients c(n), -N/2 < n <= N/2, stored in FFT order (index n mod N).
struct SpectralSeries {
    std::vector<cplx> coeffs;
    std::string origin;
    int depth = -1;

    std::size_t size() const { return coeffs.size(); }
    long half() const { return long(coeffs.size() / 2); }
    cplx at(long n) const;
    cplx& at(long n);
};

bool is_power_of_two(std::size_t n);

}  // namespace nullseries
