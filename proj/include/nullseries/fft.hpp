#pragma once
#include <complex>
#include <vector>

namespace nullseries::fft {

// Unnormalized in-place transforms:
//   forward  X_k = sum_j x_j e^{-2 pi i jk/N}
//   backward x_j = sum_k X_k e^{+2 pi i jk/N}
void forward(std::vector<std::complex<double>>& x);
void backward(std::vector<std::complex<double>>& x);

}  // namespace nullseries::fft
