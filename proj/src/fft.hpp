#pragma once

#include <complex>
#include <span>
#include <vector>

namespace specquant::detail {

// Real-to-complex DFT of `input` (length L): returns X_k = sum_j x_j e^{-2 pi i jk/L}
// for k = 0..L/2.
std::vector<std::complex<double>> real_dft(std::span<const double> input);

// Inverse of real_dft without the 1/L factor: given the half spectrum of a
// length-L real signal, returns sum_k X_k e^{2 pi i jk/L}.
std::vector<double> inverse_real_dft(std::span<const std::complex<double>> half_spectrum,
                                     std::size_t length);

}  // namespace specquant::detail
