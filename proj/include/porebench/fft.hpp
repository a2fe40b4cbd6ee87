#pragma once

#include <complex>
#include <span>
#include <vector>

namespace porebench::fft {

// Real-to-complex forward transform, bins 0..n/2, no normalisation.
std::vector<std::complex<double>> forward_real(std::span<const double> signal);

// Complex-to-real inverse of a half spectrum for a length-n signal,
// normalised by 1/n so inverse_real(forward_real(x), n) == x.
std::vector<double> inverse_real(std::span<const std::complex<double>> half_spectrum, std::size_t n);

}  // namespace porebench::fft
