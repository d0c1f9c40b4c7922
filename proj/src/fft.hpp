#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace radar_cdr::detail {

// Thin RAII layer over FFTW. Plans use FFTW_ESTIMATE so the chosen algorithm,
// and therefore every output bit, is identical from run to run. Plans are
// cached per thread; planning itself is serialized internally.

/// Unnormalized forward complex DFT of length n, X[k] = sum x[n] e^{-j2pi kn/N}.
void fft_forward(std::span<std::complex<double>> inout);

/// Unnormalized inverse complex DFT (no 1/N factor).
void fft_inverse(std::span<std::complex<double>> inout);

/// Forward real-to-complex DFT; `out` receives bins 0..n/2.
void fft_real_forward(std::span<const double> in, std::span<std::complex<double>> out);

/// Inverse complex-to-real DFT of a Hermitian half spectrum (no 1/N factor).
void fft_real_inverse(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace radar_cdr::detail
