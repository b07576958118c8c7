// Radix-2 complex FFT and helpers for extracting Fourier coefficients of
// real even 2*pi-periodic functions sampled on uniform power-of-two grids.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace toepspec {

using cplx = std::complex<double>;

// True if n is a power of two (n >= 1).
bool is_pow2(std::size_t n);

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 FFT. data.size() must be a power of two.
// Forward transform uses the e^{-i 2 pi jk / n} kernel; inverse divides by n.
void fft_inplace(std::vector<cplx>& data, bool inverse);

// DFT of real samples; returns samples.size() complex bins (forward, unscaled
// by 1/n, matching fft_inplace's forward convention).
std::vector<cplx> fft_real(std::span<const double> samples);

// Fourier coefficients c(0..max_order) of a function sampled uniformly on
// [0, 2*pi): c(j) = (1/G) sum_m samples[m] e^{-i j theta_m}. Imaginary parts
// (odd content / noise) are discarded; the caller owns the evenness contract.
std::vector<double> fourier_coeffs(std::span<const double> samples, int max_order);

}  // namespace toepspec
