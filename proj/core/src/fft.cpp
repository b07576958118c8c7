#include "toepspec/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toepspec {

bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = data[i + j];
        const cplx v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& z : data) z *= s;
  }
}

std::vector<cplx> fft_real(std::span<const double> samples) {
  std::vector<cplx> data(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) data[i] = cplx(samples[i], 0.0);
  fft_inplace(data, false);
  return data;
}

std::vector<double> fourier_coeffs(std::span<const double> samples, int max_order) {
  const std::size_t n = samples.size();
  if (max_order < 0 || static_cast<std::size_t>(max_order) >= n)
    throw std::invalid_argument("fourier_coeffs: order out of range for grid");
  auto bins = fft_real(samples);
  std::vector<double> c(static_cast<std::size_t>(max_order) + 1);
  const double s = 1.0 / static_cast<double>(n);
  for (int j = 0; j <= max_order; ++j) c[static_cast<std::size_t>(j)] = bins[static_cast<std::size_t>(j)].real() * s;
  return c;
}

}  // namespace toepspec
