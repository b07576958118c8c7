#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "toepspec/fft.hpp"

using namespace toepspec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pow2 helpers") {
  CHECK(is_pow2(1));
  CHECK(is_pow2(4096));
  CHECK_FALSE(is_pow2(48));
  CHECK(next_pow2(1) == 1);
  CHECK(next_pow2(1025) == 2048);
}

TEST_CASE("fft matches a naive DFT on random input") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {8u, 64u, 256u}) {
    std::vector<cplx> data(n);
    for (auto& z : data) z = cplx(u(rng), u(rng));
    auto got = data;
    fft_inplace(got, false);
    for (std::size_t k = 0; k < n; k += n / 8) {
      cplx ref(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double ang = -2.0 * kPi * static_cast<double>(k * j % n) / static_cast<double>(n);
        ref += data[j] * cplx(std::cos(ang), std::sin(ang));
      }
      CHECK(std::abs(got[k] - ref) < 1e-10 * static_cast<double>(n));
    }
  }
}

TEST_CASE("forward-inverse round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> data(512);
  for (auto& z : data) z = cplx(u(rng), u(rng));
  auto copy = data;
  fft_inplace(copy, false);
  fft_inplace(copy, true);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(std::abs(copy[i] - data[i]) < 1e-12);
}

TEST_CASE("fourier_coeffs of 2 - 2 cos") {
  const std::size_t g = 256;
  std::vector<double> s(g);
  for (std::size_t m = 0; m < g; ++m) s[m] = 2.0 - 2.0 * std::cos(2.0 * kPi * m / g);
  auto c = fourier_coeffs(s, 4);
  CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(c[2]) < 1e-14);
  CHECK(std::abs(c[3]) < 1e-14);
}

TEST_CASE("fft rejects non power-of-two sizes") {
  std::vector<cplx> data(6);
  CHECK_THROWS_AS(fft_inplace(data, false), std::invalid_argument);
}
