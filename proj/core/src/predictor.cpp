#include "toepspec/predictor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toepspec/fft.hpp"

namespace toepspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

PredictorPolynomial::PredictorPolynomial(std::vector<double> coeffs, double prediction_error)
    : coeffs_(std::move(coeffs)), prediction_error_(prediction_error) {
  if (coeffs_.empty() || !(coeffs_[0] > 0.0))
    throw std::invalid_argument("PredictorPolynomial: beta_0 must be positive");
}

std::complex<double> PredictorPolynomial::eval(std::complex<double> z) const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

double PredictorPolynomial::min_modulus_on_circle(int grid) const {
  const int g = grid > 0 ? grid : 4 * (degree() + 16);
  double m = std::abs(eval({1.0, 0.0}));
  for (int i = 1; i < g; ++i) {
    const double t = 2.0 * kPi * i / g;
    m = std::min(m, std::abs(eval({std::cos(t), std::sin(t)})));
  }
  return m;
}

int PredictorPolynomial::winding_number(int grid) const {
  const int g = grid > 0 ? grid : 4 * (degree() + 16);
  double total = 0.0;
  double prev = std::arg(eval({1.0, 0.0}));
  for (int i = 1; i <= g; ++i) {
    const double t = 2.0 * kPi * i / g;
    const double cur = std::arg(eval({std::cos(t), std::sin(t)}));
    double d = cur - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    total += d;
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

PredictorPolynomial levinson(std::span<const double> autocov) {
  if (autocov.empty() || !(autocov[0] > 0.0))
    throw std::invalid_argument("levinson: need h^(0) > 0");
  const std::size_t M = autocov.size() - 1;
  std::vector<double> a(M + 1, 0.0), old(M + 1, 0.0);
  a[0] = 1.0;
  double e = autocov[0];
  for (std::size_t m = 1; m <= M; ++m) {
    double acc = autocov[m];
    for (std::size_t j = 1; j < m; ++j) acc += a[j] * autocov[m - j];
    const double k = -acc / e;
    if (!(std::abs(k) < 1.0))
      throw std::domain_error("levinson: |reflection coefficient| >= 1 (not positive definite)");
    old = a;
    for (std::size_t j = 1; j < m; ++j) a[j] = old[j] + k * old[m - j];
    a[m] = k;
    e *= 1.0 - k * k;
  }
  const double s = 1.0 / std::sqrt(e);
  for (auto& v : a) v *= s;
  return PredictorPolynomial(std::move(a), e);
}

SpectralMatchReport verify_spectral_match(const PredictorPolynomial& k,
                                          std::span<const double> autocov, int grid) {
  const int M = static_cast<int>(autocov.size()) - 1;
  if (grid > 0 && grid < 16 * M)
    throw std::invalid_argument("verify_spectral_match: quadrature grid below 16M");
  const std::size_t g = next_pow2(static_cast<std::size_t>(
      grid > 0 ? grid : std::max(16 * std::max(M, 1), 4096)));
  std::vector<double> samples(g);
  for (std::size_t m = 0; m < g; ++m) {
    const double t = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(g);
    samples[m] = 1.0 / std::norm(k.eval({std::cos(t), std::sin(t)}));
  }
  const auto c = fourier_coeffs(samples, M);
  SpectralMatchReport rep;
  rep.grid = static_cast<int>(g);
  for (int j = 0; j <= M; ++j)
    rep.max_deviation = std::max(rep.max_deviation,
                                 std::abs(c[static_cast<std::size_t>(j)] - autocov[static_cast<std::size_t>(j)]));
  return rep;
}

PredictorSzegoReport predictor_vs_szego(const PredictorPolynomial& k, const SzegoFactor& fac) {
  PredictorSzegoReport rep;
  const std::size_t terms =
      std::min(k.coeffs().size(), fac.inv_outer.size());
  if (terms == 0) throw std::invalid_argument("predictor_vs_szego: empty inputs");
  for (std::size_t j = 0; j < terms; ++j)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(k.coeff(j) - fac.inv_outer[j]));
  rep.terms = static_cast<int>(terms);
  return rep;
}

}  // namespace toepspec
