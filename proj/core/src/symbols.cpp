#include "toepspec/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toepspec/fft.hpp"

namespace toepspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

// ---------------------------------------------------------------- FourierSymbol

FourierSymbol::FourierSymbol(std::vector<double> coeffs, double decay_exponent,
                             std::string name)
    : coeffs_(std::move(coeffs)), decay_exponent_(decay_exponent), name_(std::move(name)) {
  if (coeffs_.empty()) throw std::invalid_argument("FourierSymbol: empty coefficients");
}

FourierSymbol FourierSymbol::from_samples(std::span<const double> samples, int order,
                                          double decay_exponent) {
  if (order < 0) throw std::invalid_argument("fourier_coeffs: negative order");
  if (samples.size() < static_cast<std::size_t>(2 * order + 1))
    throw std::invalid_argument("fourier_coeffs: grid too coarse (need >= 2J+1 samples)");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("fourier_coeffs: non-finite sample");

  std::vector<double> padded(samples.begin(), samples.end());
  if (!is_pow2(padded.size())) {
    // resample is the caller's job; fall back to a direct projection
    const std::size_t g = padded.size();
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (int j = 0; j <= order; ++j) {
      double acc = 0.0;
      for (std::size_t m = 0; m < g; ++m)
        acc += padded[m] * std::cos(j * (2.0 * kPi * static_cast<double>(m) / static_cast<double>(g)));
      c[static_cast<std::size_t>(j)] = acc / static_cast<double>(g);
    }
    FourierSymbol out(std::move(c), decay_exponent);
    return out;
  }
  auto c = fourier_coeffs(padded, order);
  FourierSymbol out(std::move(c), decay_exponent);
  // aliasing proxy: largest magnitude in the top octave of kept orders
  double tail = 0.0;
  for (int j = std::max(1, order / 2); j <= order; ++j)
    tail = std::max(tail, std::abs(out.coeffs_[static_cast<std::size_t>(j)]));
  out.quad_error_ = tail / std::max<double>(1, samples.size());
  return out;
}

double FourierSymbol::operator()(double theta) const {
  double acc = coeffs_[0];
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    acc += 2.0 * coeffs_[j] * std::cos(static_cast<double>(j) * theta);
  return acc;
}

double FourierSymbol::coeff(long j) const {
  const std::size_t a = static_cast<std::size_t>(j < 0 ? -j : j);
  return a < coeffs_.size() ? coeffs_[a] : 0.0;
}

double FourierSymbol::tail_weight() const {
  const double J = static_cast<double>(order());
  return std::abs(coeffs_.back()) * std::pow(std::max(J, 1.0), decay_exponent_);
}

double FourierSymbol::min_on_grid(int grid) const {
  double m = (*this)(0.0);
  for (int i = 1; i < grid; ++i) m = std::min(m, (*this)(2.0 * kPi * i / grid));
  return m;
}

// ------------------------------------------------------------- SimpleLoopSymbol

SimpleLoopSymbol::SimpleLoopSymbol(std::function<double(double)> f1,
                                   std::function<double(double)> f1_prime, double fpp0,
                                   double fpp_pi, std::string name)
    : f1_(std::move(f1)), f1p_(std::move(f1_prime)), fpp0_(fpp0), fpp_pi_(fpp_pi),
      name_(std::move(name)) {
  if (!f1_) throw std::invalid_argument("SimpleLoopSymbol: missing f1");
  // membership check: f increasing on (0, pi) sampled on a fine grid
  const int g = 2048;
  double prev = f1_(0.0);
  for (int i = 1; i <= g; ++i) {
    const double x = 2.0 * static_cast<double>(i) / g;
    const double v = f1_(x);
    if (!(v > prev))
      throw std::invalid_argument("SimpleLoopSymbol: f1 not strictly increasing on [0,2]");
    prev = v;
  }
  if (!(fpp0_ > 0.0) || !(fpp_pi_ < 0.0))
    throw std::invalid_argument("SimpleLoopSymbol: need f''(0) > 0 and f''(pi) < 0");
}

SimpleLoopSymbol SimpleLoopSymbol::from_fourier(const FourierSymbol& f) {
  auto eval = [f](double theta) { return f(theta); };
  auto f1 = [eval](double x) {
    const double c = std::clamp(1.0 - x, -1.0, 1.0);
    return eval(std::acos(c));
  };
  // f''(0) and f''(pi) from the cosine series: f'' = -sum 2 j^2 c(j) cos(j theta)
  double fpp0 = 0.0, fpppi = 0.0;
  for (int j = 1; j <= f.order(); ++j) {
    const double w = 2.0 * j * static_cast<double>(j) * f.coeff(j);
    fpp0 -= w;
    fpppi -= w * std::cos(kPi * j);
  }
  return SimpleLoopSymbol(f1, nullptr, fpp0, fpppi, f.name());
}

double SimpleLoopSymbol::f1_prime(double x) const {
  if (f1p_) return f1p_(x);
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  const double lo = std::max(0.0, x - h), hi = std::min(2.0, x + h);
  return (f1_(hi) - f1_(lo)) / (hi - lo);
}

double SimpleLoopSymbol::operator()(double theta) const {
  return f1_(1.0 - std::cos(theta));
}

double SimpleLoopSymbol::invert(double lambda) const {
  const double lo = f1_(0.0), hi = f1_(2.0);
  const double tol = 1e-13 * std::max(1.0, std::abs(lambda));
  if (lambda < lo - tol || lambda > hi + tol)
    throw std::domain_error("invert_simple_loop: lambda outside [f1(0), f1(2)]");
  if (lambda <= lo) return 0.0;
  if (lambda >= hi) return 2.0;
  double a = 0.0, b = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double v = f1_(m);
    if (std::abs(v - lambda) <= tol) return m;
    (v < lambda ? a : b) = m;
    if (b - a < 1e-16) break;
  }
  return 0.5 * (a + b);
}

std::vector<double> SimpleLoopSymbol::fourier_coeffs(int order, int grid) const {
  std::size_t g = grid > 0 ? static_cast<std::size_t>(grid)
                           : next_pow2(std::max<std::size_t>(8 * (static_cast<std::size_t>(order) + 1), 4096));
  g = next_pow2(g);
  std::vector<double> samples(g);
  for (std::size_t m = 0; m < g; ++m)
    samples[m] = (*this)(2.0 * kPi * static_cast<double>(m) / static_cast<double>(g));
  return toepspec::fourier_coeffs(samples, order);
}

// --------------------------------------------------------------- SingularSymbol

std::vector<double> pure_singular_coeffs(double alpha, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  d[0] = std::tgamma(2.0 * alpha + 1.0) / std::pow(std::tgamma(alpha + 1.0), 2);
  for (int u = 0; u < order; ++u)
    d[static_cast<std::size_t>(u) + 1] =
        d[static_cast<std::size_t>(u)] * (static_cast<double>(u) - alpha) / (static_cast<double>(u) + 1.0 + alpha);
  return d;
}

double frac_laplacian_constant(double alpha) {
  return std::tgamma(2.0 * alpha + 1.0) * std::sin(kPi * alpha) / kPi;
}

SingularSymbol::SingularSymbol(double alpha, FourierSymbol c, int order)
    : alpha_(alpha), c_(std::move(c)) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("SingularSymbol: alpha must be positive");
  if (alpha == 0.5)
    throw std::invalid_argument("SingularSymbol: alpha = 1/2 is excluded");
  if (order < 1) throw std::invalid_argument("SingularSymbol: order < 1");
  if (c_.min_on_grid() <= 0.0)
    throw std::invalid_argument("SingularSymbol: c must be strictly positive");

  const int jc = c_.order();
  const auto pure = pure_singular_coeffs(alpha, order + jc);
  coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
  for (int u = 0; u <= order; ++u) {
    double acc = 0.0;
    for (int v = -jc; v <= jc; ++v)
      acc += c_.coeff(v) * pure[static_cast<std::size_t>(std::abs(u - v))];
    coeffs_[static_cast<std::size_t>(u)] = acc;
  }
  double csum = 0.0;
  for (int v = -jc; v <= jc; ++v) csum += std::abs(c_.coeff(v));
  conv_tail_ = std::abs(pure.back()) * csum;
}

double SingularSymbol::coeff(long j) const {
  const std::size_t a = static_cast<std::size_t>(j < 0 ? -j : j);
  if (a >= coeffs_.size())
    throw std::out_of_range("SingularSymbol: coefficient index beyond truncation order");
  return coeffs_[a];
}

double SingularSymbol::operator()(double theta) const {
  return std::pow(2.0 - 2.0 * std::cos(theta), alpha_) * c_(theta);
}

double SingularSymbol::tail_constant(long u) const {
  if (u < 1) throw std::domain_error("tail_constant: u must be >= 1");
  const double c0 = c_(0.0);
  return coeff(u) * std::pow(static_cast<double>(u), 2.0 * alpha_ + 1.0) / c0;
}

std::string SingularSymbol::name() const {
  return "halpha(" + std::to_string(alpha_) + ")*" + c_.name();
}

// ------------------------------------------------------------------ SzegoFactor

std::complex<double> SzegoFactor::eval_outer(double theta) const {
  std::complex<double> acc(0.0, 0.0);
  std::complex<double> z(std::cos(theta), std::sin(theta)), p(1.0, 0.0);
  for (double g : outer_plus) {
    acc += g * p;
    p *= z;
  }
  return acc;
}

SzegoFactor szego_factorize(const std::function<double(double)>& h, int order, int grid) {
  if (order < 0) throw std::invalid_argument("szego_factorize: negative order");
  std::size_t g = grid > 0 ? next_pow2(static_cast<std::size_t>(grid))
                           : next_pow2(std::max<std::size_t>(8 * (static_cast<std::size_t>(order) + 1), 4096));
  std::vector<double> logs(g);
  for (std::size_t m = 0; m < g; ++m) {
    const double v = h(2.0 * kPi * static_cast<double>(m) / static_cast<double>(g));
    if (!(v > 0.0))
      throw std::domain_error("szego_factorize: symbol not strictly positive on grid");
    logs[m] = std::log(v);
  }
  SzegoFactor fac;
  fac.log_coeffs = fourier_coeffs(logs, order);

  // g = exp(L(0)/2 + sum_{k>=1} L(k) chi^k): triangular recurrence for the
  // exponential of a power series keeps g (and 1/g) exactly analytic.
  auto exp_series = [&](double sign) {
    std::vector<double> s(fac.log_coeffs.size());
    s[0] = sign * fac.log_coeffs[0] / 2.0;
    for (std::size_t k = 1; k < s.size(); ++k) s[k] = sign * fac.log_coeffs[k];
    std::vector<double> b(s.size());
    b[0] = std::exp(s[0]);
    for (std::size_t n = 1; n < s.size(); ++n) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * s[k] * b[n - k];
      b[n] = acc / static_cast<double>(n);
    }
    return b;
  };
  fac.outer_plus = exp_series(+1.0);
  fac.inv_outer = exp_series(-1.0);

  double worst = 0.0;
  const int check = 4 * (order + 1);
  for (int m = 0; m < check; ++m) {
    const double theta = 2.0 * kPi * m / check;
    const double rec = std::norm(fac.eval_outer(theta));
    worst = std::max(worst, std::abs(rec - h(theta)));
  }
  fac.reconstruction_error = worst;
  return fac;
}

SzegoFactor szego_factorize(const FourierSymbol& h, int order) {
  const int ord = order >= 0 ? order : h.order();
  return szego_factorize([&h](double t) { return h(t); }, ord);
}

}  // namespace toepspec
