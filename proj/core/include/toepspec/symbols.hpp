// Symbol classes for Toeplitz matrices: real even 2*pi-periodic functions held
// as Fourier coefficients, simple-loop symbols f(theta) = f1(1 - cos theta),
// singular symbols h_a(theta) = |1 - e^{i theta}|^{2a} c(theta), and Szego
// (outer) factorizations h = g * conj(g).
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toepspec {

// Real even symbol: h(theta) = c(0) + 2 sum_{j>=1} c(j) cos(j theta).
// Coefficients are stored for j = 0..J; c(-j) = c(j) is implicit.
class FourierSymbol {
 public:
  FourierSymbol() = default;
  FourierSymbol(std::vector<double> coeffs, double decay_exponent = 0.0,
                std::string name = "fourier");

  // fourier_coeffs: project uniform samples on [0, 2*pi) onto coefficients
  // 0..J. Rejects grids smaller than 2J+1 and NaN samples; symmetrizes by
  // dropping imaginary parts. The aliasing proxy max_{j in top octave} |c(j)|
  // is stored as quad_error_estimate().
  static FourierSymbol from_samples(std::span<const double> samples, int order,
                                    double decay_exponent = 0.0);

  double operator()(double theta) const;
  double coeff(long j) const;  // c(|j|), 0 outside truncation
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double decay_exponent() const { return decay_exponent_; }
  double quad_error_estimate() const { return quad_error_; }
  const std::string& name() const { return name_; }

  // Wiener-weight proxy: partial sums of |c(j)| (|j|+1)^s are finite by
  // construction; returns the tail estimate |c(J)| J^s.
  double tail_weight() const;

  double min_on_grid(int grid = 4096) const;

 private:
  std::vector<double> coeffs_{0.0};
  double decay_exponent_ = 0.0;
  double quad_error_ = 0.0;
  std::string name_ = "fourier";
};

// Simple-loop symbol: even, f'(theta) > 0 on (0, pi), written f = f1(1-cos).
// Holds the monotone f1 on [0, 2] and (optionally analytic) f1'.
class SimpleLoopSymbol {
 public:
  SimpleLoopSymbol(std::function<double(double)> f1,
                   std::function<double(double)> f1_prime, double fpp0, double fpp_pi,
                   std::string name);

  // Build from a Fourier representation; f1(x) = f(acos(1-x)). Verifies
  // monotonicity of f on a fine grid of (0, pi) and the f1/f consistency.
  static SimpleLoopSymbol from_fourier(const FourierSymbol& f);

  double f1(double x) const { return f1_(x); }
  double f1_prime(double x) const;
  double operator()(double theta) const;

  double min_value() const { return f1_(0.0); }   // f(0)
  double max_value() const { return f1_(2.0); }   // f(pi)
  double second_derivative_0() const { return fpp0_; }
  double second_derivative_pi() const { return fpp_pi_; }
  const std::string& name() const { return name_; }

  // invert_simple_loop: lambda' = f1^{-1}(lambda) by bracketed bisection,
  // |f1(lambda') - lambda| <= 1e-13 * max(1, |lambda|). Rejects lambda
  // outside [f1(0), f1(2)].
  double invert(double lambda) const;

  std::vector<double> fourier_coeffs(int order, int grid = 0) const;

 private:
  std::function<double(double)> f1_;
  std::function<double(double)> f1p_;  // may be empty; central difference then
  double fpp0_ = 0.0, fpp_pi_ = 0.0;
  std::string name_;
};

// Singular symbol h_a = |1 - chi|^{2a} c = (2 - 2 cos theta)^a c(theta).
// Coefficients of the pure part come from the Gamma-ratio closed form
//   d(0) = Gamma(2a+1)/Gamma(a+1)^2,  d(u+1) = d(u) (u-a)/(u+1+a),
// then are convolved with the coefficients of c.
class SingularSymbol {
 public:
  // Rejects a <= 0 and a == 1/2; requires min c > 0 on a grid.
  SingularSymbol(double alpha, FourierSymbol c, int order);

  double alpha() const { return alpha_; }
  const FourierSymbol& c() const { return c_; }
  double coeff(long j) const;
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator()(double theta) const;  // pointwise (2-2cos)^a c(theta)
  double convolution_tail() const { return conv_tail_; }

  // Lemma-1 tail functional: |u|^{2a+1} c_hat(u) / c(0); |.| tends to
  // frac_laplacian_constant(alpha) as u grows. Rejects u < 1 or u > order.
  double tail_constant(long u) const;

  std::string name() const;

 private:
  double alpha_ = 0.0;
  FourierSymbol c_;
  std::vector<double> coeffs_;
  double conv_tail_ = 0.0;
};

// Coefficients of (2 - 2 cos theta)^a for u = 0..order (closed form).
std::vector<double> pure_singular_coeffs(double alpha, int order);

// Normalizing constant of the 1-D fractional Laplacian,
//   C_a = 2^{2a} Gamma(a + 1/2) / (sqrt(pi) |Gamma(-a)|)
//       = Gamma(2a + 1) sin(pi a) / pi,
// which is also the limit of |u|^{2a+1} |h_a^(u)| / c(0).
double frac_laplacian_constant(double alpha);

// Szego factorization h = g * conj(g) with g analytic (coefficients of g and
// 1/g vanish for j < 0 by construction).
struct SzegoFactor {
  std::vector<double> log_coeffs;   // L(0..K) of ln h
  std::vector<double> outer_plus;   // g(0..K)
  std::vector<double> inv_outer;    // (1/g)(0..K)
  double reconstruction_error = 0.0;  // max over grid of | |g|^2 - h |

  std::complex<double> eval_outer(double theta) const;
};

// Factorize a strictly positive symbol sampled via its evaluator. The log is
// sampled on a grid of size >= 8 * order (power of two) to control aliasing.
// Rejects symbols with min h <= 0 on the grid.
SzegoFactor szego_factorize(const std::function<double(double)>& h, int order,
                            int grid = 0);
SzegoFactor szego_factorize(const FourierSymbol& h, int order = -1);

}  // namespace toepspec
