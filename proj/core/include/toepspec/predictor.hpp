// Predictor polynomials K_M via the Levinson recursion, the spectral-match
// property of 1/|K_M|^2, and the comparison of predictor coefficients with
// the reciprocal Szego factor.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "toepspec/symbols.hpp"

namespace toepspec {

// K_M(chi) = sum_k (T_M(h))^{-1}_{k+1,1} / sqrt((T_M(h))^{-1}_{1,1}) chi^k.
// Coefficients equal the monic prediction filter scaled by 1/sqrt(E_M).
class PredictorPolynomial {
 public:
  PredictorPolynomial(std::vector<double> coeffs, double prediction_error);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
  double prediction_error() const { return prediction_error_; }

  std::complex<double> eval(std::complex<double> z) const;  // Horner

  // min |K| over a dense unit-circle grid and the winding number there;
  // zero-free on the closed disc iff min > 0 and winding == 0.
  double min_modulus_on_circle(int grid = 0) const;
  int winding_number(int grid = 0) const;

 private:
  std::vector<double> coeffs_;
  double prediction_error_ = 0.0;
};

// Levinson recursion on h^(0..M). Rejects sequences whose reflection
// coefficients reach |k| >= 1 (Toeplitz matrix not positive definite).
PredictorPolynomial levinson(std::span<const double> autocov);

struct SpectralMatchReport {
  double max_deviation = 0.0;  // max_{|j|<=M} |(1/|K|^2)^(j) - h^(j)|
  int grid = 0;
};

// Prop: Fourier coefficients of 1/|K_M|^2 reproduce the autocovariance up to
// lag M. Quadrature grid >= 16 M (rejects smaller explicit grids).
SpectralMatchReport verify_spectral_match(const PredictorPolynomial& k,
                                          std::span<const double> autocov,
                                          int grid = 0);

struct PredictorSzegoReport {
  double max_deviation = 0.0;  // max_k |beta_k - (1/g)^(k)|
  int terms = 0;
};

// Predictor coefficients converge to those of 1/g (outer factor of the same
// symbol, positive constant term); deviation decays like O(N^{-s}).
PredictorSzegoReport predictor_vs_szego(const PredictorPolynomial& k,
                                        const SzegoFactor& fac);

}  // namespace toepspec
