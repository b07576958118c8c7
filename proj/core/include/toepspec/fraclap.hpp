// Fractional-Laplacian asymptotics for T_N(h_alpha): explicit constants,
// eigenvalue approximations with printed error bounds, sampled mode vectors
// matched against dense eigenpairs, and the discrete-to-continuous operator
// check against a principal-value quadrature oracle.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "toepspec/symbols.hpp"
#include "toepspec/toeplitz.hpp"

namespace toepspec {

struct FracConstants {
  double alpha = 0.0;
  double C_alpha = 0.0;        // fractional Laplacian normalization
  double C0 = 0.0;             // (3/2)^{3+2a} + (3/4)^{3+2a}
  double C1 = 0.0;             // (4/pi)^{-2a} C0 (5/3 + 2^{1-2a} + (1-a)/a)
  double C_of_alpha = 0.0;     // Remark-1 constant, N -> infinity reading
  double L_alpha = 0.0;        // mode-index threshold (larger of two readings)
  double L_alpha_alt = 0.0;    // the other reading, reported alongside
  double L_prime_alpha = 0.0;  // eigenvector threshold
};

// Rejects alpha outside (0,1) or equal to 1/2. When finite_n is given the
// 1/N^alpha term of C(alpha) is kept instead of dropped.
FracConstants frac_constants(double alpha, std::optional<int> finite_n = std::nullopt);

double mu_k(double alpha, int k);        // k pi/2 - (1-a) pi/4
double mu_tilde_k(double alpha, int k);  // 2^{2a} mu_k^{2a}

struct EigApprox {
  double approx = 0.0;
  double bound = 0.0;
  bool below_threshold = false;  // k < ceil(L_alpha): theorem silent there
};

// approx = (k pi/N - (1-a) pi/(2N))^{2a} c0; bound from the theorem display
//   2^{2a+1} C(a) (1-a) / (sqrt(a) k) N^{-2a}.
EigApprox eig_approx(double alpha, double c0, int n, int k);

// Piecewise mode profile; branch by k mod 4 (0,1,2,3 -> -sin,-cos,+sin,+cos)
// of mu_k (1 - 2x).
double phi_star(double alpha, int k, double x);

// (Z_{N,k})_{m+1} = phi_star(m/N) c0 / sqrt(N), m = 0..N (needs N >= 2).
std::vector<double> mode_vector(double alpha, double c0, int n, int k);

struct FracMode {
  int k = 0;
  double mu = 0.0;
  double mu_tilde = 0.0;
  double approx_eig = 0.0;
  double bound = 0.0;
  int matched_index = -1;     // dense eigenvalue index (0-based)
  double matched_lambda = 0.0;
  double eig_gap = 0.0;       // |matched - approx|
  double overlap = 0.0;       // |<Z/||Z||, Y>|
  bool below_threshold = false;
  bool collision = false;     // another k matched the same dense index
};

// Matches each k in [k_min, k_max] to the dense eigenvalue nearest its
// approximation; requires a dense spectrum with eigenvectors.
std::vector<FracMode> match_modes(double alpha, const FourierSymbol& c, int n,
                                  int k_min, int k_max, const DenseSpectrum& dense);

struct FraclapApplySample {
  int m = 0;
  double x = 0.0;
  double value = 0.0;  // N^{2a} (T_N(h_a) f_grid)_m
};

// Applies N^{2a} T_N(h_alpha) to samples of f on {m/N} and keeps the window
// x in [0.2, 0.8]. Rejects f with support outside [0.1, 0.9]
// (max |f| > 1e-14 there).
std::vector<FraclapApplySample> discrete_fraclap_apply(
    double alpha, const FourierSymbol& c, int n, const std::function<double(double)>& f);

struct PvResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// (-Delta)^alpha f at x: C_alpha P.V. integral of (f(x)-f(y))/|x-y|^{1+2a},
// f extended by zero. Symmetric pairing, analytic core correction on
// |y - x| < eps (second-derivative term), t = u^2 substitution outside.
PvResult fraclap_pv_oracle(double alpha, const std::function<double(double)>& f, double x,
                           double eps = 1e-4);

// C^1 cutoff: 0 for t < -1/3, 9/2 (t+1/3)^2, 1 - 9/2 (t-1/3)^2, 1 for t > 1/3.
double cutoff_q(double t);

// Smooth bump supported on |x - 1/2| < 0.3 used by the convergence tests.
double bump_profile(double x);

}  // namespace toepspec
