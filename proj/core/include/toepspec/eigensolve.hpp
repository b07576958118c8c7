// Spectrum of T_N(f) through the characteristic equation
//   lambda' = 1 - cos((k pi + rho_N(lambda')) / (N + 2)),  k = 1..N+1,
// plus local spectra on subintervals, gamma extraction from a dense solve,
// and the closed (1,1)-entry inversion formula.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "toepspec/phase.hpp"
#include "toepspec/toeplitz.hpp"

namespace toepspec {

struct EigenRecord {
  int k = 0;
  double lambda_prime = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;     // rho_N at the root
  double residual = 0.0;  // |1 - cos((k pi + rho)/ (N+2)) - lambda'|
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
};

struct SpectrumReport {
  int n = 0;
  std::vector<EigenRecord> records;
  std::optional<double> dense_max_dev;           // max_k |lambda_k - dense_k|
  std::optional<std::vector<double>> dense_eigenvalues;
  double max_abs_gamma = 0.0;
  bool bijection_ok = true;  // local mode: records <-> dense values in window
};

struct SolveOptions {
  bool dense_check = false;
  int sweep_points = 512;
  int sign_scan_points = 64;
  double bisect_tol = 1e-13;
  int threads = 0;           // 0: TOEPLITZ_SPECTRA_THREADS or hardware default
  std::size_t dense_cap = 4096;
};

class SpectrumSolver {
 public:
  SpectrumSolver(LoopView view, int n, SolveOptions opts = {});

  // One root of Psi_k inside the bracket: sign-scan then bisection. If the
  // scan finds several candidates, the one with the smallest |gamma| wins.
  // Throws (with the scan trace in the message) when no sign change exists.
  EigenRecord solve_k(int k, std::pair<double, double> bracket) const;
  EigenRecord solve_k(int k) const;  // bracket from the measured phase bound

  // All N+1 eigenvalues, strictly increasing.
  SpectrumReport full_spectrum() const;

  // Records for every characteristic root with lambda' in
  // (1-cos theta1, 1-cos theta2); the admissible k set is read off the range
  // of W(lambda') = (N+2) theta0 - rho_N, which makes the count exact.
  SpectrumReport local_spectrum(double theta1, double theta2) const;

  double rho(double lambda_prime) const;
  double phase_bound() const { return m_cap_; }
  const PhaseEngine& engine() const { return engine_; }

  // Closed (1,1) entry of (T_N(f) - lambda I)^{-1} at lambda = f1(lambda'):
  //   2 |P_{N+1}(0)|^2 sin((N+1) theta0 - rho_N) / sin((N+2) theta0 - rho_N).
  // Rejects lambda within 1e-10 of an eigenvalue (formula pole).
  double invert_entry_11(double lambda_prime) const;

 private:
  double psi(int k, double lambda_prime) const;

  LoopView view_;
  SolveOptions opts_;
  PhaseEngine engine_;
  PhaseSweep sweep_;
  double m_cap_ = 0.0;
};

// gamma_N(k) = (N+2) acos(1 - f1^{-1}(lambda_dense_k)) - k pi. Values outside
// the range of f1 are clamped (flagged via the returned clamp counter).
struct GammaFromDense {
  std::vector<double> gamma;
  int clamped = 0;
};
GammaFromDense gamma_from_dense(const SimpleLoopSymbol& f, int n, const DenseSpectrum& dense);

}  // namespace toepspec
