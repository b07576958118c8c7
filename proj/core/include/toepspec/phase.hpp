// Phase machinery for the characteristic equation. For a trial value
// lambda' in (0,2) the regular factor H_{lambda'} is defined by
//   f(theta) - lambda = ((1 - cos theta) - lambda') H_{lambda'}(theta),
// its predictor polynomial P_{N+1} drives
//   tau_N = (P(chi) / conj(P(chi)))^2   at chi = chi_{lambda'} = e^{i theta0},
// and rho_N is the continuous half-phase of tau_N with rho_N -> 0 as
// lambda' -> 0+. Eigenvalues of T_N(f) are exactly the solutions of
//   lambda' = 1 - cos((k pi + rho_N(lambda')) / (N + 2)).
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "toepspec/predictor.hpp"
#include "toepspec/symbols.hpp"

namespace toepspec {

// Minimal view the phase engine needs: the symbol on the circle and the loop
// coordinate f1 with its derivative (for the removable singularity of H).
struct LoopView {
  std::function<double(double)> eval_theta;  // f(theta)
  std::function<double(double)> f1;          // f1(x), x in [0,2]
  std::function<double(double)> f1_prime;    // may be empty
  std::function<std::vector<double>(int)> column;  // h^(0..n); grid projection if empty
  std::string name;

  static LoopView from(const SimpleLoopSymbol& f);
  static LoopView from(const SingularSymbol& h);

  std::vector<double> toeplitz_column(int n) const;
};

struct HFactor {
  double lambda_prime = 0.0;
  std::vector<double> samples;   // H on the uniform theta grid
  std::vector<double> autocov;   // H^(0..N+1), the Levinson input
  int grid = 0;
};

struct PhasePoint {
  double lambda_prime = 0.0;
  double theta0 = 0.0;                  // acos(1 - lambda')
  std::complex<double> chi{1.0, 0.0};   // chi_{lambda'}
  std::complex<double> tau{1.0, 0.0};   // unit modulus
  double rho_raw = 0.0;                 // principal half-phase, in (-pi/2, pi/2]
  double predictor_at_zero = 0.0;       // P_{N+1}(0) = beta_0
};

// Holds the theta grid and the lambda'-independent symbol samples; every
// eval() is pure and safe to call concurrently.
class PhaseEngine {
 public:
  PhaseEngine(LoopView view, int n, int grid = 0);

  HFactor h_factor(double lambda_prime) const;
  PhasePoint eval(double lambda_prime) const;

  int n() const { return n_; }
  int grid() const { return grid_; }
  const LoopView& view() const { return view_; }

 private:
  LoopView view_;
  int n_ = 0;
  int grid_ = 0;
  std::vector<double> x_;   // 1 - cos(theta_m)
  std::vector<double> f_;   // f(theta_m)
};

struct PhaseSample {
  double lambda_prime = 0.0;
  double theta0 = 0.0;
  std::complex<double> chi{1.0, 0.0};
  std::complex<double> tau{1.0, 0.0};
  double rho_raw = 0.0;  // principal
  double rho = 0.0;      // unwrapped continuous branch
};

// Continuous-branch sweep of rho_N over a sorted lambda' grid. Construction
// rejects grids whose neighbouring raw tau-phases jump by >= pi/2.
class PhaseSweep {
 public:
  PhaseSweep(const PhaseEngine& engine, std::vector<double> lambda_grid);
  PhaseSweep(const PhaseEngine& engine, double lo, double hi, int points = 512);

  const std::vector<PhaseSample>& samples() const { return samples_; }
  double max_abs_rho() const;
  int unwrap_jumps() const { return jumps_; }

  // rho_N at an arbitrary lambda', branch-locked to the nearest sweep sample.
  double rho_at(const PhaseEngine& engine, double lambda_prime) const;
  double rho_at(const PhasePoint& p) const;

 private:
  std::vector<PhaseSample> samples_;
  int jumps_ = 0;
};

// Unwraps a sequence of principal phases into a continuous branch anchored so
// the first element keeps its principal value. Throws if a step reaches
// max_jump (default pi/2).
std::vector<double> unwrap_phases(const std::vector<double>& raw,
                                  double max_jump = 1.5707963267948966);

struct RhoLimitResult {
  double rho = 0.0;         // limit half-phase
  double tail_bound = 0.0;  // bound on the truncated sine-series tail
  int terms = 0;
};

// N -> infinity phase via the Szego factor of H_{lambda'}:
//   rho_tilde = -4 sum_{k>=1} L(k) sin(k theta0), rho = rho_tilde / 2,
// with L = Fourier coefficients of ln H. Rejects runs whose tail estimate
// exceeds tol (hint: raise order).
RhoLimitResult rho_limit(const LoopView& view, double lambda_prime, int order = 512,
                         double tol = 1e-10);

}  // namespace toepspec
