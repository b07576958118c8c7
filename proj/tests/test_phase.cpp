#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "toepspec/phase.hpp"

using namespace toepspec;

namespace {

constexpr double kPi = std::numbers::pi;

LoopView tridiag_view() {
  LoopView v;
  v.f1 = [](double x) { return 2.0 * x; };
  v.f1_prime = [](double) { return 2.0; };
  v.eval_theta = [](double t) { return 2.0 - 2.0 * std::cos(t); };
  v.name = "tridiag";
  return v;
}

LoopView loop1_view() {
  LoopView v;
  v.f1 = [](double x) { return x + 0.25 * x * x; };
  v.f1_prime = [](double x) { return 1.0 + 0.5 * x; };
  v.eval_theta = [](double t) {
    const double x = 1.0 - std::cos(t);
    return x + 0.25 * x * x;
  };
  v.name = "loop1";
  return v;
}

// f1(x) = 2 + (x - 1)/(0.25 + x): at lambda' = 1 the regular factor is the
// AR(1) spectrum H = 1/|1 - 0.5 chi|^2, whose predictor is exactly 1 - 0.5 chi.
LoopView ar1_factor_view() {
  LoopView v;
  v.f1 = [](double x) { return 2.0 + (x - 1.0) / (0.25 + x); };
  v.f1_prime = [](double x) { return 1.25 / ((0.25 + x) * (0.25 + x)); };
  v.eval_theta = [](double t) {
    const double x = 1.0 - std::cos(t);
    return 2.0 + (x - 1.0) / (0.25 + x);
  };
  v.name = "ar1-factor";
  return v;
}

}  // namespace

TEST_CASE("h_factor: tridiagonal symbol gives H == 2") {
  PhaseEngine eng(tridiag_view(), 16);
  for (double lp : {0.2, 1.0, 1.7}) {
    auto h = eng.h_factor(lp);
    CHECK(h.autocov[0] == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t j = 1; j < h.autocov.size(); ++j) CHECK(std::abs(h.autocov[j]) < 1e-12);
  }
}

TEST_CASE("h_factor: loop1 factor is 1 + (x + lambda')/4 exactly") {
  PhaseEngine eng(loop1_view(), 24);
  for (double lp : {0.5, 1.0, 1.3}) {
    auto h = eng.h_factor(lp);
    CHECK(h.autocov[0] == doctest::Approx(1.0 + (1.0 + lp) / 4.0).epsilon(1e-12));
    CHECK(h.autocov[1] == doctest::Approx(-0.125).epsilon(1e-10));
    for (std::size_t j = 2; j < h.autocov.size(); ++j) CHECK(std::abs(h.autocov[j]) < 1e-10);
  }
}

TEST_CASE("h_factor: removable singularity filled with f1'") {
  // lambda' = 1 puts theta0 = pi/2 on the grid, so x - lambda' = 0 exactly
  PhaseEngine eng(loop1_view(), 16);
  auto h = eng.h_factor(1.0);
  const std::size_t quarter = static_cast<std::size_t>(h.grid) / 4;
  CHECK(h.samples[quarter] == doctest::Approx(1.5).epsilon(1e-12));  // f1'(1)
}

TEST_CASE("h_factor: reconstruction (x - lambda') H = f - lambda on the grid") {
  PhaseEngine eng(loop1_view(), 32);
  const double lp = 0.5;
  auto h = eng.h_factor(lp);
  const double lam = 0.5 + 0.25 * 0.25;
  const int g = h.grid;
  for (int m = 0; m < g; m += 7) {
    const double t = 2.0 * kPi * m / g;
    const double x = 1.0 - std::cos(t);
    if (std::abs(x - lp) < 1e-4) continue;  // fill region, checked elsewhere
    const double f = x + 0.25 * x * x;
    CHECK(std::abs((x - lp) * h.samples[static_cast<std::size_t>(m)] - (f - lam)) < 1e-10);
  }
}

TEST_CASE("h_factor rejects lambda' outside (0,2)") {
  PhaseEngine eng(tridiag_view(), 8);
  CHECK_THROWS_AS(eng.h_factor(0.0), std::domain_error);
  CHECK_THROWS_AS(eng.h_factor(2.0), std::domain_error);
}

TEST_CASE("tau: constant factor gives tau == 1") {
  PhaseEngine eng(tridiag_view(), 16);
  auto p = eng.eval(0.7);
  CHECK(std::abs(p.tau - std::complex<double>(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(p.rho_raw) < 1e-12);
}

TEST_CASE("tau: AR(1) factor closed form at lambda' = 1") {
  PhaseEngine eng(ar1_factor_view(), 24);
  auto p = eng.eval(1.0);
  const std::complex<double> z(1.0, -0.5);  // P(chi0) = 1 - 0.5 i at chi0 = i
  std::complex<double> want = (z * z) / (std::conj(z) * std::conj(z));
  CHECK(std::abs(p.tau - want) < 1e-10);
  CHECK(std::abs(p.rho_raw - (-2.0 * std::atan(0.5))) < 1e-10);
  // rho convention invariant: exp(2 i rho) = tau
  CHECK(std::abs(std::exp(std::complex<double>(0.0, 2.0 * p.rho_raw)) - p.tau) < 1e-10);
}

TEST_CASE("tau has unit modulus") {
  PhaseEngine eng(loop1_view(), 48);
  for (double lp : {0.1, 0.9, 1.8}) {
    auto p = eng.eval(lp);
    CHECK(std::abs(std::abs(p.tau) - 1.0) < 1e-10);
    CHECK(std::abs(p.chi) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("unwrap_phases: continuous ramp recovered, coarse jump rejected") {
  std::vector<double> raw;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double cont = 0.07 * i;  // winds past pi several times
    raw.push_back(std::remainder(cont, 2.0 * kPi));
  }
  auto cont = unwrap_phases(raw);
  for (int i = 0; i < n; ++i) CHECK(cont[static_cast<std::size_t>(i)] == doctest::Approx(0.07 * i).epsilon(1e-12));

  std::vector<double> jumpy{0.0, 2.0};  // 2.0 > pi/2
  CHECK_THROWS_AS(unwrap_phases(jumpy), std::runtime_error);
}

TEST_CASE("rho sweep: tridiagonal symbol is identically zero") {
  PhaseEngine eng(tridiag_view(), 32);
  PhaseSweep sweep(eng, 1e-6, 2.0 - 1e-6, 64);
  CHECK(sweep.max_abs_rho() < 1e-10);
  CHECK(sweep.unwrap_jumps() == 0);
}

TEST_CASE("rho sweep: loop1 bounded uniformly in N and anchored at zero") {
  double prev_max = -1.0;
  for (int n : {32, 64, 128}) {
    PhaseEngine eng(loop1_view(), n);
    PhaseSweep sweep(eng, 1e-9, 2.0 - 1e-9, 256);
    const double m = sweep.max_abs_rho();
    CHECK(m < kPi);  // the uniform bound exists and is small
    if (prev_max > 0.0) {
      CHECK(m < 2.0 * prev_max);
      CHECK(prev_max < 2.0 * m);
    }
    prev_max = m;
    // rho -> 0 as lambda' -> 0+ (rho scales like theta0 = acos(1 - lambda'))
    CHECK(std::abs(sweep.rho_at(eng, 1e-8)) < 1e-3);
    CHECK(std::abs(sweep.samples().front().rho) <
          std::acos(1.0 - sweep.samples().front().lambda_prime));
    // branch consistency at every sample
    for (const auto& s : sweep.samples())
      CHECK(std::abs(std::exp(std::complex<double>(0.0, 2.0 * s.rho)) - s.tau) < 1e-8);
  }
}

TEST_CASE("rho_at locks the branch between sweep nodes") {
  PhaseEngine eng(loop1_view(), 64);
  PhaseSweep sweep(eng, 1e-6, 2.0 - 1e-6, 128);
  for (double lp : {0.31, 0.997, 1.73}) {
    const double r = sweep.rho_at(eng, lp);
    CHECK(std::abs(std::exp(std::complex<double>(0.0, 2.0 * r)) - eng.eval(lp).tau) < 1e-8);
  }
}

TEST_CASE("rho_limit: constant factor gives zero") {
  auto r = rho_limit(tridiag_view(), 0.8, 128);
  CHECK(std::abs(r.rho) < 1e-12);
}

TEST_CASE("rho_limit: |1-0.5chi|^2 factor at theta0 = pi/2") {
  // f1(x) = (x-1)(x+0.25) + 2 makes H_{lambda'} = x + lambda' - 0.75, which at
  // lambda' = 1 equals |1 - 0.5 chi|^2 = 1.25 - cos theta
  LoopView v;
  v.f1 = [](double x) { return (x - 1.0) * (x + 0.25) + 2.0; };
  v.f1_prime = [](double x) { return 2.0 * x - 0.75; };
  v.eval_theta = [v2 = v.f1](double t) { return v2(1.0 - std::cos(t)); };
  v.name = "ma1-factor";
  auto r = rho_limit(v, 1.0, 512);
  const double want = 2.0 * std::atan(0.5);  // rho = rho_tilde / 2
  CHECK(r.rho == doctest::Approx(want).epsilon(1e-9));
  // cross-check against the analytic logarithm: rho_tilde = Im psi(conj chi0) - Im psi(chi0)
  const std::complex<double> chi0(0.0, 1.0);
  const double direct =
      2.0 * (std::log(1.0 - 0.5 * std::conj(chi0)) - std::log(1.0 - 0.5 * chi0)).imag();
  CHECK(2.0 * r.rho == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("rho_N converges to rho_limit") {
  auto lim = [&](double lp) { return rho_limit(loop1_view(), lp, 512).rho; };
  for (double lp : {0.5, 1.0, 1.5}) {
    const double r = lim(lp);
    double err64 = 0.0, err256 = 0.0;
    {
      PhaseEngine eng(loop1_view(), 64);
      PhaseSweep sweep(eng, 1e-6, 2.0 - 1e-6, 64);
      err64 = std::abs(sweep.rho_at(eng, lp) - r);
    }
    {
      PhaseEngine eng(loop1_view(), 256);
      PhaseSweep sweep(eng, 1e-6, 2.0 - 1e-6, 64);
      err256 = std::abs(sweep.rho_at(eng, lp) - r);
    }
    // loop1's factor is a degree-1 trig polynomial, so both errors sit at the
    // floating floor; allow the floor in the comparison
    CHECK(err256 <= err64 + 1e-12);
    CHECK(err256 < 1e-10);
  }
}
