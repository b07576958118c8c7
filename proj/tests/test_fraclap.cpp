#include <doctest.h>

#include <cmath>
#include <numbers>

#include "toepspec/fraclap.hpp"
#include "toepspec/quadrature.hpp"

using namespace toepspec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("frac_constants: printed arithmetic") {
  auto fc = frac_constants(0.75);
  CHECK(fc.C0 == doctest::Approx(std::pow(1.5, 4.5) + std::pow(0.75, 4.5)).epsilon(1e-14));
  // Laplacian constant agrees with the Gamma-ratio form with |Gamma(-a)|
  for (double a : {0.25, 0.4, 0.75}) {
    const double via_neg = std::pow(2.0, 2.0 * a) * std::tgamma(a + 0.5) /
                           (std::sqrt(kPi) * std::abs(std::tgamma(-a)));
    CHECK(frac_laplacian_constant(a) == doctest::Approx(via_neg).epsilon(1e-12));
  }
  CHECK(fc.L_alpha > 0.0);
  CHECK(std::isfinite(fc.L_alpha));
  CHECK(fc.L_alpha >= fc.L_alpha_alt);
  CHECK(fc.L_prime_alpha >= fc.L_alpha);
  // the finite-N variant keeps the 1/N^alpha term, so it is larger
  auto fcn = frac_constants(0.75, 64);
  CHECK(fcn.C_of_alpha > fc.C_of_alpha);
  CHECK_THROWS_AS(frac_constants(0.5), std::invalid_argument);
  CHECK_THROWS_AS(frac_constants(1.2), std::invalid_argument);
}

TEST_CASE("eig_approx: direct arithmetic and the mu-tilde identity") {
  auto ea = eig_approx(0.75, 1.0, 100, 2);
  CHECK(ea.approx ==
        doctest::Approx(std::pow(2.0 * kPi / 100.0 - kPi / 800.0, 1.5)).epsilon(1e-14));
  CHECK(mu_k(0.75, 2) == doctest::Approx(15.0 * kPi / 16.0).epsilon(1e-14));
  // approx * N^{2a} == mu_tilde_k
  for (int k : {2, 5, 10})
    for (int n : {64, 512}) {
      auto e = eig_approx(0.75, 1.0, n, k);
      CHECK(std::abs(e.approx * std::pow(n, 1.5) - mu_tilde_k(0.75, k)) <
            1e-14 * mu_tilde_k(0.75, k) * 10);
    }
  CHECK(ea.below_threshold);  // k=2 sits below L_alpha for alpha=3/4
  CHECK(eig_approx(0.75, 1.0, 100, 10).below_threshold == false);
  // bound positive, decaying in k and N
  CHECK(eig_approx(0.75, 1.0, 100, 4).bound > eig_approx(0.75, 1.0, 100, 8).bound);
  CHECK(eig_approx(0.75, 1.0, 100, 4).bound > eig_approx(0.75, 1.0, 200, 4).bound);
}

TEST_CASE("phi_star branch table") {
  CHECK(phi_star(0.75, 1, 0.5) == doctest::Approx(-1.0));                  // -cos(0)
  CHECK(phi_star(0.75, 2, 0.5) == doctest::Approx(0.0).epsilon(1e-14));    // sin(0)
  CHECK(phi_star(0.75, 4, 0.0) == doctest::Approx(-std::sin(mu_k(0.75, 4))));
  CHECK(phi_star(0.3, 3, 0.2) == doctest::Approx(std::cos(mu_k(0.3, 3) * 0.6)));
}

TEST_CASE("mode_vector: explicit entries, Riemann norm, c0 scaling") {
  const double a = 0.75;
  auto z = mode_vector(a, 1.0, 4, 1);
  REQUIRE(z.size() == 5);
  for (int m = 0; m <= 4; ++m)
    CHECK(z[static_cast<std::size_t>(m)] ==
          doctest::Approx(0.5 * -std::cos(mu_k(a, 1) * (1.0 - 2.0 * m / 4.0))).epsilon(1e-14));

  auto z512 = mode_vector(a, 1.0, 512, 3);
  double nrm2 = 0.0;
  for (double v : z512) nrm2 += v * v;
  const double l2 = integrate([a](double x) {
                      const double v = phi_star(a, 3, x);
                      return v * v;
                    }, 0.0, 1.0, 1e-12).value;
  CHECK(std::abs(nrm2 - l2) < 0.02);

  auto z1 = mode_vector(a, 1.0, 16, 2);
  auto z2 = mode_vector(a, 2.0, 16, 2);
  for (std::size_t i = 0; i < z1.size(); ++i) CHECK(z2[i] == doctest::Approx(2.0 * z1[i]));
}

TEST_CASE("match_modes: overlaps and rate at alpha = 0.75") {
  FourierSymbol one({1.0});
  const int n = 256;
  SingularSymbol h(0.75, one, n);
  auto dense = dense_eigh(ToeplitzMatrix::build(h, n), true);
  auto modes = match_modes(0.75, one, n, 8, 12, dense);
  REQUIRE(modes.size() == 5);
  for (const auto& m : modes) {
    CHECK(m.overlap >= 0.95);
    CHECK_FALSE(m.collision);
    CHECK(m.matched_index == m.k - 1);  // k-th smallest eigenvalue
    CHECK(m.eig_gap < m.bound * 4.0);   // bound is asymptotic; stay in its ballpark
  }
}

TEST_CASE("match_modes input validation") {
  FourierSymbol one({1.0});
  SingularSymbol h(0.75, one, 32);
  auto dense = dense_eigh(ToeplitzMatrix::build(h, 32), false);  // no vectors
  CHECK_THROWS_AS(match_modes(0.75, one, 32, 1, 2, dense), std::invalid_argument);
}

TEST_CASE("pv oracle: zero function, linearity, scaling") {
  auto zero = [](double) { return 0.0; };
  CHECK(fraclap_pv_oracle(0.75, zero, 0.5).value == doctest::Approx(0.0));

  auto f = [](double x) { return bump_profile(x); };
  auto f2 = [](double x) { return 2.0 * bump_profile(x); };
  const double a = fraclap_pv_oracle(0.75, f, 0.45).value;
  const double b = fraclap_pv_oracle(0.75, f2, 0.45).value;
  CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-10));
  CHECK_THROWS_AS(fraclap_pv_oracle(0.75, f, -0.2), std::domain_error);
}

TEST_CASE("pv oracle: two independent schemes agree at the symmetric point") {
  // alternative scheme: plain t-integration, different eps, fourth-order core
  const double alpha = 0.75;
  auto f = [](double x) { return bump_profile(x); };
  const double x = 0.5;
  const double eps = 5e-4;
  const double h = 1e-3;
  const double fx = f(x);
  const double fpp = (f(x + h) - 2.0 * fx + f(x - h)) / (h * h);
  const double f4 =
      (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * fx - 4.0 * f(x - h) + f(x - 2 * h)) /
      (h * h * h * h);
  const double core = -fpp * std::pow(eps, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha) -
                      f4 * std::pow(eps, 4.0 - 2.0 * alpha) / (12.0 * (4.0 - 2.0 * alpha));
  auto paired = [&](double t) {
    return (2.0 * fx - f(x + t) - f(x - t)) * std::pow(t, -1.0 - 2.0 * alpha);
  };
  const double outer = integrate(paired, eps, 1.5, 1e-9, 24, 300000).value;
  const double tail = fx * std::pow(1.5, -2.0 * alpha) / alpha;
  const double alt = frac_laplacian_constant(alpha) * (core + outer + tail);

  const double main = fraclap_pv_oracle(alpha, f, x).value;
  CHECK(std::abs(main - alt) < 1e-6);
}

TEST_CASE("discrete_fraclap_apply: zeros, linearity, support guard") {
  FourierSymbol one({1.0});
  auto zero = [](double) { return 0.0; };
  auto out = discrete_fraclap_apply(0.75, one, 64, zero);
  for (const auto& s : out) CHECK(s.value == doctest::Approx(0.0));

  auto f = [](double x) { return bump_profile(x); };
  auto g = [](double x) { return 2.0 * bump_profile(x); };
  auto a = discrete_fraclap_apply(0.75, one, 64, f);
  auto b = discrete_fraclap_apply(0.75, one, 64, g);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(b[i].value == doctest::Approx(2.0 * a[i].value).epsilon(1e-12));

  auto shifted = [](double x) { return bump_profile(x - 0.4); };  // support hits x < 0.1
  CHECK_THROWS_AS(discrete_fraclap_apply(0.75, one, 64, shifted), std::domain_error);
}

TEST_CASE("discrete operator converges to the PV oracle on the bump") {
  FourierSymbol one({1.0});
  auto f = [](double x) { return bump_profile(x); };
  double prev = -1.0;
  for (int n : {128, 256, 512}) {
    auto got = discrete_fraclap_apply(0.75, one, n, f);
    double sup = 0.0;
    for (std::size_t i = 0; i < got.size(); i += 4) {
      const double want = fraclap_pv_oracle(0.75, f, got[i].x).value;
      sup = std::max(sup, std::abs(got[i].value - want));
    }
    if (prev > 0.0) CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("cutoff_q: knots, value and slope continuity, monotonicity") {
  CHECK(cutoff_q(-1.0) == 0.0);
  CHECK(cutoff_q(-1.0 / 3.0) == doctest::Approx(0.0));
  CHECK(cutoff_q(0.0) == doctest::Approx(0.5));
  CHECK(cutoff_q(1.0 / 3.0) == doctest::Approx(1.0));
  CHECK(cutoff_q(2.0) == 1.0);
  // both middle branches give 1/2 and slope 3 at t = 0
  CHECK(4.5 * (0.0 + 1.0 / 3.0) * (0.0 + 1.0 / 3.0) == doctest::Approx(0.5));
  CHECK(1.0 - 4.5 * (0.0 - 1.0 / 3.0) * (0.0 - 1.0 / 3.0) == doctest::Approx(0.5));
  const double h = 1e-7;
  CHECK((cutoff_q(h) - cutoff_q(-h)) / (2.0 * h) == doctest::Approx(3.0).epsilon(1e-5));
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 / 3.0 + (2.0 / 3.0) * i / 200.0;
    const double v = cutoff_q(t);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}
