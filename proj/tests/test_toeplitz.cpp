#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "toepspec/toeplitz.hpp"

using namespace toepspec;

namespace {
constexpr double kPi = std::numbers::pi;

ToeplitzMatrix tridiag(int n) {
  std::vector<double> col(static_cast<std::size_t>(n) + 1, 0.0);
  col[0] = 2.0;
  col[1] = -1.0;
  return ToeplitzMatrix(col, "tridiag");
}
}  // namespace

TEST_CASE("build from symbols") {
  FourierSymbol f({2.0, -1.0, 0.0, 0.0});
  auto t = ToeplitzMatrix::build(f, 2);
  CHECK(t.entry(0, 0) == 2.0);
  CHECK(t.entry(0, 1) == -1.0);
  CHECK(t.entry(0, 2) == 0.0);
  CHECK(t.entry(2, 1) == -1.0);

  FourierSymbol one({1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  auto id = ToeplitzMatrix::build(one, 5);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(id.entry(i, j) == (i == j ? 1.0 : 0.0));

  CHECK_THROWS_AS(ToeplitzMatrix::build(f, 8), std::invalid_argument);

  FourierSymbol c({1.0});
  SingularSymbol h(0.25, c, 64);
  auto th = ToeplitzMatrix::build(h, 64);
  auto d = pure_singular_coeffs(0.25, 64);
  for (int j = 0; j <= 64; ++j)
    CHECK(th.first_column()[static_cast<std::size_t>(j)] ==
          doctest::Approx(d[static_cast<std::size_t>(j)]).epsilon(1e-14));
}

TEST_CASE("matvec: trivial cases") {
  auto t = tridiag(2);
  std::vector<double> e1{1.0, 0.0, 0.0};
  auto y = matvec(t, e1, MatvecMode::naive);
  CHECK(y[0] == 2.0);
  CHECK(y[1] == -1.0);
  CHECK(y[2] == 0.0);

  std::vector<double> idcol{1.0, 0.0, 0.0, 0.0};
  ToeplitzMatrix id(idcol, "identity");
  std::vector<double> x{0.3, -0.7, 0.1, 2.0};
  auto z = matvec(id, x, MatvecMode::fft);
  for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == doctest::Approx(x[i]).epsilon(1e-13));

  CHECK_THROWS_AS(matvec(t, x, MatvecMode::naive), std::invalid_argument);
}

TEST_CASE("matvec: naive and fft agree on random vectors") {
  FourierSymbol c({1.0});
  SingularSymbol h(0.75, c, 512);
  auto t = ToeplitzMatrix::build(h, 512);
  CirculantMatvec plan(t);
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(513);
    for (auto& v : x) v = u(rng);
    auto a = matvec(t, x, MatvecMode::naive);
    auto b = plan.apply(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      num = std::max(num, std::abs(a[i] - b[i]));
      den = std::max(den, std::abs(a[i]));
    }
    CHECK(num / std::max(den, 1e-300) < 1e-10);
  }
}

TEST_CASE("dense_eigh: tridiagonal closed form at N=62") {
  auto t = tridiag(62);
  auto s = dense_eigh(t, true);
  REQUIRE(s.size() == 63);
  for (int k = 1; k <= 63; ++k)
    CHECK(std::abs(s.eigenvalues[static_cast<std::size_t>(k) - 1] -
                   (2.0 - 2.0 * std::cos(k * kPi / 64.0))) < 1e-10);
  CHECK(s.residual_norm < 1e-8 * t.inf_norm());
  CHECK(s.max_offdiag_dot < 1e-10);
  // simple-loop symbols have strictly separated eigenvalues
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    CHECK(s.eigenvalues[i] < s.eigenvalues[i + 1]);
}

TEST_CASE("dense_eigh: identity and 2x2") {
  std::vector<double> idcol{1.0, 0.0, 0.0, 0.0};
  auto s = dense_eigh(ToeplitzMatrix(idcol, "id"), false);
  for (double v : s.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

  std::vector<double> ab{3.0, -1.5};
  auto s2 = dense_eigh(ToeplitzMatrix(ab, "2x2"), true);
  CHECK(s2.eigenvalues[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s2.eigenvalues[1] == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("dense_eigh: cap rejection") {
  auto t = tridiag(40);
  CHECK_THROWS_AS(dense_eigh(t, false, 16), std::invalid_argument);
}

TEST_CASE("dense spectrum lies strictly inside (min f, max f); trace identity") {
  FourierSymbol f({11.0 / 8.0, -0.75, 1.0 / 16.0});  // loop1, range (0, 3)
  std::vector<double> col(65, 0.0);
  col[0] = f.coeff(0);
  col[1] = f.coeff(1);
  col[2] = f.coeff(2);
  ToeplitzMatrix t(col, "loop1");
  auto s = dense_eigh(t, false);
  double trace = 0.0;
  for (double v : s.eigenvalues) {
    CHECK(v > 0.0);
    CHECK(v < 3.0);
    trace += v;
  }
  CHECK(trace == doctest::Approx(65.0 * col[0]).epsilon(1e-8));
}

TEST_CASE("inverse_entry_dense") {
  // closed form for tridiag(-1, 2, -1): (T^{-1})_{11} = n/(n+1)
  auto t = tridiag(2);
  CHECK(inverse_entry_dense(t, 0, 0) == doctest::Approx(0.75).epsilon(1e-12));

  std::vector<double> idcol{1.0, 0.0, 0.0};
  ToeplitzMatrix id(idcol, "id");
  CHECK(inverse_entry_dense(id, 1, 1) == doctest::Approx(1.0));
  CHECK(inverse_entry_dense(id, 0, 2) == doctest::Approx(0.0));

  // singular matrix rejected: shift the tridiagonal by an eigenvalue
  const double lam = 2.0 - 2.0 * std::cos(kPi / 4.0);
  CHECK_THROWS_AS(inverse_entry_dense(tridiag(2), 0, 0, lam), std::domain_error);
}
