#include "toepspec/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toepspec/quadrature.hpp"

namespace toepspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

FracConstants frac_constants(double alpha, std::optional<int> finite_n) {
  if (!(alpha > 0.0 && alpha < 1.0) || alpha == 0.5)
    throw std::invalid_argument("frac_constants: alpha must lie in (0,1) \\ {1/2}");
  FracConstants fc;
  fc.alpha = alpha;
  fc.C_alpha = frac_laplacian_constant(alpha);
  fc.C0 = std::pow(1.5, 3.0 + 2.0 * alpha) + std::pow(0.75, 3.0 + 2.0 * alpha);
  fc.C1 = std::pow(4.0 / kPi, -2.0 * alpha) * fc.C0 *
          (5.0 / 3.0 + std::pow(2.0, 1.0 - 2.0 * alpha) + (1.0 - alpha) / alpha);
  double terms = alpha + (2.0 * std::sqrt(alpha) / kPi) * fc.C0 +
                 alpha * (kPi / 16.0) * std::pow(3.0, alpha + 2.0) + alpha;
  if (finite_n)
    terms += fc.C1 * 2.0 * alpha * std::tgamma(2.0 * alpha) / kPi /
             std::pow(static_cast<double>(*finite_n), alpha);
  fc.C_of_alpha = 4.0 / kPi * terms;

  // the printed threshold is ambiguous; keep the larger reading, report both
  const double read_a =
      std::pow(fc.C_of_alpha * std::pow(2.0 * alpha, -1.5), 1.0 / (2.0 * alpha));
  const double read_b = std::pow(fc.C_of_alpha * 2.0 * alpha, -1.5 / (2.0 * alpha));
  fc.L_alpha = std::max(read_a, read_b);
  fc.L_alpha_alt = std::min(read_a, read_b);

  const double K = 0.625 * std::pow(kPi, 2.0 * alpha - 1.0);
  fc.L_prime_alpha = std::max(
      fc.L_alpha, std::pow(fc.C_of_alpha * std::pow(2.0, 2.0 * alpha + 2.0) *
                               std::pow(alpha, -1.5) / (K * kPi),
                           1.0 / (2.0 * alpha)));
  return fc;
}

double mu_k(double alpha, int k) { return k * kPi / 2.0 - (1.0 - alpha) * kPi / 4.0; }

double mu_tilde_k(double alpha, int k) {
  return std::pow(2.0, 2.0 * alpha) * std::pow(mu_k(alpha, k), 2.0 * alpha);
}

EigApprox eig_approx(double alpha, double c0, int n, int k) {
  if (k < 1 || n < 2) throw std::invalid_argument("eig_approx: need k >= 1, N >= 2");
  if (!(k * kPi / n < kPi)) throw std::invalid_argument("eig_approx: k pi / N must stay below pi");
  const FracConstants fc = frac_constants(alpha);
  EigApprox out;
  out.approx = std::pow(k * kPi / n - (1.0 - alpha) * kPi / (2.0 * n), 2.0 * alpha) * c0;
  out.bound = std::pow(2.0, 2.0 * alpha + 1.0) * fc.C_of_alpha * (1.0 - alpha) /
              (std::sqrt(alpha) * k) * std::pow(static_cast<double>(n), -2.0 * alpha);
  out.below_threshold = k < static_cast<int>(std::ceil(fc.L_alpha));
  return out;
}

double phi_star(double alpha, int k, double x) {
  const double arg = mu_k(alpha, k) * (1.0 - 2.0 * x);
  switch (((k % 4) + 4) % 4) {
    case 0: return -std::sin(arg);
    case 1: return -std::cos(arg);
    case 2: return std::sin(arg);
    default: return std::cos(arg);
  }
}

std::vector<double> mode_vector(double alpha, double c0, int n, int k) {
  if (k < 1 || n < 2) throw std::invalid_argument("mode_vector: need k >= 1, N >= 2");
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m <= n; ++m)
    z[static_cast<std::size_t>(m)] = s * phi_star(alpha, k, static_cast<double>(m) / n) * c0;
  return z;
}

std::vector<FracMode> match_modes(double alpha, const FourierSymbol& c, int n, int k_min,
                                  int k_max, const DenseSpectrum& dense) {
  if (dense.eigenvectors.empty())
    throw std::invalid_argument("match_modes: dense spectrum lacks eigenvectors");
  if (dense.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("match_modes: dense spectrum size != N+1");
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("match_modes: bad k range");
  const double c0 = c(0.0);
  const FracConstants fc = frac_constants(alpha);

  std::vector<FracMode> out;
  std::vector<int> used;
  for (int k = k_min; k <= k_max; ++k) {
    FracMode fm;
    fm.k = k;
    fm.mu = mu_k(alpha, k);
    fm.mu_tilde = mu_tilde_k(alpha, k);
    const EigApprox ea = eig_approx(alpha, c0, n, k);
    fm.approx_eig = ea.approx;
    fm.bound = ea.bound;
    fm.below_threshold = k < static_cast<int>(std::ceil(fc.L_prime_alpha));

    std::size_t best = 0;
    double bestd = std::abs(dense.eigenvalues[0] - ea.approx);
    for (std::size_t i = 1; i < dense.size(); ++i) {
      const double d = std::abs(dense.eigenvalues[i] - ea.approx);
      if (d < bestd) {
        bestd = d;
        best = i;
      }
    }
    fm.matched_index = static_cast<int>(best);
    fm.matched_lambda = dense.eigenvalues[best];
    fm.eig_gap = bestd;
    fm.collision = std::find(used.begin(), used.end(), fm.matched_index) != used.end();
    used.push_back(fm.matched_index);

    const auto z = mode_vector(alpha, c0, n, k);
    double nz = 0.0;
    for (double v : z) nz += v * v;
    nz = std::sqrt(nz);
    const auto y = dense.eigenvector(best);
    double dot = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) dot += z[i] * y[i];
    fm.overlap = std::abs(dot) / nz;
    out.push_back(fm);
  }
  return out;
}

std::vector<FraclapApplySample> discrete_fraclap_apply(double alpha, const FourierSymbol& c,
                                                       int n,
                                                       const std::function<double(double)>& f) {
  if (n < 8) throw std::invalid_argument("discrete_fraclap_apply: N too small");
  // support check on a fine grid outside [0.1, 0.9]
  for (int i = 0; i <= 1000; ++i) {
    const double x = static_cast<double>(i) / 1000.0;
    if ((x < 0.1 || x > 0.9) && std::abs(f(x)) > 1e-14)
      throw std::domain_error("discrete_fraclap_apply: f must vanish outside [0.1, 0.9]");
  }
  const SingularSymbol h(alpha, c, n);
  const ToeplitzMatrix t = ToeplitzMatrix::build(h, n);
  CirculantMatvec mv(t);
  std::vector<double> fx(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) fx[static_cast<std::size_t>(m)] = f(static_cast<double>(m) / n);
  const auto y = mv.apply(fx);
  const double scale = std::pow(static_cast<double>(n), 2.0 * alpha);
  std::vector<FraclapApplySample> out;
  for (int m = 0; m <= n; ++m) {
    const double x = static_cast<double>(m) / n;
    if (x >= 0.2 && x <= 0.8)
      out.push_back({m, x, scale * y[static_cast<std::size_t>(m)]});
  }
  return out;
}

PvResult fraclap_pv_oracle(double alpha, const std::function<double(double)>& f, double x,
                           double eps) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("fraclap_pv_oracle: x outside (0,1)");
  const double h = 1e-4;
  const double fx = f(x);
  const double f2 = (f(x + h) - 2.0 * fx + f(x - h)) / (h * h);
  if (!std::isfinite(f2) || std::abs(f2) > 1e10)
    throw std::domain_error("fraclap_pv_oracle: f looks discontinuous near x");

  // core |t| < eps: (2 f(x) - f(x+t) - f(x-t)) / t^{1+2a} ~ -f'' t^{1-2a}
  const double core = -f2 * std::pow(eps, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);

  // outer: t in [eps, R], substitution t = u^2 flattens the eps endpoint.
  // Near t = eps the paired difference cancels to ~eps_mach * |f| and the
  // kernel blows it up, so the reachable tolerance is ~1e-9, not eps_mach.
  const double R = 1.5;
  auto integrand = [&](double u) {
    const double t = u * u;
    return 2.0 * u * (2.0 * fx - f(x + t) - f(x - t)) * std::pow(t, -1.0 - 2.0 * alpha);
  };
  const QuadResult q = integrate(integrand, std::sqrt(eps), std::sqrt(R), 1e-9, 24, 300000);

  // beyond R the zero extension contributes f(x) * R^{-2a} / alpha (both sides)
  const double tail = fx * std::pow(R, -2.0 * alpha) / alpha;

  PvResult out;
  out.value = frac_laplacian_constant(alpha) * (core + q.value + tail);
  out.error_estimate = frac_laplacian_constant(alpha) *
                       (q.error_estimate + std::abs(f2) * std::pow(eps, 4.0 - 2.0 * alpha));
  return out;
}

double cutoff_q(double t) {
  if (t < -1.0 / 3.0) return 0.0;
  if (t < 0.0) return 4.5 * (t + 1.0 / 3.0) * (t + 1.0 / 3.0);
  if (t < 1.0 / 3.0) return 1.0 - 4.5 * (t - 1.0 / 3.0) * (t - 1.0 / 3.0);
  return 1.0;
}

double bump_profile(double x) {
  const double z = (x - 0.5) / 0.3;
  if (std::abs(z) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - z * z));
}

}  // namespace toepspec
