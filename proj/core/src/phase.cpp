#include "toepspec/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "toepspec/fft.hpp"

namespace toepspec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSingularWindow = 1e-5;  // |x - lambda'| below which H uses f1'
}  // namespace

LoopView LoopView::from(const SimpleLoopSymbol& f) {
  LoopView v;
  v.eval_theta = [f](double t) { return f(t); };
  v.f1 = [f](double x) { return f.f1(x); };
  v.f1_prime = [f](double x) { return f.f1_prime(x); };
  v.name = f.name();
  return v;
}

LoopView LoopView::from(const SingularSymbol& h) {
  const double alpha = h.alpha();
  const FourierSymbol c = h.c();
  LoopView v;
  v.eval_theta = [alpha, c](double t) {
    return std::pow(2.0 - 2.0 * std::cos(t), alpha) * c(t);
  };
  v.f1 = [alpha, c](double x) {
    const double cl = std::clamp(1.0 - x, -1.0, 1.0);
    return std::pow(2.0 * x, alpha) * c(std::acos(cl));
  };
  v.f1_prime = nullptr;  // central difference fallback
  v.column = [alpha, c](int n) {
    const SingularSymbol s(alpha, c, n);
    std::vector<double> col(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = s.coeff(j);
    return col;
  };
  v.name = h.name();
  return v;
}

std::vector<double> LoopView::toeplitz_column(int n) const {
  if (column) return column(n);
  const std::size_t g = next_pow2(std::max<std::size_t>(8 * (static_cast<std::size_t>(n) + 1), 4096));
  std::vector<double> samples(g);
  for (std::size_t m = 0; m < g; ++m)
    samples[m] = eval_theta(2.0 * kPi * static_cast<double>(m) / static_cast<double>(g));
  return fourier_coeffs(samples, n);
}

PhaseEngine::PhaseEngine(LoopView view, int n, int grid) : view_(std::move(view)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("PhaseEngine: N >= 1 required");
  std::size_t g = grid > 0
                      ? next_pow2(static_cast<std::size_t>(grid))
                      : next_pow2(std::max<std::size_t>(16 * (static_cast<std::size_t>(n_) + 2), 4096));
  grid_ = static_cast<int>(g);
  x_.resize(g);
  f_.resize(g);
  for (std::size_t m = 0; m < g; ++m) {
    const double t = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(g);
    x_[m] = 1.0 - std::cos(t);
    f_[m] = view_.eval_theta(t);
  }
}

HFactor PhaseEngine::h_factor(double lambda_prime) const {
  if (!(lambda_prime > 0.0 && lambda_prime < 2.0))
    throw std::domain_error("h_factor: lambda' must lie in (0, 2)");
  const double lam = view_.f1(lambda_prime);
  const std::size_t g = x_.size();
  HFactor h;
  h.lambda_prime = lambda_prime;
  h.grid = grid_;
  h.samples.resize(g);
  auto slope_near = [&](double x) {
    if (view_.f1_prime) return view_.f1_prime(0.5 * (x + lambda_prime));
    const double m = 0.5 * (x + lambda_prime), d = kSingularWindow;
    const double lo = std::max(0.0, m - d), hi = std::min(2.0, m + d);
    return (view_.f1(hi) - view_.f1(lo)) / (hi - lo);
  };
  for (std::size_t m = 0; m < g; ++m) {
    const double dx = x_[m] - lambda_prime;
    h.samples[m] = std::abs(dx) < kSingularWindow ? slope_near(x_[m])
                                                  : (f_[m] - lam) / dx;
  }
  h.autocov = fourier_coeffs(h.samples, n_ + 1);
  if (!(h.autocov[0] > 0.0))
    throw std::domain_error("h_factor: H not positive (symbol violates loop hypotheses)");
  return h;
}

PhasePoint PhaseEngine::eval(double lambda_prime) const {
  const HFactor h = h_factor(lambda_prime);
  const PredictorPolynomial p = levinson(h.autocov);
  PhasePoint out;
  out.lambda_prime = lambda_prime;
  out.theta0 = std::acos(std::clamp(1.0 - lambda_prime, -1.0, 1.0));
  out.chi = {1.0 - lambda_prime, std::sqrt(std::max(0.0, 1.0 - (lambda_prime - 1.0) * (lambda_prime - 1.0)))};
  const std::complex<double> pv = p.eval(out.chi);
  if (std::abs(pv) == 0.0)
    throw std::runtime_error("tau: predictor polynomial vanished on the unit circle");
  std::complex<double> tau = (pv / std::conj(pv));
  tau *= tau;
  tau /= std::abs(tau);  // renormalize the unit modulus
  out.tau = tau;
  out.rho_raw = std::arg(tau) / 2.0;
  out.predictor_at_zero = p.coeff(0);
  return out;
}

std::vector<double> unwrap_phases(const std::vector<double>& raw, double max_jump) {
  std::vector<double> out(raw.size());
  if (raw.empty()) return out;
  out[0] = raw[0];
  for (std::size_t i = 1; i < raw.size(); ++i) {
    double d = raw[i] - raw[i - 1];
    d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
    if (std::abs(d) >= max_jump)
      throw std::runtime_error(
          "phase unwrap: neighbouring samples jump by >= pi/2; refine the lambda' grid");
    out[i] = out[i - 1] + d;
  }
  return out;
}

PhaseSweep::PhaseSweep(const PhaseEngine& engine, std::vector<double> lambda_grid) {
  if (lambda_grid.size() < 2) throw std::invalid_argument("PhaseSweep: need >= 2 points");
  if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end()))
    throw std::invalid_argument("PhaseSweep: lambda' grid must be sorted");
  samples_.reserve(lambda_grid.size());
  std::vector<double> raw(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const PhasePoint p = engine.eval(lambda_grid[i]);
    PhaseSample s;
    s.lambda_prime = p.lambda_prime;
    s.theta0 = p.theta0;
    s.chi = p.chi;
    s.tau = p.tau;
    s.rho_raw = p.rho_raw;
    samples_.push_back(s);
    raw[i] = std::arg(p.tau);  // full tau phase; unwrap then halve
  }
  const auto cont = unwrap_phases(raw);
  // anchor: map the smallest-lambda' sample near zero (rho(0+) = 0)
  const double offset = 2.0 * kPi * std::round(cont[0] / (2.0 * kPi));
  for (std::size_t i = 0; i < cont.size(); ++i) {
    samples_[i].rho = (cont[i] - offset) / 2.0;
    if (i > 0 && std::round((raw[i] - raw[i - 1]) / (2.0 * kPi)) != 0.0) ++jumps_;
  }
}

PhaseSweep::PhaseSweep(const PhaseEngine& engine, double lo, double hi, int points)
    : PhaseSweep(engine, [&] {
        if (points < 2) throw std::invalid_argument("PhaseSweep: need >= 2 points");
        std::vector<double> g(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i)
          g[static_cast<std::size_t>(i)] =
              lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        return g;
      }()) {}

double PhaseSweep::max_abs_rho() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, std::abs(s.rho));
  return m;
}

double PhaseSweep::rho_at(const PhaseEngine& engine, double lambda_prime) const {
  return rho_at(engine.eval(lambda_prime));
}

double PhaseSweep::rho_at(const PhasePoint& p) const {
  // nearest sweep sample by lambda'
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), p.lambda_prime,
                                   [](const PhaseSample& s, double v) { return s.lambda_prime < v; });
  const PhaseSample* near = nullptr;
  if (it == samples_.begin()) near = &*it;
  else if (it == samples_.end()) near = &samples_.back();
  else near = (std::abs(it->lambda_prime - p.lambda_prime) <
               std::abs(std::prev(it)->lambda_prime - p.lambda_prime))
                  ? &*it
                  : &*std::prev(it);
  const double raw_full = std::arg(p.tau);
  const double target = 2.0 * near->rho;
  return (raw_full + 2.0 * kPi * std::round((target - raw_full) / (2.0 * kPi))) / 2.0;
}

RhoLimitResult rho_limit(const LoopView& view, double lambda_prime, int order, double tol) {
  if (!(lambda_prime > 0.0 && lambda_prime < 2.0))
    throw std::domain_error("rho_limit: lambda' must lie in (0, 2)");
  const double lam = view.f1(lambda_prime);
  auto H = [&](double t) {
    const double x = 1.0 - std::cos(t);
    const double dx = x - lambda_prime;
    if (std::abs(dx) < kSingularWindow) {
      if (view.f1_prime) return view.f1_prime(0.5 * (x + lambda_prime));
      const double m = 0.5 * (x + lambda_prime), d = kSingularWindow;
      const double lo = std::max(0.0, m - d), hi = std::min(2.0, m + d);
      return (view.f1(hi) - view.f1(lo)) / (hi - lo);
    }
    return (view.eval_theta(t) - lam) / dx;
  };
  const SzegoFactor fac = szego_factorize(H, order);
  const double theta0 = std::acos(std::clamp(1.0 - lambda_prime, -1.0, 1.0));
  double rho_tilde = 0.0;
  for (int k = 1; k <= order; ++k)
    rho_tilde += fac.log_coeffs[static_cast<std::size_t>(k)] * std::sin(k * theta0);
  rho_tilde *= -4.0;

  // tail proxy: the last-octave sum of |L(k)| bounds the remainder for any
  // decay faster than 1/k^2
  double octave = 0.0;
  for (int k = std::max(1, order / 2); k <= order; ++k)
    octave += std::abs(fac.log_coeffs[static_cast<std::size_t>(k)]);
  RhoLimitResult r;
  r.tail_bound = 4.0 * octave;
  r.terms = order;
  if (r.tail_bound > tol)
    throw std::runtime_error("rho_limit: series tail above tolerance; raise the order");
  r.rho = rho_tilde / 2.0;
  return r;
}

}  // namespace toepspec
