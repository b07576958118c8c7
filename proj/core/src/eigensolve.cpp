#include "toepspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace toepspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1e-12;  // lambda' clip away from {0, 2}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TOEPLITZ_SPECTRA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

}  // namespace

SpectrumSolver::SpectrumSolver(LoopView view, int n, SolveOptions opts)
    : view_(std::move(view)), opts_(opts), engine_(view_, n),
      sweep_(engine_, kEdge, 2.0 - kEdge, std::max(opts.sweep_points, 2)) {
  m_cap_ = 1.25 * sweep_.max_abs_rho() + 0.1;
}

double SpectrumSolver::rho(double lambda_prime) const {
  return sweep_.rho_at(engine_, lambda_prime);
}

double SpectrumSolver::psi(int k, double lambda_prime) const {
  const double r = rho(lambda_prime);
  return 1.0 - std::cos((static_cast<double>(k) * kPi + r) / (engine_.n() + 2)) - lambda_prime;
}

EigenRecord SpectrumSolver::solve_k(int k) const {
  const int n = engine_.n();
  const double lo_ang = std::max(0.0, (k * kPi - m_cap_) / (n + 2));
  const double hi_ang = std::min(kPi, (k * kPi + kPi + m_cap_) / (n + 2));
  const double lo = std::clamp(1.0 - std::cos(lo_ang), kEdge, 2.0 - kEdge);
  const double hi = std::clamp(1.0 - std::cos(hi_ang), kEdge, 2.0 - kEdge);
  return solve_k(k, {lo, hi});
}

EigenRecord SpectrumSolver::solve_k(int k, std::pair<double, double> bracket) const {
  const int n = engine_.n();
  if (k < 1 || k > n + 1) throw std::invalid_argument("solve_k: k outside [1, N+1]");
  const auto [lo, hi] = bracket;
  if (!(lo < hi)) throw std::invalid_argument("solve_k: empty bracket");

  const int scan = std::max(opts_.sign_scan_points, 2);
  std::vector<double> xs(static_cast<std::size_t>(scan) + 1), ps(static_cast<std::size_t>(scan) + 1);
  for (int i = 0; i <= scan; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / scan;
    ps[static_cast<std::size_t>(i)] = psi(k, xs[static_cast<std::size_t>(i)]);
  }

  std::vector<EigenRecord> roots;
  for (int i = 0; i < scan; ++i) {
    double a = xs[static_cast<std::size_t>(i)], b = xs[static_cast<std::size_t>(i) + 1];
    double fa = ps[static_cast<std::size_t>(i)], fb = ps[static_cast<std::size_t>(i) + 1];
    if (fa == 0.0) fa = -1e-300;  // treat exact zero as a crossing
    if (!(fa > 0.0) == !(fb > 0.0)) continue;
    int iters = 0;
    while (b - a > opts_.bisect_tol * 0.1 && iters < 80) {
      const double m = 0.5 * (a + b);
      const double fm = psi(k, m);
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
      ++iters;
    }
    EigenRecord r;
    r.k = k;
    r.lambda_prime = 0.5 * (a + b);
    r.gamma = rho(r.lambda_prime);
    r.residual = std::abs(1.0 - std::cos((k * kPi + r.gamma) / (n + 2)) - r.lambda_prime);
    r.lambda = view_.f1(r.lambda_prime);
    r.bracket = bracket;
    r.iterations = iters;
    roots.push_back(r);
  }
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "solve_k: no sign change for k=" << k << " in [" << lo << ", " << hi
        << "]; scan trace:";
    for (int i = 0; i <= scan; i += std::max(1, scan / 8))
      msg << " psi(" << xs[static_cast<std::size_t>(i)] << ")=" << ps[static_cast<std::size_t>(i)];
    throw std::runtime_error(msg.str());
  }
  // several crossings: keep the root with the smallest |gamma|
  return *std::min_element(roots.begin(), roots.end(),
                           [](const EigenRecord& a, const EigenRecord& b) {
                             return std::abs(a.gamma) < std::abs(b.gamma);
                           });
}

SpectrumReport SpectrumSolver::full_spectrum() const {
  const int n = engine_.n();
  SpectrumReport rep;
  rep.n = n;
  rep.records.resize(static_cast<std::size_t>(n) + 1);

  const int nthreads = resolve_threads(opts_.threads);
  std::vector<std::exception_ptr> errors;
  auto work = [&](int from, int to, std::exception_ptr* err) {
    try {
      for (int k = from; k < to; ++k)
        rep.records[static_cast<std::size_t>(k) - 1] = solve_k(k);
    } catch (...) {
      if (err) *err = std::current_exception();
    }
  };
  if (nthreads <= 1 || n < 16) {
    for (int k = 1; k <= n + 1; ++k)
      rep.records[static_cast<std::size_t>(k) - 1] = solve_k(k);
  } else {
    std::vector<std::thread> pool;
    const int total = n + 1;
    const int chunk = (total + nthreads - 1) / nthreads;
    errors.resize(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      const int from = 1 + t * chunk;
      const int to = std::min(n + 2, from + chunk);
      if (from < to) pool.emplace_back(work, from, to, &errors[static_cast<std::size_t>(t)]);
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i + 1 < rep.records.size(); ++i)
    if (!(rep.records[i].lambda < rep.records[i + 1].lambda))
      throw std::runtime_error("full_spectrum: records not strictly increasing");
  for (const auto& r : rep.records)
    rep.max_abs_gamma = std::max(rep.max_abs_gamma, std::abs(r.gamma));

  if (opts_.dense_check) {
    const ToeplitzMatrix t(view_.toeplitz_column(n), view_.name);
    const DenseSpectrum dense = dense_eigh(t, false, opts_.dense_cap);
    double dev = 0.0;
    for (std::size_t i = 0; i < rep.records.size(); ++i)
      dev = std::max(dev, std::abs(rep.records[i].lambda - dense.eigenvalues[i]));
    rep.dense_max_dev = dev;
    rep.dense_eigenvalues = dense.eigenvalues;
  }
  return rep;
}

SpectrumReport SpectrumSolver::local_spectrum(double theta1, double theta2) const {
  const int n = engine_.n();
  if (!(0.0 < theta1 && theta1 < theta2 && theta2 <= kPi))
    throw std::invalid_argument("local_spectrum: need 0 < theta1 < theta2 <= pi");
  const double d1 = 1.0 - std::cos(theta1);
  const double d2 = theta2 == kPi ? 2.0 - kEdge : 1.0 - std::cos(theta2);

  // monotonicity of f on [theta1, theta2]
  {
    const int g = 512;
    double prev = view_.f1(d1);
    for (int i = 1; i <= g; ++i) {
      const double x = d1 + (d2 - d1) * static_cast<double>(i) / g;
      const double v = view_.f1(x);
      if (!(v > prev))
        throw std::invalid_argument("local_spectrum: f not strictly increasing on the interval");
      prev = v;
    }
  }

  auto W = [&](double lp) {
    return (n + 2) * std::acos(std::clamp(1.0 - lp, -1.0, 1.0)) - rho(lp);
  };
  const double wlo = W(d1), whi = W(d2);
  const int klo = static_cast<int>(std::ceil(wlo / kPi + 1e-12));
  const int khi = static_cast<int>(std::floor(whi / kPi - 1e-12));

  SpectrumReport rep;
  rep.n = n;
  if (khi < klo) return rep;  // window narrower than the root spacing
  rep.records.resize(static_cast<std::size_t>(khi - klo) + 1);

  auto bracket_for = [&](int k) {
    const double lo_ang = std::max(0.0, (k * kPi - m_cap_) / (n + 2));
    const double hi_ang = std::min(kPi, (k * kPi + kPi + m_cap_) / (n + 2));
    const double lo = std::max(d1, std::clamp(1.0 - std::cos(lo_ang), kEdge, 2.0 - kEdge));
    const double hi = std::min(d2, std::clamp(1.0 - std::cos(hi_ang), kEdge, 2.0 - kEdge));
    return std::pair<double, double>{lo, hi};
  };
  const int nthreads = resolve_threads(opts_.threads);
  std::vector<std::exception_ptr> errors;
  auto work = [&](int from, int to, std::exception_ptr* err) {
    try {
      for (int k = from; k < to; ++k)
        rep.records[static_cast<std::size_t>(k - klo)] = solve_k(k, bracket_for(k));
    } catch (...) {
      if (err) *err = std::current_exception();
    }
  };
  const int total = khi - klo + 1;
  if (nthreads <= 1 || total < 16) {
    for (int k = klo; k <= khi; ++k)
      rep.records[static_cast<std::size_t>(k - klo)] = solve_k(k, bracket_for(k));
  } else {
    std::vector<std::thread> pool;
    const int chunk = (total + nthreads - 1) / nthreads;
    errors.resize(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      const int from = klo + t * chunk;
      const int to = std::min(khi + 1, from + chunk);
      if (from < to) pool.emplace_back(work, from, to, &errors[static_cast<std::size_t>(t)]);
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (const auto& r : rep.records)
    rep.max_abs_gamma = std::max(rep.max_abs_gamma, std::abs(r.gamma));

  if (opts_.dense_check) {
    const ToeplitzMatrix t(view_.toeplitz_column(n), view_.name);
    const DenseSpectrum dense = dense_eigh(t, false, opts_.dense_cap);
    const double flo = view_.f1(d1), fhi = view_.f1(d2);
    std::vector<double> inside;
    for (double v : dense.eigenvalues)
      if (v > flo && v < fhi) inside.push_back(v);
    rep.dense_eigenvalues = inside;
    if (inside.size() != rep.records.size()) {
      rep.bijection_ok = false;
    } else {
      double dev = 0.0;
      for (std::size_t i = 0; i < inside.size(); ++i)
        dev = std::max(dev, std::abs(inside[i] - rep.records[i].lambda));
      rep.dense_max_dev = dev;
    }
  }
  return rep;
}

double SpectrumSolver::invert_entry_11(double lambda_prime) const {
  const int n = engine_.n();
  const PhasePoint p = engine_.eval(lambda_prime);
  const double r = sweep_.rho_at(p);
  const double lam = view_.f1(lambda_prime);
  // pole guard: distance from (N+2)theta0 - rho to the nearest k pi, mapped
  // to a lambda distance
  const double w = (n + 2) * p.theta0 - r;
  const double d = std::abs(w - kPi * std::round(w / kPi));
  const double sin_t0 = std::sin(p.theta0);
  const double slope = std::abs(view_.f1_prime ? view_.f1_prime(lambda_prime)
                                               : (view_.f1(std::min(2.0, lambda_prime + 1e-6)) -
                                                  view_.f1(std::max(0.0, lambda_prime - 1e-6))) /
                                                     2e-6);
  const double lambda_dist = d / (n + 2) * sin_t0 * std::max(slope, 1e-30);
  if (lambda_dist < 1e-10 * std::max(1.0, std::abs(lam)))
    throw std::domain_error("invert_entry_11: lambda within 1e-10 of an eigenvalue (pole)");

  const double b0 = p.predictor_at_zero;
  return 2.0 * b0 * b0 * std::sin((n + 1) * p.theta0 - r) / std::sin((n + 2) * p.theta0 - r);
}

GammaFromDense gamma_from_dense(const SimpleLoopSymbol& f, int n, const DenseSpectrum& dense) {
  GammaFromDense out;
  out.gamma.reserve(dense.size());
  const double lo = f.min_value(), hi = f.max_value();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    double lam = dense.eigenvalues[i];
    if (lam < lo || lam > hi) {
      lam = std::clamp(lam, lo, hi);
      ++out.clamped;
    }
    const double lp = f.invert(lam);
    const double theta = std::acos(std::clamp(1.0 - lp, -1.0, 1.0));
    out.gamma.push_back((n + 2) * theta - (static_cast<double>(i) + 1.0) * kPi);
  }
  return out;
}

}  // namespace toepspec
