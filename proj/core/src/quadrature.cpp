#include "toepspec/quadrature.hpp"

#include <cmath>

namespace toepspec {

namespace {

struct Ctx {
  const std::function<double(double)>& f;
  long evals = 0;
  long budget = 0;
  double err = 0.0;
  bool exhausted = false;
  double eval(double x) {
    ++evals;
    return f(x);
  }
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(Ctx& c, double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = c.eval(lm), frm = c.eval(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || c.evals > c.budget) {
    if (c.evals > c.budget) c.exhausted = true;
    c.err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adapt(c, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(c, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth, long max_evals) {
  Ctx c{f};
  c.budget = max_evals;
  const double fa = c.eval(a), fb = c.eval(b), fm = c.eval(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  QuadResult r;
  r.value = adapt(c, a, b, fa, fm, fb, whole, tol, max_depth);
  r.error_estimate = c.err;
  r.evaluations = c.evals;
  r.budget_exhausted = c.exhausted;
  return r;
}

}  // namespace toepspec
