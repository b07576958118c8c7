#include "toepspec/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toepspec/fft.hpp"

namespace toepspec {

ToeplitzMatrix::ToeplitzMatrix(std::vector<double> first_column, std::string symbol_ref)
    : col_(std::move(first_column)), symbol_ref_(std::move(symbol_ref)) {
  if (col_.size() < 2) throw std::invalid_argument("ToeplitzMatrix: need N >= 1");
}

ToeplitzMatrix ToeplitzMatrix::build(const FourierSymbol& sym, int n) {
  if (n < 1) throw std::invalid_argument("ToeplitzMatrix::build: N >= 1 required");
  if (sym.order() < n)
    throw std::invalid_argument("ToeplitzMatrix::build: symbol truncation order below N");
  std::vector<double> col(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = sym.coeff(j);
  return ToeplitzMatrix(std::move(col), sym.name());
}

ToeplitzMatrix ToeplitzMatrix::build(const SingularSymbol& sym, int n) {
  if (n < 1) throw std::invalid_argument("ToeplitzMatrix::build: N >= 1 required");
  if (sym.order() < n)
    throw std::invalid_argument("ToeplitzMatrix::build: symbol truncation order below N");
  std::vector<double> col(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) col[static_cast<std::size_t>(j)] = sym.coeff(j);
  return ToeplitzMatrix(std::move(col), sym.name());
}

double ToeplitzMatrix::entry(std::size_t i, std::size_t j) const {
  const std::size_t d = i > j ? i - j : j - i;
  return col_[d];
}

std::vector<double> ToeplitzMatrix::dense() const {
  const std::size_t n = col_.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = entry(i, j);
  return a;
}

double ToeplitzMatrix::inf_norm() const {
  // rows have the same multiset of |entries| up to truncation; bound by full sum
  double s = std::abs(col_[0]);
  for (std::size_t j = 1; j < col_.size(); ++j) s += 2.0 * std::abs(col_[j]);
  return s;
}

// ------------------------------------------------------------------- matvec

std::vector<double> matvec(const ToeplitzMatrix& t, std::span<const double> x,
                           MatvecMode mode) {
  const std::size_t n = t.size();
  if (x.size() != n) throw std::invalid_argument("matvec: dimension mismatch");
  if (mode == MatvecMode::naive) {
    std::vector<double> y(n, 0.0);
    const auto& c = t.first_column();
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += c[i > j ? i - j : j - i] * x[j];
      y[i] = acc;
    }
    return y;
  }
  return CirculantMatvec(t).apply(x);
}

CirculantMatvec::CirculantMatvec(const ToeplitzMatrix& t) : n_(t.size()) {
  const std::size_t L = next_pow2(2 * n_);
  std::vector<cplx> c(L, cplx(0.0, 0.0));
  const auto& col = t.first_column();
  c[0] = col[0];
  for (std::size_t j = 1; j < n_; ++j) {
    c[j] = col[j];
    c[L - j] = col[j];  // symmetric: first row == first column
  }
  fft_inplace(c, false);
  spectrum_ = std::move(c);
}

std::vector<double> CirculantMatvec::apply(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("matvec: dimension mismatch");
  const std::size_t L = spectrum_.size();
  std::vector<cplx> v(L, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n_; ++j) v[j] = x[j];
  fft_inplace(v, false);
  for (std::size_t j = 0; j < L; ++j) v[j] *= spectrum_[j];
  fft_inplace(v, true);
  std::vector<double> y(n_);
  for (std::size_t j = 0; j < n_; ++j) y[j] = v[j].real();
  return y;
}

// --------------------------------------------------------------- dense_eigh

namespace {

// Householder reduction of a symmetric matrix (row-major, size n) to
// tridiagonal form; accumulates the transform in a when vectors are wanted.
// EISPACK tred2 layout: d = diagonal, e = subdiagonal (e[0] unused).
void tred2(std::vector<double>& a, std::size_t n, std::vector<double>& d,
           std::vector<double>& e, bool vectors) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (vectors) a[j * n + i] = a[i * n + j] / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
          for (std::size_t k = j + 1; k <= l; ++k) g += a[k * n + j] * a[i * n + k];
          e[j] = g / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i * n + j];
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * n + k] -= f * e[k] + g * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors) {
      const std::size_t l = i;  // columns 0..i-1
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < l; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < l; ++k) g += a[i * n + k] * a[k * n + j];
          for (std::size_t k = 0; k < l; ++k) a[k * n + j] -= g * a[k * n + i];
        }
      }
    }
    d[i] = a[i * n + i];
    if (vectors) {
      a[i * n + i] = 1.0;
      for (std::size_t j = 0; j < i; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    }
  }
}

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on the tridiagonal (d, e); accumulates rotations into z
// (row-major, used as identity or tred2 output) when vectors is set.
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
          std::size_t n, bool vectors) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw std::runtime_error("dense_eigh: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              f = z[k * n + i + 1];
              z[k * n + i + 1] = s * z[k * n + i] + c * f;
              z[k * n + i] = c * z[k * n + i] - s * f;
            }
          }
        }
        if (r == 0.0 && m > l + 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  // ascending sort, permuting vectors alongside
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (std::size_t i = 0; i < n; ++i) ds[i] = d[idx[i]];
  d = std::move(ds);
  if (vectors) {
    std::vector<double> zs(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) zs[k * n + i] = z[k * n + idx[i]];
    z = std::move(zs);
  }
}

}  // namespace

std::span<const double> DenseSpectrum::eigenvector(std::size_t k) const {
  const std::size_t n = eigenvalues.size();
  if (eigenvectors.size() != n * n)
    throw std::logic_error("DenseSpectrum: eigenvectors not stored");
  return std::span<const double>(eigenvectors).subspan(k * n, n);
}

DenseSpectrum dense_eigh_shifted(const ToeplitzMatrix& t, double shift, bool with_vectors,
                                 std::size_t cap) {
  const std::size_t n = t.size();
  if (n > cap)
    throw std::invalid_argument(
        "dense_eigh: size exceeds dense cap; use the asymptotic solver for large N");
  std::vector<double> a = t.dense();
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= shift;

  std::vector<double> d, e;
  std::vector<double> work = a;  // tred2 destroys its input
  tred2(work, n, d, e, with_vectors);
  tql2(d, e, work, n, with_vectors);

  DenseSpectrum s;
  s.eigenvalues = d;
  if (with_vectors) {
    // store column-major: vector k occupies [k*n, (k+1)*n)
    s.eigenvectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) s.eigenvectors[k * n + r] = work[r * n + k];

    double resid = 0.0, offdiag = 0.0;
    std::vector<double> ty(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto y = s.eigenvector(k);
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += (t.entry(i, j) - (i == j ? shift : 0.0)) * y[j];
        ty[i] = acc - d[k] * y[i];
      }
      double nrm = 0.0;
      for (double v : ty) nrm += v * v;
      resid = std::max(resid, std::sqrt(nrm));
    }
    // orthonormality defect on a subset of pairs for large n, all pairs otherwise
    const std::size_t stride = n > 256 ? n / 128 : 1;
    for (std::size_t p = 0; p < n; p += stride)
      for (std::size_t q = p; q < n; q += stride) {
        double dot = 0.0;
        auto u = s.eigenvector(p);
        auto v = s.eigenvector(q);
        for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
        offdiag = std::max(offdiag, std::abs(dot - (p == q ? 1.0 : 0.0)));
      }
    s.residual_norm = resid;
    s.max_offdiag_dot = offdiag;
  }
  return s;
}

DenseSpectrum dense_eigh(const ToeplitzMatrix& t, bool with_vectors, std::size_t cap) {
  return dense_eigh_shifted(t, 0.0, with_vectors, cap);
}

double inverse_entry_dense(const ToeplitzMatrix& t, std::size_t i, std::size_t j,
                           double shift) {
  const std::size_t n = t.size();
  if (i >= n || j >= n) throw std::out_of_range("inverse_entry_dense: index");
  std::vector<double> a = t.dense();
  for (std::size_t k = 0; k < n; ++k) a[k * n + k] -= shift;
  std::vector<double> x(n, 0.0);
  x[j] = 1.0;
  // LU with partial pivoting, solve in place
  std::vector<std::size_t> piv(n);
  for (std::size_t c = 0; c < n; ++c) piv[c] = c;
  const double scale = t.inf_norm() + std::abs(shift);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    if (std::abs(a[p * n + c]) < 1e-12 * scale)
      throw std::domain_error("inverse_entry_dense: matrix numerically singular");
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[p * n + k], a[c * n + k]);
      std::swap(x[p], x[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r * n + c] / a[c * n + c];
      if (m == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
      x[r] -= m * x[c];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double acc = x[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r * n + k] * x[k];
    x[r] = acc / a[r * n + r];
  }
  return x[i];
}

}  // namespace toepspec
