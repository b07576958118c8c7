// Symmetric Toeplitz matrices T_N(h) with (T_N)_{k+1,l+1} = h^(k-l), plus
// matrix-vector products (naive and FFT circulant embedding), an in-repo
// dense symmetric eigensolver, and dense inversion helpers used as oracles.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toepspec/fft.hpp"
#include "toepspec/symbols.hpp"

namespace toepspec {

class ToeplitzMatrix {
 public:
  // first_column = h^(0..N); matrix size is N+1.
  ToeplitzMatrix(std::vector<double> first_column, std::string symbol_ref = "");

  static ToeplitzMatrix build(const FourierSymbol& sym, int n);
  static ToeplitzMatrix build(const SingularSymbol& sym, int n);

  std::size_t size() const { return col_.size(); }       // N+1
  int n() const { return static_cast<int>(col_.size()) - 1; }
  double entry(std::size_t i, std::size_t j) const;
  const std::vector<double>& first_column() const { return col_; }
  const std::string& symbol_ref() const { return symbol_ref_; }
  std::vector<double> dense() const;  // row-major (N+1)^2
  double inf_norm() const;

 private:
  std::vector<double> col_;
  std::string symbol_ref_;
};

enum class MatvecMode { naive, fft };

// Both modes agree to 1e-10 relative; fft embeds into a circulant of size
// next_pow2(2(N+1)). Rejects dimension mismatch.
std::vector<double> matvec(const ToeplitzMatrix& t, std::span<const double> x,
                           MatvecMode mode);

// Plan for repeated FFT matvecs with the same matrix.
class CirculantMatvec {
 public:
  explicit CirculantMatvec(const ToeplitzMatrix& t);
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<cplx> spectrum_;
};

struct DenseSpectrum {
  std::vector<double> eigenvalues;          // ascending
  std::vector<double> eigenvectors;         // column-major, empty if not requested
  double residual_norm = 0.0;               // max_k ||T y_k - l_k y_k||_2
  double max_offdiag_dot = 0.0;             // orthonormality defect

  std::size_t size() const { return eigenvalues.size(); }
  std::span<const double> eigenvector(std::size_t k) const;
};

// Householder tridiagonalization + implicit-shift QL, in-repo so the oracle
// has no external dependency. Rejects sizes above the cap.
DenseSpectrum dense_eigh(const ToeplitzMatrix& t, bool with_vectors = true,
                         std::size_t cap = 4096);
DenseSpectrum dense_eigh_shifted(const ToeplitzMatrix& t, double shift,
                                 bool with_vectors, std::size_t cap = 4096);

// Solves T x = e_j and returns x_i. Rejects numerically singular matrices
// (pivot-based check). Optional diagonal shift handles T - lambda I.
double inverse_entry_dense(const ToeplitzMatrix& t, std::size_t i, std::size_t j,
                           double shift = 0.0);

}  // namespace toepspec
