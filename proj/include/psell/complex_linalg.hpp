#pragma once

#include <complex>
#include <span>
#include <vector>

namespace psell {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Dense complex matrix, row-major. Everything in this library works with
/// matrices of size at most ~10x10, so the routines below favour clarity
/// and exactness over throughput.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool square() const { return rows == cols; }
  bool finite() const;

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int r, int c) { return ComplexMatrix(r, c); }
};

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const cplx& s, const ComplexMatrix& x);
ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);

cvec mat_vec(const ComplexMatrix& m, std::span<const cplx> v);

/// Largest entry magnitude (the norm used for membership defects).
double max_abs(const ComplexMatrix& m);

/// Euclidean norm of a complex vector.
double norm2(std::span<const cplx> v);

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y);

/// Determinant by LU with partial pivoting.
cplx det(ComplexMatrix m);

/// exp(X) by scaling-and-squaring with a Taylor tail, truncated once the
/// term norm drops below 1e-16. Fine for the tiny matrices used here.
ComplexMatrix matrix_exp(const ComplexMatrix& x);

/// Principal m-th root exp(log(w)/m).
cplx principal_root(const cplx& w, int m);

}  // namespace psell
