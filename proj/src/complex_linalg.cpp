#include "psell/complex_linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace psell {

bool ComplexMatrix::finite() const {
  for (const cplx& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int l = 0; l < x.cols; ++l) {
      const cplx xil = x(i, l);
      if (xil == cplx(0.0)) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xil * y(l, j);
    }
  return r;
}

ComplexMatrix operator*(const cplx& s, const ComplexMatrix& x) {
  ComplexMatrix r = x;
  for (cplx& z : r.a) z *= s;
  return r;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix sum: shape mismatch");
  ComplexMatrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix difference: shape mismatch");
  ComplexMatrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

cvec mat_vec(const ComplexMatrix& m, std::span<const cplx> v) {
  if (m.cols != static_cast<int>(v.size()))
    throw std::invalid_argument("matrix-vector product: shape mismatch");
  cvec r(m.rows, cplx(0.0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
  return r;
}

double max_abs(const ComplexMatrix& m) {
  double w = 0.0;
  for (const cplx& z : m.a) w = std::max(w, std::abs(z));
  return w;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix difference: shape mismatch");
  double w = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) w = std::max(w, std::abs(x.a[i] - y.a[i]));
  return w;
}

cplx det(ComplexMatrix m) {
  if (!m.square()) throw std::invalid_argument("det: matrix not square");
  const int n = m.rows;
  cplx d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const cplx f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

ComplexMatrix matrix_exp(const ComplexMatrix& x) {
  if (!x.square()) throw std::invalid_argument("matrix_exp: matrix not square");
  const int n = x.rows;
  int squarings = 0;
  double w = max_abs(x);
  while (w > 0.5) {
    w *= 0.5;
    ++squarings;
  }
  ComplexMatrix y = std::pow(0.5, squarings) * x;

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = cplx(1.0 / k) * (term * y);
    sum = sum + term;
    if (max_abs(term) < 1e-16) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

cplx principal_root(const cplx& w, int m) {
  if (m <= 0) throw std::invalid_argument("principal_root: order must be positive");
  if (w == cplx(0.0)) return 0.0;
  return std::exp(std::log(w) / static_cast<double>(m));
}

}  // namespace psell
