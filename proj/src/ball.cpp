#include "psell/ball.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psell {

BallAutomorphism BallAutomorphism::identity(int n) {
  return BallAutomorphism{SpecialUnitaryMatrix{n, ComplexMatrix::identity(n + 1), 0.0}};
}

BallAutomorphism BallAutomorphism::from_matrix(const ComplexMatrix& m, int n, double tol) {
  return BallAutomorphism{require_member(m, n, tol)};
}

cvec BallAutomorphism::apply(std::span<const cplx> z) const {
  const int n = dim();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("apply: point dimension mismatch");
  if (norm2(z) > 1.0 + 1e-12)
    throw std::invalid_argument("apply: point lies outside the closed ball");

  cvec h(z.begin(), z.end());
  h.push_back(1.0);
  const cvec w = mat_vec(rep.m, h);
  if (std::abs(w[n]) < 1e-14)
    throw std::runtime_error("apply: degenerate homogeneous coordinate (corrupted input)");
  cvec out(n);
  for (int i = 0; i < n; ++i) out[i] = w[i] / w[n];
  return out;
}

BallAutomorphism BallAutomorphism::compose(const BallAutomorphism& g) const {
  if (dim() != g.dim()) throw std::invalid_argument("compose: dimension mismatch");
  return BallAutomorphism{require_member(rep.m * g.rep.m, dim(), 1e-9)};
}

BallAutomorphism BallAutomorphism::inverse() const {
  return BallAutomorphism{require_member(signature_inverse(rep.m, dim()), dim(), 1e-9)};
}

cplx BlockDecomposition::denominator(std::span<const cplx> z) const {
  const int m = head_dim();
  cplx s = d();
  for (int l = 0; l < m; ++l) s += c(l) * z[l];
  return s;
}

cvec BlockDecomposition::apply(std::span<const cplx> z) const {
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("block apply: point dimension mismatch");
  const int m = head_dim();
  const cplx den = denominator(z);
  cvec out(n);
  for (int i = 0; i < m; ++i) {
    cplx num = b(i);
    for (int l = 0; l < m; ++l) num += A(i, l) * z[l];
    out[i] = num / den;
  }
  for (int j = 0; j < k; ++j)
    out[m + j] = std::polar(1.0, theta[j]) * z[m + j] / den;
  return out;
}

ComplexMatrix BlockDecomposition::bordered() const {
  const int m = head_dim();
  ComplexMatrix full(n + 1, n + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) full(i, j) = A(i, j);
    full(i, n) = b(i);
  }
  for (int j = 0; j < k; ++j) full(m + j, m + j) = std::polar(1.0, theta[j]);
  for (int j = 0; j < m; ++j) full(n, j) = c(j);
  full(n, n) = d();
  return su_normalize(full, n);
}

namespace {

// Central rescaling putting arg of the (n+1, n+1) entry into [0, 2pi/(n+1)).
ComplexMatrix center_normalize(const ComplexMatrix& m, int n) {
  const int order = n + 1;
  const double sector = 2.0 * std::numbers::pi / order;
  const cplx corner = m(n, n);
  if (std::abs(corner) == 0.0) return m;  // block test will fail anyway
  for (int kk = 0; kk < order; ++kk) {
    const cplx w = std::polar(1.0, sector * kk);
    double a = std::arg(corner * w);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 0.0 && a < sector) return w * m;
  }
  return m;
}

}  // namespace

BlockResult decompose_block(const BallAutomorphism& f, int protected_tail, double tol) {
  const int n = f.dim();
  const int k = protected_tail;
  if (k < 0 || k > n)
    throw std::invalid_argument("decompose_block: protected block size out of range");
  const int m = n - k;

  const ComplexMatrix w = center_normalize(f.rep.m, n);

  BlockResult res;
  auto mark = [&res](double v, int i, int j) {
    if (v > res.violation) {
      res.violation = v;
      res.row = i + 1;
      res.col = j + 1;
    }
  };
  // Entries required to vanish: head rows over protected columns, protected
  // rows off their diagonal, the border row/column over protected indices.
  for (int i = 0; i < m; ++i)
    for (int t = m; t < n; ++t) mark(std::abs(w(i, t)), i, t);
  for (int t = m; t < n; ++t) {
    for (int j = 0; j < m; ++j) mark(std::abs(w(t, j)), t, j);
    for (int tt = m; tt < n; ++tt)
      if (tt != t) mark(std::abs(w(t, tt)), t, tt);
    mark(std::abs(w(t, n)), t, n);
    mark(std::abs(w(n, t)), n, t);
    // Diagonal must be unimodular. col = 0 flags this case in the report.
    const double dev = std::abs(std::abs(w(t, t)) - 1.0);
    if (dev > res.violation) {
      res.violation = dev;
      res.row = t + 1;
      res.col = 0;
    }
  }
  if (res.violation > tol) return res;

  // Extract the core and pin its determinant to 1; the rotation phases
  // absorb the rescaling so the projective map is unchanged.
  ComplexMatrix core(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) core(i, j) = w(i, j);
    core(i, m) = w(i, n);
  }
  for (int j = 0; j < m; ++j) core(m, j) = w(n, j);
  core(m, m) = w(n, n);

  const cplx mu = cplx(1.0) / principal_root(det(core), m + 1);
  core = mu * core;

  BlockDecomposition dec;
  dec.n = n;
  dec.k = k;
  dec.core = core;
  dec.theta.resize(k);
  for (int j = 0; j < k; ++j) dec.theta[j] = std::arg(mu * w(m + j, m + j));

  res.dec = std::move(dec);
  res.violation = 0.0;
  res.row = res.col = 0;
  return res;
}

BlockResult decompose_block(const BallAutomorphism& f,
                            const std::vector<int>& protected_indices, double tol) {
  const int n = f.dim();
  const int k = static_cast<int>(protected_indices.size());
  std::vector<int> sorted = protected_indices;
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < k; ++j)
    if (sorted[j] != n - k + 1 + j)
      throw std::invalid_argument(
          "decompose_block: protected set must be the trailing index block");
  return decompose_block(f, k, tol);
}

ComplexMatrix permutation_matrix(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  ComplexMatrix p(n + 1, n + 1);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    const int s = sigma[i];
    if (s < 0 || s >= n || seen[s])
      throw std::invalid_argument("permutation_matrix: not a permutation");
    seen[s] = true;
    p(i, s) = 1.0;
  }
  p(n, n) = 1.0;
  return su_normalize(p, n);
}

}  // namespace psell
