#include "psell/hermitian.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace psell {

ComplexMatrix SignatureForm::matrix() const {
  ComplexMatrix m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) m(i, i) = sign(i);
  return m;
}

cplx pseudo_inner(std::span<const cplx> w, std::span<const cplx> z,
                  const SignatureForm& form) {
  const size_t dim = static_cast<size_t>(form.size());
  if (w.size() != dim || z.size() != dim)
    throw std::invalid_argument("pseudo_inner: vector length does not match the form");
  cplx s = 0.0;
  for (size_t i = 0; i < dim; ++i)
    s += std::conj(w[i]) * z[i] * form.sign(static_cast<int>(i));
  return s;
}

namespace {

// conj(m)^t . I . m - I, entries of the unitarity defect.
double unitarity_defect_of(const ComplexMatrix& m, const SignatureForm& form) {
  const ComplexMatrix gram = m.adjoint() * (form.matrix() * m);
  return max_abs_diff(gram, form.matrix());
}

}  // namespace

MembershipReport check_membership(const ComplexMatrix& m, int n, double tol) {
  if (n < 1) throw std::invalid_argument("check_membership: ball dimension must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("check_membership: tolerance must be positive");
  if (m.rows != n + 1 || m.cols != n + 1)
    throw std::invalid_argument("check_membership: matrix must be (n+1)x(n+1)");
  if (!m.finite())
    throw std::invalid_argument("check_membership: matrix has non-finite entries");

  const SignatureForm form(n);
  MembershipReport rep;
  rep.unitarity_defect = unitarity_defect_of(m, form);
  rep.det_defect = std::abs(det(m) - cplx(1.0));
  rep.accepted = rep.unitarity_defect <= tol && rep.det_defect <= tol;
  if (rep.accepted) {
    rep.member = SpecialUnitaryMatrix{n, m, std::max(rep.unitarity_defect, rep.det_defect)};
  } else {
    std::ostringstream os;
    if (rep.unitarity_defect > tol)
      os << "unitarity defect " << rep.unitarity_defect;
    if (rep.det_defect > tol) {
      if (!os.str().empty()) os << ", ";
      os << "determinant defect " << rep.det_defect;
    }
    rep.reason = os.str();
  }
  return rep;
}

SpecialUnitaryMatrix require_member(const ComplexMatrix& m, int n, double tol) {
  MembershipReport rep = check_membership(m, n, tol);
  if (!rep.accepted)
    throw std::invalid_argument("matrix is not a group member: " + rep.reason);
  return *rep.member;
}

ComplexMatrix signature_inverse(const ComplexMatrix& m, int n) {
  const ComplexMatrix fm = SignatureForm(n).matrix();
  return fm * (m.adjoint() * fm);
}

ComplexMatrix su_normalize(const ComplexMatrix& m, int n) {
  const cplx root = principal_root(det(m), n + 1);
  return (cplx(1.0) / root) * m;
}

SpecialUnitaryMatrix random_group_element(int n, std::uint64_t seed, double scale) {
  if (n < 1) throw std::invalid_argument("random_group_element: ball dimension must be >= 1");
  if (scale < 0.0 || !std::isfinite(scale))
    throw std::invalid_argument("random_group_element: scale must be >= 0");
  const int dim = n + 1;
  if (scale == 0.0)
    return SpecialUnitaryMatrix{n, ComplexMatrix::identity(dim), 0.0};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      r(i, j) = cplx(re, im);
    }

  // Project onto the Lie algebra: anti-self-adjoint for the form, trace-free.
  ComplexMatrix x = cplx(0.5) * (r - signature_inverse(r, n));
  cplx tr = 0.0;
  for (int i = 0; i < dim; ++i) tr += x(i, i);
  const cplx shift = tr / cplx(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) x(i, i) -= shift;

  const ComplexMatrix g = su_normalize(matrix_exp(x), n);
  return require_member(g, n, 1e-9);
}

bool projectively_equal(const SpecialUnitaryMatrix& a, const SpecialUnitaryMatrix& b,
                        double tol) {
  if (a.n != b.n) throw std::invalid_argument("projectively_equal: dimension mismatch");
  const int order = a.n + 1;
  for (int k = 0; k < order; ++k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / order);
    if (max_abs_diff(a.m, w * b.m) <= tol) return true;
  }
  return false;
}

}  // namespace psell
