#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "psell/complex_linalg.hpp"

namespace psell {

/// Default absolute tolerance on the membership defect (largest-entry norm).
inline constexpr double kMembershipTol = 1e-10;

/// The signature-(n,1) Hermitian form on C^{n+1}: diag(1,...,1,-1).
struct SignatureForm {
  int n = 1;

  explicit SignatureForm(int ball_dim) : n(ball_dim) {}
  int size() const { return n + 1; }
  double sign(int i) const { return i == n ? -1.0 : 1.0; }
  ComplexMatrix matrix() const;
};

/// conj(w)^t . diag(1,...,1,-1) . z
cplx pseudo_inner(std::span<const cplx> w, std::span<const cplx> z,
                  const SignatureForm& form);

/// An (n+1)x(n+1) matrix certified to preserve the signature-(n,1) form and
/// to have unit determinant, within `residual`.
struct SpecialUnitaryMatrix {
  int n = 0;
  ComplexMatrix m;
  double residual = 0.0;
};

struct MembershipReport {
  bool accepted = false;
  double unitarity_defect = 0.0;
  double det_defect = 0.0;
  std::string reason;  // which defect failed, empty when accepted
  std::optional<SpecialUnitaryMatrix> member;
};

/// Tests conj(m)^t I m = I and det m = 1 within tol. Wrong shape throws;
/// a genuine defect is reported as a value.
MembershipReport check_membership(const ComplexMatrix& m, int n,
                                  double tol = kMembershipTol);

/// check_membership that throws std::invalid_argument on rejection.
SpecialUnitaryMatrix require_member(const ComplexMatrix& m, int n,
                                    double tol = kMembershipTol);

/// Exact inverse of a member: I . conj(m)^t . I.
ComplexMatrix signature_inverse(const ComplexMatrix& m, int n);

/// Divides by the principal (n+1)-th root of det, pinning det to 1.
ComplexMatrix su_normalize(const ComplexMatrix& m, int n);

/// Deterministic random member: a uniform[-scale,scale] matrix is projected
/// onto the trace-free anti-self-adjoint matrices of the form and
/// exponentiated. scale = 0 gives the identity.
SpecialUnitaryMatrix random_group_element(int n, std::uint64_t seed, double scale);

/// Equality modulo the center { exp(i 2 pi k/(n+1)) Id }.
bool projectively_equal(const SpecialUnitaryMatrix& a, const SpecialUnitaryMatrix& b,
                        double tol = 1e-9);

}  // namespace psell
