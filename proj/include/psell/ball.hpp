#pragma once

#include <optional>
#include <vector>

#include "psell/hermitian.hpp"

namespace psell {

/// An automorphism of the unit ball B^n, represented by a class
/// representative in the matrix group acting projectively on homogeneous
/// coordinates (z, 1).
struct BallAutomorphism {
  SpecialUnitaryMatrix rep;

  int dim() const { return rep.n; }

  static BallAutomorphism identity(int n);
  /// Certifies the matrix before wrapping it.
  static BallAutomorphism from_matrix(const ComplexMatrix& m, int n,
                                      double tol = kMembershipTol);

  /// z -> (w_1/w_{n+1}, ..., w_n/w_{n+1}) with w = rep.m (z, 1).
  /// Requires |z| < 1 + 1e-12; a vanishing last homogeneous coordinate
  /// signals corrupted input and raises std::runtime_error.
  cvec apply(std::span<const cplx> z) const;

  /// this after g; the product representative is re-certified.
  BallAutomorphism compose(const BallAutomorphism& g) const;
  BallAutomorphism inverse() const;
};

/// The data of an automorphism fixing every trailing hyperplane {z_i = 0},
/// i > n-k: a core Moebius part on the first n-k coordinates plus one
/// rotation phase per protected coordinate.
///
/// `core` is the (n-k+1)x(n-k+1) matrix [[A, b], [c, d]], normalized to
/// determinant 1; it preserves the signature-(n-k,1) form. theta[j] is the
/// rotation of protected coordinate j, reported in (-pi, pi].
struct BlockDecomposition {
  int n = 0;
  int k = 0;
  ComplexMatrix core;
  std::vector<double> theta;

  int head_dim() const { return n - k; }

  cplx A(int i, int j) const { return core(i, j); }
  cplx b(int i) const { return core(i, head_dim()); }
  cplx c(int j) const { return core(head_dim(), j); }
  cplx d() const { return core(head_dim(), head_dim()); }

  /// c . z_head + d. Bounded below by |d| - |c| > 0 on the closed ball.
  cplx denominator(std::span<const cplx> z) const;

  /// Evaluates the automorphism from the decomposition data alone:
  /// Moebius quotient on the head, e^{i theta_j} z_j / (c.z_head + d) on
  /// the protected coordinates.
  cvec apply(std::span<const cplx> z) const;

  /// Reassembles the bordered (n+1)x(n+1) representative, det-normalized.
  ComplexMatrix bordered() const;
};

/// Outcome of the structural block test. On failure, `violation` is the
/// largest off-pattern entry magnitude and (row, col) its 1-based position
/// (col = 0 marks a non-unimodular diagonal entry).
struct BlockResult {
  std::optional<BlockDecomposition> dec;
  double violation = 0.0;
  int row = 0;
  int col = 0;

  bool ok() const { return dec.has_value(); }
};

/// Structural test: succeeds iff the representative is, up to a central
/// phase, in bordered block form with the trailing k coordinates protected.
/// Equivalent to f mapping each protected hyperplane slice of the ball into
/// itself. k = 0 succeeds trivially with the whole matrix as core.
BlockResult decompose_block(const BallAutomorphism& f, int protected_tail,
                            double tol = 1e-9);

/// Same operation with the protected set spelled out; the set must be the
/// trailing index block {n-k+1, ..., n} (1-based).
BlockResult decompose_block(const BallAutomorphism& f,
                            const std::vector<int>& protected_indices,
                            double tol = 1e-9);

/// Matrix of the coordinate permutation w -> (w_{sigma(0)}, ..., w_{sigma(n-1)})
/// on homogeneous coordinates, phase-adjusted to unit determinant.
/// sigma is 0-based with sigma[i] the source index of output i.
ComplexMatrix permutation_matrix(const std::vector<int>& sigma);

}  // namespace psell
