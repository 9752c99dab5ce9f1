#pragma once

#include <cstdint>
#include <vector>

#include "psell/complex_linalg.hpp"

namespace psell {

/// The domain { sum |z_j|^2 + sum |z_{n-k+j}|^{2 p_j} < 1 } in C^n.
/// An empty exponent vector gives the unit ball.
struct PseudoEllipsoid {
  int n = 1;
  std::vector<int> p;

  PseudoEllipsoid(int ambient_dim, std::vector<int> exponents);

  int k() const { return static_cast<int>(p.size()); }
  int head_dim() const { return n - k(); }
  bool is_ball() const { return p.empty(); }
  /// Exponent of trailing coordinate slot j (0-based).
  int exponent(int j) const { return p[static_cast<size_t>(j)]; }

  /// Defining function; negative inside, zero on the boundary.
  double rho(std::span<const cplx> z) const;

  /// (z_1, ..., z_{n-k}, z_{n-k+1}^{p_1}, ..., z_n^{p_k}); maps the domain
  /// onto the unit ball, with rho(z) = |covering(z)|^2 - 1.
  cvec covering(std::span<const cplx> z) const;

  /// Determinant of the complex Jacobian of the covering:
  /// prod_j p_j z_{n-k+j}^{p_j - 1}. Vanishes exactly where a trailing
  /// coordinate vanishes.
  cplx covering_jacobian(std::span<const cplx> z) const;
};

enum class BoundaryClass { StronglyPseudoconvex, LeviDegenerate };

struct BoundaryPointReport {
  cvec point;
  double rho = 0.0;
  cvec gradient;                        // d rho / d z_i
  std::vector<double> levi_eigenvalues; // restricted complex Hessian, n-1 values
  BoundaryClass classification = BoundaryClass::StronglyPseudoconvex;
};

/// Levi-form classification of a boundary point (|rho| <= 1e-10 required).
/// The trailing-coordinate test |z_i| <= 1e-12 is the classifier; the
/// restricted-Hessian eigenvalues are reported alongside as a cross-check.
BoundaryPointReport classify_boundary(const PseudoEllipsoid& domain,
                                      std::span<const cplx> z);

/// Scales a nonzero direction radially onto the boundary (bisection on the
/// radial parameter; rho is strictly increasing along rays).
cvec boundary_point_in_direction(const PseudoEllipsoid& domain,
                                 std::span<const cplx> direction);

/// Deterministic boundary samples, |rho| <= 1e-12 each.
std::vector<cvec> sample_boundary(const PseudoEllipsoid& domain, std::uint64_t seed,
                                  int count);

/// Eigenvalues of a small Hermitian matrix by cyclic Jacobi rotations,
/// ascending order.
std::vector<double> hermitian_eigenvalues(ComplexMatrix h);

}  // namespace psell
