#pragma once

#include <optional>

#include "psell/ball.hpp"
#include "psell/ellipsoid.hpp"

namespace psell {

/// A coordinate permutation fixing the head and moving trailing coordinates
/// only within groups sharing the same exponent. sigma is 0-based; sigma[i]
/// is the source index of output coordinate i.
struct PermutationCertificate {
  std::vector<int> sigma;

  bool is_identity() const;
  std::vector<int> inverse() const;
};

/// All exponent-compatible permutations, in lexicographic order of sigma.
std::vector<PermutationCertificate> enumerate_certificates(const PseudoEllipsoid& domain);

/// A protected hyperplane the automorphism fails to preserve: index is
/// 0-based, point lies on {z_index = 0} inside the ball, and violation is
/// the magnitude of coordinate `index` of its image.
struct HyperplaneWitness {
  int index = 0;
  cvec point;
  double violation = 0.0;
};

struct ExtendibilityVerdict {
  bool extendible = false;
  std::optional<PermutationCertificate> certificate;
  std::optional<HyperplaneWitness> witness;
};

/// Decides whether a ball automorphism drives a global automorphism of the
/// domain: true iff some exponent-compatible permutation composed with it
/// preserves every trailing hyperplane. The first success in enumeration
/// order wins; on failure, a violating sample point is attached.
ExtendibilityVerdict check_extendible(const PseudoEllipsoid& domain,
                                      const BallAutomorphism& ftilde);

/// A global automorphism of the domain in branch-resolved form: Moebius
/// quotient on the head and, on trailing coordinate n-k+j,
///
///   z  ->  e^{i phases[j]} root_of_rotation * z_{sigma^{-1}(n-k+j)}
///            * (c . z_head + d)^{-1/p_j}
///
/// with the root branch fixed through the principal logarithm of
/// (c . z_head + d)/d, which stays continuous on the whole closed domain.
struct EllipsoidAutomorphism {
  PseudoEllipsoid domain;
  BlockDecomposition block;       // of permutation ∘ driver
  PermutationCertificate sigma;
  cvec root_seed;                 // principal p_j-th roots of d
  std::vector<double> phases;     // free rotation per trailing coordinate

  /// Evaluates the map; requires rho(z) <= 1e-12 (closure of the domain).
  cvec apply(std::span<const cplx> z) const;

  /// The unique ball automorphism intertwined with this map by the
  /// covering: covering ∘ this = associated ∘ covering.
  BallAutomorphism associated() const;
};

/// Constructs the lift for an extendible verdict; phases default to zero.
/// Throws std::invalid_argument when the verdict is negative.
EllipsoidAutomorphism build_lift(const PseudoEllipsoid& domain,
                                 const ExtendibilityVerdict& verdict,
                                 const BallAutomorphism& ftilde,
                                 const std::optional<std::vector<double>>& theta = {});

/// f ∘ g as a lift: composes the associated ball automorphisms, re-lifts,
/// and aligns the free phases so the result equals f ∘ g pointwise.
EllipsoidAutomorphism compose_lifts(const EllipsoidAutomorphism& f,
                                    const EllipsoidAutomorphism& g);

}  // namespace psell
