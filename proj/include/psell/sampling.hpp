#pragma once

#include <random>

#include "psell/ball.hpp"
#include "psell/ellipsoid.hpp"

namespace psell {

/// Random point with |z| <= max_radius, any direction.
cvec random_ball_point(int n, std::mt19937_64& rng, double max_radius = 0.9);

/// Random interior point of the domain: a random direction scaled radially
/// to a fraction of its boundary distance.
cvec random_interior_point(const PseudoEllipsoid& domain, std::mt19937_64& rng,
                           double max_radial = 0.95);

/// Deterministic ball automorphism in bordered block form for the domain:
/// stays on every trailing hyperplane, with random core and rotations.
BallAutomorphism random_block_automorphism(const PseudoEllipsoid& domain,
                                           std::uint64_t seed, double scale = 0.6);

/// Deterministic extendible automorphism that in general needs a
/// non-identity permutation to straighten into block form.
BallAutomorphism random_extendible_automorphism(const PseudoEllipsoid& domain,
                                                std::uint64_t seed, double scale = 0.6);

}  // namespace psell
