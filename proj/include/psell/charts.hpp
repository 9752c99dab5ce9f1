#pragma once

#include <stdexcept>

#include "psell/ball.hpp"
#include "psell/ellipsoid.hpp"
#include "psell/lift.hpp"

namespace psell {

/// Chart validation failed: the chart ball meets a branch locus (a trailing
/// coordinate hyperplane or its pullback through the driving map).
struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A continuation path ran into a branch locus.
struct LocusHitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Consecutive continuation steps moved an image argument by >= pi/2;
/// the caller must raise the step count.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The germ of the locally defined map  covering^{-1} ∘ driver ∘ covering
/// on a ball around `base` that avoids both branch loci. branch_state holds
/// the chosen root of each trailing image coordinate at the base point.
struct LocalAutomorphismChart {
  PseudoEllipsoid domain;
  BallAutomorphism driver;
  cvec base;
  double radius = 0.0;
  cvec base_image;   // driver(covering(base))
  cvec branch_state; // principal p_j-th roots of trailing base_image entries
};

/// Validates the branch-avoidance conditions (via a Lipschitz bound on
/// driver ∘ covering) and seeds the root branches. Throws ChartError naming
/// the locus that is hit; shrinking the radius is the caller's job.
LocalAutomorphismChart make_chart(const PseudoEllipsoid& domain,
                                  const BallAutomorphism& driver,
                                  std::span<const cplx> base, double radius);

/// Evaluates the local map at z (|z - base| < radius, z in the closed
/// domain), staying on the branch seeded at the base point.
cvec eval_local(const LocalAutomorphismChart& chart, std::span<const cplx> z);

/// Result of continuing one trailing root branch around a closed loop:
/// factor = final/initial root value (a p_j-th root of unity), winding =
/// accumulated argument of the image coordinate over 2 pi.
struct MonodromyResult {
  int tail_index = 0;  // 0-based coordinate index
  cplx factor = 1.0;
  int winding = 0;
};

/// Tracks every trailing root branch along a closed polyline through the
/// domain (nearest-root selection per step). The loop must start and end at
/// chart.base and stay clear of both branch loci.
std::vector<MonodromyResult> continue_along_loop(const LocalAutomorphismChart& chart,
                                                 const std::vector<cvec>& loop,
                                                 int steps);

enum class WitnessOutcome { NotNeeded, Found, Inconclusive };

struct WitnessSearchOptions {
  int initial_steps = 256;
  int max_steps = 1 << 16;
};

/// A constructive obstruction to global extension: a chart and a loop whose
/// continuation multiplies a root branch by a nontrivial root of unity.
struct MonodromyWitness {
  WitnessOutcome outcome = WitnessOutcome::NotNeeded;
  ExtendibilityVerdict verdict;
  std::optional<LocalAutomorphismChart> chart;
  std::vector<cvec> loop;
  std::vector<MonodromyResult> results;
  int nontrivial_index = -1;  // 0-based coordinate with factor != 1
};

/// Returns NotNeeded when the driver is extendible. Otherwise searches for
/// a loop around a zero of a trailing image component (roots of the
/// restriction to complex lines) and runs the continuation, doubling the
/// step count on resolution failures up to opts.max_steps.
MonodromyWitness non_extendibility_witness(const PseudoEllipsoid& domain,
                                           const BallAutomorphism& driver,
                                           const WitnessSearchOptions& opts = {});

/// Roots of c_0 + c_1 x + ... + c_d x^d via the companion matrix.
cvec polynomial_roots(const cvec& coeffs);

}  // namespace psell
