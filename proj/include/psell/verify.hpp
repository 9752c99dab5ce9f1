#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psell/ellipsoid.hpp"

namespace psell {

struct SuiteResult {
  std::string name;
  bool passed = false;
  bool vacuous = false;  // nothing to check on this domain
  double worst = 0.0;    // worst residual observed
  double tolerance = 0.0;
  std::string note;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  bool full = false;   // acceptance-scale sample counts
  int samples = 0;     // overrides the per-suite default when > 0
};

/// The property battery behind the `verify` command: group axioms, the ball
/// preservation identity, hyperplane/block equivalence, covering Jacobian
/// consistency, Levi classification, lift functional equation and boundary
/// preservation, round-trips, and witness/verdict consistency.
std::vector<SuiteResult> run_verification(const PseudoEllipsoid& domain,
                                          const VerifyOptions& opts);

}  // namespace psell
