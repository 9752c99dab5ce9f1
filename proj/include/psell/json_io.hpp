#pragma once

#include <string>

#include <json.hpp>

#include "psell/charts.hpp"
#include "psell/ellipsoid.hpp"
#include "psell/hermitian.hpp"
#include "psell/lift.hpp"

namespace psell {

using nlohmann::json;

/// Complex scalars are serialized as [re, im] pairs throughout.
json complex_to_json(const cplx& z);
cplx complex_from_json(const json& j);

json point_to_json(std::span<const cplx> z);
cvec point_from_json(const json& j);

/// Matrix files: {"n": int, "entries": [[[re,im], ...], ...]} with
/// (n+1) rows of (n+1) pairs. Shape mismatches are rejected.
json matrix_to_json(const ComplexMatrix& m, int n);
std::pair<ComplexMatrix, int> matrix_from_json(const json& j);

/// Domain files: {"n": int, "p": [int, ...]}; any exponent < 2 is rejected.
json domain_to_json(const PseudoEllipsoid& domain);
PseudoEllipsoid domain_from_json(const json& j);

/// {"extendible": bool, "sigma": [1-based ints] | null,
///  "witness": {"index": int, "point": [...], "violation": real} | null}
json verdict_to_json(const ExtendibilityVerdict& verdict);

json monodromy_to_json(const MonodromyResult& r);
json witness_to_json(const MonodromyWitness& w);

json load_json_file(const std::string& path);

}  // namespace psell
