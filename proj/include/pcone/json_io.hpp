#pragma once

#include "pcone/copolarity.hpp"
#include "pcone/identities.hpp"
#include "pcone/measure.hpp"
#include "pcone/solver.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace pcone {

/// Insertion-ordered JSON: emitted documents keep a fixed field order, so
/// output is byte-stable for fixed inputs.
using Json = nlohmann::ordered_json;

/// A document that parses as JSON but does not match the expected schema
/// (wrong shape, wrong type, inconsistent dimensions, bad version).
struct JsonSchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Accepts integers and "p/q" strings; with allow_float also floating
/// numbers, snapped to their exact binary rational.
Rat rat_from_json(const Json& j, bool allow_float = false);

Json rat_vec_to_json(const VecR& v);
VecR rat_vec_from_json(const Json& j, bool allow_float = false);
Json float_vec_to_json(const VecD& v);
VecD float_vec_from_json(const Json& j);

// { "v": 1, "generators": [[rat, ...], ...] }
Json cone_to_json(const PolyCone& c);
PolyCone cone_from_json(const Json& j, bool allow_float = false);

// { "v": 1, "cone": {...}, "halfspaces": [{"normal": [...], "offset": rat}] }
Json pseudocone_to_json(const PseudoCone& k);
PseudoCone pseudocone_from_json(const Json& j, bool allow_float = false);

// { "v": 1, "atoms": [{"dir": [floats], "weight": float}] }
Json measure_to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const PolyCone& c, const Json& j);

// { "v": 1, "finite": bool, "exact": rat|null, "triangulation": f|null,
//   "divergence": f|null }
Json volume_to_json(const CoconvexVolume& v);

Json solver_state_to_json(const SolverState& st);

// { "iterations": i, "residual": r, "lambda": l, "volume": v|null }
Json diagnostics_json(int iterations, double residual, double lambda,
                      std::optional<double> volume);

Json pipeline_report_to_json(const PipelineReport& rep);

// faces with their boundary/boundedness classes and class counts
Json face_report(const PseudoCone& k);
// face classes plus conjugate face indices against the copolar
Json conjugate_report(const PseudoCone& k);

Json identity_checks_to_json(const std::vector<IdentityCheck>& checks);

}  // namespace pcone
