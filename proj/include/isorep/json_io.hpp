#pragma once

// JSON formats shared by the CLI and the suites.
//
// Matrix: {"rows": r, "cols": c, "re": [...], "im": [...]}, entries row-major.
// Representation config:
//   {"family": "projection" | "reflection" | "custom" | "truncated_infinite",
//    "n": ..., "L": ..., "guard": ...,
//    "unitary": Matrix, "projections": [Matrix, ...] | "standard_basis",
//    "a_vector": [x, ...] or [[re, im], ...],
//    "w1": Matrix, "w2": Matrix,                       (custom only)
//    "reparam": {"a": [p, q], "b": [r, s]}}            (optional)

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isorep/cocycle.hpp"
#include "isorep/commutant.hpp"
#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

namespace isorep {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix& m);
/// Throws InputError naming `path` (and the offending key) on malformed input.
ComplexMatrix matrix_from_json(const Json& j, const std::string& path);

/// A real array or an array of [re, im] pairs.
ComplexVector vector_from_json(const Json& j, const std::string& path);
/// Comma-separated reals, e.g. "0.5,0.5,0.5,0.5".
ComplexVector vector_from_csv(const std::string& text, const std::string& path);

struct RepConfig {
  FamilyKind family = FamilyKind::reflection;
  std::optional<int> n;
  std::optional<int> L;
  std::optional<int> guard;
  std::optional<ComplexMatrix> unitary;
  /// nullopt means the standard basis projections.
  std::optional<std::vector<ComplexMatrix>> projections;
  std::optional<ComplexVector> a_vector;
  std::optional<ComplexMatrix> w1;
  std::optional<ComplexMatrix> w2;
  std::optional<Reparametrization> reparam;
};

FamilyKind family_kind_from_string(const std::string& s, const std::string& path);

RepConfig rep_config_from_json(const Json& j, const std::string& path = "");
Json rep_config_to_json(const RepConfig& c);

/// The projection family behind a projection or reflection config; nullopt otherwise.
std::optional<ProjectionFamily> family_from_config(const RepConfig& c, const ToleranceConfig& tol = {});

/// Builds and validates the representation described by `c`. Dimension conflicts are
/// reported as InputError with the field path.
IsoRep2 build_rep(const RepConfig& c, const ToleranceConfig& tol = {});

/// Reads and parses a JSON file; parse errors become InputError(path).
Json load_json_file(const std::string& file);

Json to_json(const ValidationReport& r);
Json to_json(const PurityReport& r);
Json to_json(const CocycleResiduals& r);
Json to_json(const CocycleSpace& s, bool with_basis);
/// {"index": {"finite": k}, "stable": true, ...}.
Json to_json(const IndexResult& r);
Json to_json(const EquivalenceVerdict& v);
Json to_json(const TruncationParams& t);

}  // namespace isorep
