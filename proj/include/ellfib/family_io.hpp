#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ellfib/curve.hpp"

namespace ellfib {

/// Family from its JSON form:
///   {"name": str, "nf": int, "g2": [[re, im], ...], "g3": [[re, im], ...],
///    "masses": [[re, im], ...]}   (masses optional, coefficients ascending)
/// Throws SchemaError naming the offending field.  Degree constraints are not
/// checked here; see validate_family.
CurveFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const CurveFamily& family);

/// Reads and parses a family file.  IoError if unreadable, SchemaError if the
/// content is not valid JSON or violates the schema.
CurveFamily load_family(const std::filesystem::path& path);

}  // namespace ellfib
