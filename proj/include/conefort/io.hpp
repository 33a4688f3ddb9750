#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conefort/fan.hpp"
#include "conefort/report.hpp"

namespace conefort::io {

using Json = nlohmann::ordered_json;

/// Exact numbers travel as strings ("3", "-3/2"); plain JSON integers are accepted on input.
Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
std::string exact_string(const Rational& q);
std::string exact_string(const Integer& z);

/// {"ambient_rank": n, "rays": [...]}, optionally "lineality", "halfspaces" (a.x >= 0),
/// "equations" and "twist". With no rays and no lineality the halfspaces define the cone.
/// Throws ParseError on malformed records, DimensionMismatch on vectors of the wrong length.
Cone cone_from_json(const Json& j);
/// Canonical form: ambient_rank, twist, dimension, rays, lineality, halfspaces, equations.
Json cone_to_json(const Cone& c);

struct FanFile {
    Fan fan;
    std::vector<RationalMatrix> symmetry_generators;
    std::optional<Cone> support;  ///< absent when the file omits it; "full" becomes the whole space
};

/// Cones are ray-index lists, taken as given (no face closure is added) so validation sees the
/// file exactly. Throws ParseError, DimensionMismatch.
FanFile fan_file_from_json(const Json& j);
/// Keys in the order lattice_rank, rays, cones, symmetry_generators, support; rays are the
/// distinct rays of all cones in lexicographic order.
Json fan_file_to_json(const FanFile& f);

Json report_to_json(const Report& r);

/// Throws ParseError when the file is missing or not JSON.
Json read_json_file(const std::string& path);

}  // namespace conefort::io
