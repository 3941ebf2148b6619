#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bft/flag_map.hpp"

namespace bft {

/// Current version written to and required from chamber map files.
inline constexpr int kSchemaVersion = 1;

/// "1,0,0;0,1,0" -> rows of field element codes. Throws InputError on
/// malformed text, ragged rows, or codes outside GF(q).
std::vector<Vec> parse_rows(const std::string& literal, const Field& f);
std::string format_rows(const std::vector<Vec>& rows);
/// Points given one per row; each row is normalized.
std::vector<Point> parse_points(const std::string& literal, const ProjSpace& s);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const PSubspace& s);
nlohmann::json to_json(const Chamber& c);
nlohmann::json to_json(const BasePoints& b);

/// Rows must already be the canonical reduced echelon form.
PSubspace subspace_from_json(const ProjSpace& s, const nlohmann::json& j);
Chamber chamber_from_json(const ProjSpace& s, const nlohmann::json& j);

/// {"schema_version", "source": {n, q}, "target": {n, q, dual}, "pairs": [[chamber, chamber], ...]}
/// with pairs in source chamber order.
nlohmann::json map_to_json(const ChamberMap& f);
/// Throws InputError for a wrong schema, unsupported spaces, malformed
/// subspaces, or pairs that do not cover every source chamber exactly once.
ChamberMap map_from_json(const nlohmann::json& j);

}  // namespace bft
