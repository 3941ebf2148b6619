#include "bft/io.hpp"

#include <sstream>

#include "bft/errors.hpp"

namespace bft {
namespace {

using nlohmann::json;

Elem parse_elem(const std::string& tok, const Field& f) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw InputError("not a field element: '" + tok + "'");
  }
  if (used != tok.size() || v < 0 || v >= f.order())
    throw InputError("'" + tok + "' is not an element code of GF(" + std::to_string(f.order()) + ")");
  return static_cast<Elem>(v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

const json& field_of(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field_of(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

std::vector<Vec> parse_rows(const std::string& literal, const Field& f) {
  std::vector<Vec> rows;
  std::stringstream rs(literal);
  std::string row;
  while (std::getline(rs, row, ';')) {
    row = trim(row);
    if (row.empty()) throw InputError("empty row in '" + literal + "'");
    Vec v;
    std::stringstream es(row);
    std::string tok;
    while (std::getline(es, tok, ',')) v.push_back(parse_elem(trim(tok), f));
    if (!rows.empty() && v.size() != rows.front().size()) throw InputError("ragged rows in '" + literal + "'");
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw InputError("no rows in '" + literal + "'");
  return rows;
}

std::string format_rows(const std::vector<Vec>& rows) {
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out += ";";
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(rows[r][k]);
    }
  }
  return out;
}

std::vector<Point> parse_points(const std::string& literal, const ProjSpace& s) {
  std::vector<Point> out;
  for (Vec& v : parse_rows(literal, s.field())) {
    if (v.size() != s.ambient())
      throw InputError("point needs " + std::to_string(s.ambient()) + " coordinates");
    out.emplace_back(s.field(), std::move(v));
  }
  return out;
}

json to_json(const Point& p) { return json(p.coords()); }

json to_json(const PSubspace& s) {
  json rows = json::array();
  for (const Vec& r : s.basis().rows()) rows.push_back(r);
  return rows;
}

json to_json(const Chamber& c) {
  json out = json::array();
  for (const PSubspace& s : c.chain) out.push_back(to_json(s));
  return out;
}

json to_json(const BasePoints& b) {
  json out = json::array();
  for (const Point& p : b.points()) out.push_back(to_json(p));
  return out;
}

PSubspace subspace_from_json(const ProjSpace& s, const json& j) {
  if (!j.is_array()) throw InputError("a subspace is encoded as a list of rows");
  std::vector<Vec> rows;
  for (const json& r : j) {
    if (!r.is_array() || r.size() != s.ambient())
      throw InputError("a subspace row must list " + std::to_string(s.ambient()) + " element codes");
    Vec v;
    for (const json& e : r) {
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() >= s.q())
        throw InputError("invalid element code in subspace row");
      v.push_back(static_cast<Elem>(e.get<int>()));
    }
    rows.push_back(std::move(v));
  }
  return PSubspace(EchelonBasis::from_canonical_rows(s.field(), s.ambient(), std::move(rows)));
}

Chamber chamber_from_json(const ProjSpace& s, const json& j) {
  if (!j.is_array()) throw InputError("a chamber is encoded as a list of subspaces");
  Chamber c;
  for (const json& sub : j) c.chain.push_back(subspace_from_json(s, sub));
  validate_chamber(s, c);
  return c;
}

json map_to_json(const ChamberMap& f) {
  const ProjSpace& s = f.source().space();
  json pairs = json::array();
  for (std::size_t k = 0; k < f.images().size(); ++k)
    pairs.push_back(json::array({to_json(f.source().chambers()[k]), to_json(f.image(k))}));
  return json{{"schema_version", kSchemaVersion},
              {"source", {{"n", s.dim()}, {"q", s.q()}}},
              {"target", {{"n", f.target().dim()}, {"q", f.target().q()}, {"dual", f.dual_hint()}}},
              {"pairs", std::move(pairs)}};
}

ChamberMap map_from_json(const json& j) {
  if (!j.is_object()) throw InputError("chamber map must be a JSON object");
  if (int_field(j, "schema_version") != kSchemaVersion)
    throw InputError("unsupported schema_version; expected " + std::to_string(kSchemaVersion));
  const json& src = field_of(j, "source");
  const json& tgt = field_of(j, "target");
  const ProjSpace source(int_field(src, "n"), int_field(src, "q"));
  const ProjSpace target(int_field(tgt, "n"), int_field(tgt, "q"));
  bool dual = false;
  if (tgt.contains("dual")) {
    if (!tgt.at("dual").is_boolean()) throw InputError("field 'dual' must be a boolean");
    dual = tgt.at("dual").get<bool>();
  }
  if (source.dim() != target.dim()) throw InputError("source and target must have the same dimension");

  auto building = std::make_shared<const Building>(source);
  const json& pairs = field_of(j, "pairs");
  if (!pairs.is_array()) throw InputError("'pairs' must be a list");
  std::vector<std::optional<Chamber>> images(building->chambers().size());
  for (const json& pr : pairs) {
    if (!pr.is_array() || pr.size() != 2) throw InputError("each pair is [source chamber, target chamber]");
    const Chamber from = chamber_from_json(source, pr[0]);
    const auto idx = building->index_of(from);
    if (!idx) throw InputError("source entry is not a chamber of the source space");
    if (images[*idx]) throw InputError("duplicate source chamber in 'pairs'");
    images[*idx] = chamber_from_json(target, pr[1]);
  }
  std::vector<Chamber> table;
  table.reserve(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (!images[k]) throw InputError("source chamber #" + std::to_string(k) + " has no image");
    table.push_back(std::move(*images[k]));
  }
  return ChamberMap(std::move(building), target, std::move(table), dual);
}

}  // namespace bft
