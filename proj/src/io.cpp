#include "ocs_toe/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ocs_toe/errors.hpp"

namespace ocs_toe::io {

namespace {

void require_object(const json& j, const std::string& where, const std::set<std::string>& fields) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!fields.contains(key)) throw SchemaError(where + "/" + key + ": unknown field");
  for (const auto& f : fields)
    if (!j.contains(f)) throw SchemaError(where + "/" + f + ": missing field");
}

Count get_int(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(where + "/" + key + ": expected an integer");
  return v.get<Count>();
}

Count get_count(const json& j, const std::string& key, const std::string& where) {
  const Count v = get_int(j, key, where);
  if (v < 0) throw SchemaError(where + "/" + key + ": expected a nonnegative integer");
  return v;
}

}  // namespace

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string canonical(const json& j) { return j.dump() + "\n"; }

LogicalTopology logical_from_json(const json& j, const std::string& where) {
  require_object(j, where, {"p", "k_egroup", "matrix"});
  const Count p = get_count(j, "p", where);
  const Count k = get_count(j, "k_egroup", where);
  const json& rows = j.at("matrix");
  if (!rows.is_array()) throw SchemaError(where + "/matrix: expected an array of rows");
  if (rows.size() != static_cast<std::size_t>(p))
    throw DimensionError(where + "/matrix: " + std::to_string(rows.size()) + " rows for p=" + std::to_string(p));
  IntMatrix c = IntMatrix::square(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_at = where + "/matrix/" + std::to_string(i);
    if (!rows[i].is_array()) throw SchemaError(row_at + ": expected an array");
    if (rows[i].size() != static_cast<std::size_t>(p))
      throw DimensionError(row_at + ": " + std::to_string(rows[i].size()) + " columns for p=" + std::to_string(p));
    for (std::size_t jdx = 0; jdx < rows[i].size(); ++jdx) {
      const json& v = rows[i][jdx];
      if (!v.is_number_integer() || v.get<Count>() < 0)
        throw SchemaError(row_at + "/" + std::to_string(jdx) + ": expected a nonnegative integer");
      c(i, jdx) = v.get<Count>();
    }
  }
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t jdx = i + 1; jdx < c.cols(); ++jdx)
      if (c(i, jdx) != c(jdx, i))
        throw SchemaError(where + "/matrix: asymmetric entry at (" + std::to_string(i) + "," + std::to_string(jdx) +
                          ")");
  return LogicalTopology::from_matrix(std::move(c), k);
}

json to_json(const LogicalTopology& lt) {
  json rows = json::array();
  for (std::size_t i = 0; i < lt.c.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < lt.c.cols(); ++j) row.push_back(lt.c(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"p", lt.p}, {"k_egroup", lt.k_egroup}, {"matrix", std::move(rows)}};
}

PhysicalTopology physical_from_json(const json& j) {
  require_object(j, "", {"scheme", "p", "k_egroup", "psi"});
  if (!j.at("scheme").is_string()) throw SchemaError("/scheme: expected a string");
  WiringScheme scheme{};
  try {
    scheme = parse_scheme(j.at("scheme").get<std::string>());
  } catch (const ValidationError& e) {
    throw SchemaError(std::string("/scheme: ") + e.what());
  }
  return build_wiring(scheme, static_cast<std::size_t>(get_count(j, "p", "")), get_count(j, "k_egroup", ""),
                      static_cast<int>(get_count(j, "psi", "")));
}

json to_json(const PhysicalTopology& phys) {
  return json{{"scheme", std::string(scheme_name(phys.scheme()))},
              {"p", phys.p()},
              {"k_egroup", phys.k_egroup()},
              {"psi", phys.psi()}};
}

OcsConfiguration config_from_json(const json& j, std::size_t p, std::size_t num_ocs) {
  require_object(j, "", {"x"});
  const json& entries = j.at("x");
  if (!entries.is_array()) throw SchemaError("/x: expected an array");
  OcsConfiguration cfg(p, num_ocs);
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const std::string at = "/x/" + std::to_string(n);
    require_object(entries[n], at, {"i", "j", "k", "count"});
    const auto i = static_cast<std::size_t>(get_count(entries[n], "i", at));
    const auto jj = static_cast<std::size_t>(get_count(entries[n], "j", at));
    const auto k = static_cast<std::size_t>(get_count(entries[n], "k", at));
    const Count count = get_count(entries[n], "count", at);
    if (i >= p || jj >= p || k >= num_ocs)
      throw DimensionError(at + ": index outside p=" + std::to_string(p) + ", num_ocs=" + std::to_string(num_ocs));
    cfg.x(i, jj, k) += count;
  }
  return cfg;
}

json to_json(const OcsConfiguration& cfg) {
  json entries = json::array();
  for (std::size_t i = 0; i < cfg.p(); ++i)
    for (std::size_t j = 0; j < cfg.p(); ++j)
      for (std::size_t k = 0; k < cfg.num_ocs(); ++k)
        if (cfg.x(i, j, k) != 0) entries.push_back(json{{"i", i}, {"j", j}, {"k", k}, {"count", cfg.x(i, j, k)}});
  return json{{"x", std::move(entries)}};
}

std::vector<LogicalTopology> sequence_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError(": expected an array of logical topologies");
  std::vector<LogicalTopology> seq;
  seq.reserve(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) seq.push_back(logical_from_json(j[n], "/" + std::to_string(n)));
  return seq;
}

json sequence_to_json(const std::vector<LogicalTopology>& seq) {
  json out = json::array();
  for (const auto& lt : seq) out.push_back(to_json(lt));
  return out;
}

}  // namespace ocs_toe::io
