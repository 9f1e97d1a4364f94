#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ocs_toe/model.hpp"

namespace ocs_toe::io {

using nlohmann::json;

// Parsing throws ParseError for malformed text, SchemaError for missing,
// unknown or mistyped fields (message carries a JSON pointer), and
// DimensionError when sizes disagree.
json parse_text(const std::string& text, const std::string& origin = "<input>");
json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Compact form with keys in lexicographic order and no insignificant
// whitespace, followed by a newline.
std::string canonical(const json& j);

// logical.json: {"k_egroup", "matrix", "p"}. The matrix must be symmetric.
LogicalTopology logical_from_json(const json& j, const std::string& where = "");
json to_json(const LogicalTopology& lt);

// physical.json: {"k_egroup", "p", "psi", "scheme"}.
PhysicalTopology physical_from_json(const json& j);
json to_json(const PhysicalTopology& phys);

// config.json: {"x": [{"count", "i", "j", "k"}, ...]} listing nonzero counts
// in (i, j, k) order. Dimensions come from the wiring it belongs to.
OcsConfiguration config_from_json(const json& j, std::size_t p, std::size_t num_ocs);
json to_json(const OcsConfiguration& cfg);

// seq.json: an array of logical.json payloads.
std::vector<LogicalTopology> sequence_from_json(const json& j);
json sequence_to_json(const std::vector<LogicalTopology>& seq);

}  // namespace ocs_toe::io
