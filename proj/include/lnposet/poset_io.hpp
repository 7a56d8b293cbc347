#pragma once

#include <string>

#include <json.hpp>

#include "lnposet/poset.hpp"

namespace lnposet {

/// {"labels": [...], "covers": [[i, j], ...]} with covers sorted lexicographically.
nlohmann::json to_json(const FinitePoset& p);

/// Reads the same layout; covers are Hasse pairs and the closure is computed here.
FinitePoset poset_from_json(const nlohmann::json& doc);

FinitePoset read_poset_file(const std::string& path);

/// One node per element, one edge per cover; graded posets get one rank per row,
/// drawn bottom to top.
std::string to_dot(const FinitePoset& p);

}  // namespace lnposet
