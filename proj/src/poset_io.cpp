#include "lnposet/poset_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "lnposet/errors.hpp"

namespace lnposet {

nlohmann::json to_json(const FinitePoset& p) {
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [x, y] : cover_pairs(p)) covers.push_back({x, y});
  return {{"labels", p.labels()}, {"covers", std::move(covers)}};
}

FinitePoset poset_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("labels") || !doc["labels"].is_array())
    throw InvalidArgument("poset JSON needs a \"labels\" array");
  std::vector<std::string> labels;
  for (const auto& label : doc["labels"]) {
    if (!label.is_string()) throw InvalidArgument("poset labels must be strings");
    labels.push_back(label.get<std::string>());
  }
  CoverList covers;
  if (doc.contains("covers")) {
    if (!doc["covers"].is_array()) throw InvalidArgument("\"covers\" must be an array");
    for (const auto& pair : doc["covers"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_unsigned())
        throw InvalidArgument("each cover must be a pair of non-negative indices");
      covers.emplace_back(pair[0].get<Element>(), pair[1].get<Element>());
    }
  }
  return FinitePoset::from_cover_relations(std::move(labels), covers);
}

FinitePoset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
  return poset_from_json(doc);
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const FinitePoset& p) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (Element x = 0; x < p.size(); ++x) out << "  n" << x << " [label=" << quoted(p.label(x)) << "];\n";

  auto graded = grading(p);
  if (auto* rank = std::get_if<RankFunction>(&graded)) {
    std::map<std::int64_t, std::vector<Element>> rows;
    for (Element x = 0; x < p.size(); ++x) rows[rank->values[x]].push_back(x);
    for (const auto& [r, members] : rows) {
      out << "  { rank=same;";
      for (Element x : members) out << " n" << x << ";";
      out << " }\n";
    }
  }
  for (const auto& [x, y] : cover_pairs(p)) out << "  n" << x << " -> n" << y << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace lnposet
