#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fsconn/error.hpp"
#include "fsconn/fuzzy_soft_set.hpp"
#include "fsconn/tag.hpp"

// Document layout:
//
//   {
//     "universe": ["u1", "u2"],
//     "parameters": {
//       "a1":    {"u1": 0.3, "u2": 0.7},
//       "a1*b1": {"u1": 0.5, "u2": 0.7}
//     }
//   }
//
// Product tags are written as their labels joined by '*', in sorted order. Every universe
// element must appear under every tag; there are no implicit zeros.

namespace fsconn {

namespace detail {

[[noreturn]] inline void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

}  // namespace detail

inline FuzzySoftSet fss_from_json(const nlohmann::json& doc) {
  using detail::invalid;
  if (!doc.is_object()) invalid("$", "document must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "universe" && key != "parameters") invalid(key, "unknown field");

  if (!doc.contains("universe")) invalid("universe", "missing");
  const auto& ju = doc.at("universe");
  if (!ju.is_array()) invalid("universe", "must be an array of strings");
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < ju.size(); ++i) {
    if (!ju[i].is_string()) invalid("universe[" + std::to_string(i) + "]", "must be a string");
    elements.push_back(ju[i].get<std::string>());
  }
  std::optional<Universe> universe;
  try {
    universe.emplace(std::move(elements));
  } catch (const ValidationError& e) {
    invalid("universe", e.what());
  }

  if (!doc.contains("parameters")) invalid("parameters", "missing");
  const auto& jp = doc.at("parameters");
  if (!jp.is_object() || jp.empty()) invalid("parameters", "must be a non-empty object");

  FuzzySoftSet::Assignments assignments;
  for (const auto& [key, jm] : jp.items()) {
    const std::string path = "parameters." + key;
    std::optional<ParamTag> tag;
    try {
      tag.emplace(ParamTag::parse(key));
    } catch (const ValidationError& e) {
      invalid(path, e.what());
    }
    if (!jm.is_object()) invalid(path, "must be an object mapping elements to memberships");
    for (const auto& [element, value] : jm.items()) {
      const auto& names = universe->elements();
      if (std::find(names.begin(), names.end(), element) == names.end())
        invalid(path + "." + element, "not an element of the universe");
    }
    std::vector<double> values;
    for (const auto& element : universe->elements()) {
      const std::string epath = path + "." + element;
      if (!jm.contains(element)) invalid(epath, "missing membership");
      const auto& v = jm.at(element);
      if (!v.is_number()) invalid(epath, "membership must be a number");
      const double m = v.get<double>();
      if (!(m >= 0.0 && m <= 1.0)) invalid(epath, "membership " + v.dump() + " outside [0,1]");
      values.push_back(m);
    }
    if (assignments.contains(*tag)) invalid(path, "duplicate of parameter '" + tag->str() + "'");
    assignments.emplace(*tag, FuzzySet(*universe, std::move(values)));
  }
  return FuzzySoftSet(*universe, std::move(assignments));
}

inline nlohmann::ordered_json fss_to_json(const FuzzySoftSet& fss) {
  nlohmann::ordered_json doc;
  doc["universe"] = fss.universe().elements();
  auto& params = doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [tag, set] : fss.assignments()) {
    auto& m = params[tag.str()] = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < set.size(); ++i) m[fss.universe()[i]] = set[i];
  }
  return doc;
}

inline FuzzySoftSet parse_fss(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed document: ") + e.what());
  }
  return fss_from_json(doc);
}

/// Serialised form; memberships use the shortest decimal that reads back exactly.
inline std::string dump_fss(const FuzzySoftSet& fss) { return fss_to_json(fss).dump(2) + "\n"; }

inline FuzzySoftSet load_fss(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_fss(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void save_fss(const FuzzySoftSet& fss, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << dump_fss(fss);
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace fsconn
