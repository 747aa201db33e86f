#pragma once

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lexflow/model.hpp"

namespace lexflow::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_error(const std::string& where, const std::string& what) {
  ::lexflow::detail::fail(ErrorKind::Parse, where + ": " + what);
}

// Integers may be JSON numbers; anything else must be a string so no
// precision is lost on the way in.
inline Rational number_at(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rational::parse(value.dump());
  }
  if (value.is_string()) {
    auto parsed = Rational::try_parse(value.get<std::string>());
    if (!parsed) parse_error(where, "not an integer, \"p/q\" or finite decimal: '" + value.get<std::string>() + "'");
    return *parsed;
  }
  if (value.is_number()) parse_error(where, "non-integer numbers must be written as strings");
  parse_error(where, "expected a number");
}

inline std::string id_at(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  parse_error(where, "expected a string or integer id");
}

inline const json& member(const json& object, const char* key, const std::string& where) {
  if (!object.is_object()) parse_error(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) parse_error(where, std::string("missing '") + key + "'");
  return *it;
}

}  // namespace detail

inline RawProblem parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    detail::parse_error("json", e.what());
  }
  RawProblem raw;
  const json& nodes = detail::member(doc, "nodes", "/");
  const json& arcs = detail::member(doc, "arcs", "/");
  if (!nodes.is_array()) detail::parse_error("/nodes", "expected an array");
  if (!arcs.is_array()) detail::parse_error("/arcs", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = "/nodes/" + std::to_string(i);
    raw.nodes.push_back({detail::id_at(detail::member(nodes[i], "id", at), at + "/id"),
                         detail::number_at(detail::member(nodes[i], "d", at), at + "/d")});
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string at = "/arcs/" + std::to_string(i);
    const json& a = arcs[i];
    raw.arcs.push_back({detail::id_at(detail::member(a, "id", at), at + "/id"),
                        detail::id_at(detail::member(a, "tail", at), at + "/tail"),
                        detail::id_at(detail::member(a, "head", at), at + "/head"),
                        detail::number_at(detail::member(a, "capacity", at), at + "/capacity")});
  }
  return raw;
}

/// Line format: `c ...` comment, `n <id> <d>` node, `a <id> <tail> <head> <capacity>` arc.
inline RawProblem parse_instance_dimacs(std::string_view text) {
  RawProblem raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;
    std::vector<std::string> rest;
    for (std::string token; fields >> token;) rest.push_back(token);
    auto number = [&](const std::string& token) {
      auto parsed = Rational::try_parse(token);
      if (!parsed) detail::parse_error(where, "bad number '" + token + "'");
      return *parsed;
    };
    if (tag == "n") {
      if (rest.size() != 2) detail::parse_error(where, "expected 'n <id> <d>'");
      raw.nodes.push_back({rest[0], number(rest[1])});
    } else if (tag == "a") {
      if (rest.size() != 4) detail::parse_error(where, "expected 'a <id> <tail> <head> <capacity>'");
      raw.arcs.push_back({rest[0], rest[1], rest[2], number(rest[3])});
    } else {
      detail::parse_error(where, "unknown line type '" + tag + "'");
    }
  }
  return raw;
}

/// Structured JSON when the first non-blank character is '{', line format otherwise.
inline RawProblem parse_instance(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_instance_json(text) : parse_instance_dimacs(text);
  }
  return parse_instance_dimacs(text);
}

inline Problem load_problem(std::string_view text) { return validate_problem(parse_instance(text)); }

inline json instance_to_json(const Problem& p) {
  json doc;
  doc["nodes"] = json::array();
  for (const Node& n : p.nodes()) doc["nodes"].push_back({{"id", n.id}, {"d", n.balance.to_string()}});
  doc["arcs"] = json::array();
  for (const Arc& a : p.arcs())
    doc["arcs"].push_back({{"id", a.id},
                           {"tail", p.nodes()[a.tail].id},
                           {"head", p.nodes()[a.head].id},
                           {"capacity", a.capacity.to_string()}});
  return doc;
}

}  // namespace lexflow::io
