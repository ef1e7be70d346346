#pragma once

// trace-v1, catalog-v1 and plain mutation-sequence text.

#include <cctype>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgs/construction.hpp"
#include "mgs/quiver_io.hpp"
#include "mgs/search.hpp"

namespace mgs {

inline nlohmann::ordered_json trace_to_json(const ConstructionTrace& t) {
  nlohmann::ordered_json j;
  j["format"] = "trace-v1";
  j["stages"] = nlohmann::ordered_json::array();
  for (const Stage& s : t.stages) j["stages"].push_back({{"name", s.name}, {"sequence", s.seq}});
  j["full"] = t.full;
  j["verdict"] = t.verdict.str();
  if (!t.closed_sequence.empty()) j["closed_sequence"] = t.closed_sequence;
  return j;
}

// Vertex ids separated by commas or whitespace, or a trace-v1 document (its "full" field).
inline std::vector<Vertex> parse_sequence(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = detail::parse_json(text);
    const auto& full = detail::require(j, "full", "trace-v1");
    if (!full.is_array()) throw FormatError("trace-v1: \"full\" must be an array");
    std::vector<Vertex> seq;
    for (const auto& v : full) seq.push_back(static_cast<Vertex>(detail::require_int(v, "trace-v1 full")));
    return seq;
  }
  std::vector<Vertex> seq;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    for (char c : token)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw FormatError("bad vertex id '" + token + "'");
    if (token.size() > 9) throw FormatError("vertex id '" + token + "' out of range");
    seq.push_back(std::stoi(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (c == ',' && token.empty()) throw FormatError("empty entry in sequence");
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return seq;
}

inline std::string sequence_to_string(const std::vector<Vertex>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) out += (i ? "," : "") + std::to_string(seq[i]);
  return out;
}

inline nlohmann::ordered_json catalog_to_json(const Catalog& c) {
  nlohmann::ordered_json j;
  j["format"] = "catalog-v1";
  j["seed"] = c.seed;
  j["class_size"] = c.members.size();
  j["members"] = nlohmann::ordered_json::array();
  for (const auto& m : c.members) {
    nlohmann::ordered_json e;
    e["quiver"] = quiver_to_json(m.quiver);
    e["mgs"] = m.mgs ? nlohmann::ordered_json(*m.mgs) : nlohmann::ordered_json(nullptr);
    e["searched_to"] = m.searched_to;
    e["source"] = m.source;
    j["members"].push_back(std::move(e));
  }
  return j;
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  if (detail::require(j, "format", "catalog-v1") != "catalog-v1") throw FormatError("catalog-v1: wrong format tag");
  Catalog c;
  c.seed = detail::require(j, "seed", "catalog-v1").get<std::string>();
  const auto& members = detail::require(j, "members", "catalog-v1");
  if (!members.is_array()) throw FormatError("catalog-v1: \"members\" must be an array");
  for (const auto& e : members) {
    CatalogMember m{quiver_from_json(detail::require(e, "quiver", "catalog-v1 member")), std::nullopt, 0, 0, "none"};
    const auto& seq = detail::require(e, "mgs", "catalog-v1 member");
    if (!seq.is_null()) {
      std::vector<Vertex> s;
      for (const auto& v : seq) s.push_back(static_cast<Vertex>(detail::require_int(v, "catalog-v1 mgs")));
      m.mgs = std::move(s);
    }
    m.searched_to = static_cast<int>(detail::require_int(detail::require(e, "searched_to", "catalog-v1 member"),
                                                         "catalog-v1 searched_to"));
    if (e.contains("source")) m.source = e.at("source").get<std::string>();
    c.members.push_back(std::move(m));
  }
  if (detail::require_int(detail::require(j, "class_size", "catalog-v1"), "catalog-v1 class_size") !=
      static_cast<long long>(c.members.size()))
    throw FormatError("catalog-v1: class_size does not match the member list");
  return c;
}

}  // namespace mgs
