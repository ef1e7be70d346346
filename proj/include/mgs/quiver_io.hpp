#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mgs/quiver.hpp"

namespace mgs {

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline long long require_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<long long>();
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

inline nlohmann::ordered_json quiver_to_json(const IceQuiver& q) {
  nlohmann::ordered_json j;
  j["format"] = "iceq-v1";
  j["mutable"] = q.n_mutable();
  j["frozen"] = q.n_frozen();
  j["arrows"] = nlohmann::ordered_json::array();
  for (const Arrow& a : q.arrows()) j["arrows"].push_back({a.src, a.dst, a.mult});
  return j;
}

inline IceQuiver quiver_from_json(const nlohmann::json& j) {
  using detail::require;
  using detail::require_int;
  if (!j.is_object()) throw FormatError("iceq-v1: top level must be an object");
  const auto& fmt = require(j, "format", "iceq-v1");
  if (!fmt.is_string() || fmt.get<std::string>() != "iceq-v1")
    throw FormatError("field \"format\": expected \"iceq-v1\"");
  long long n = require_int(require(j, "mutable", "iceq-v1"), "field \"mutable\"");
  long long m = require_int(require(j, "frozen", "iceq-v1"), "field \"frozen\"");
  if (n < 0 || m < 0 || n + m > 100000) throw FormatError("vertex counts out of range");
  const auto& arr = require(j, "arrows", "iceq-v1");
  if (!arr.is_array()) throw FormatError("field \"arrows\": expected an array");
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "arrows[" + std::to_string(i) + "]";
    const auto& a = arr[i];
    if (!a.is_array() || a.size() != 3) throw FormatError(where + ": expected [src,dst,mult]");
    long long s = require_int(a[0], where + "[0]");
    long long d = require_int(a[1], where + "[1]");
    long long c = require_int(a[2], where + "[2]");
    if (s < -1000000 || s > 1000000 || d < -1000000 || d > 1000000) throw FormatError(where + ": vertex out of range");
    for (const Arrow& prev : arrows)
      if (prev.src == s && prev.dst == d) throw FormatError(where + ": duplicate (src,dst) pair");
    arrows.push_back({static_cast<Vertex>(s), static_cast<Vertex>(d), c});
  }
  return IceQuiver(static_cast<int>(n), static_cast<int>(m), std::move(arrows));
}

inline std::string serialize_quiver(const IceQuiver& q) { return quiver_to_json(q).dump() + "\n"; }

inline IceQuiver parse_quiver(const std::string& text) { return quiver_from_json(detail::parse_json(text)); }

}  // namespace mgs
