#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgs/quiver_io.hpp"
#include "mgs/surface.hpp"

namespace mgs {

// Direct image of a tagtri-v1 document, before any interpretation.
struct TagTriData {
  struct End {
    std::string point;
    Tag tag = Tag::Plain;
  };
  struct ArcData {
    int id = 0;
    std::array<End, 2> ends;
  };
  struct SideData {
    int id = 0;
    int component = 0;
    std::array<std::string, 2> ends;
  };
  int genus = 0;
  std::vector<int> boundary;
  std::vector<std::string> punctures;
  std::vector<ArcData> arcs;
  std::vector<std::array<int, 3>> triangles;
  std::vector<SideData> boundary_sides;
};

namespace detail {

// Corners (v0,v1,v2) with {v0,v1}, {v1,v2}, {v2,v0} matching the side ends.
inline std::vector<std::array<PointId, 3>> solve_corners(const std::array<std::array<PointId, 2>, 3>& e) {
  auto same = [](std::array<PointId, 2> a, std::array<PointId, 2> b) {
    return (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0]);
  };
  std::vector<std::array<PointId, 3>> sols;
  for (int first = 0; first < 2; ++first) {
    PointId v0 = e[0][first], v1 = e[0][1 - first];
    for (int j = 0; j < 2; ++j) {
      if (e[1][j] != v1) continue;
      PointId v2 = e[1][1 - j];
      if (same(e[2], {v2, v0})) {
        std::array<PointId, 3> s{v0, v1, v2};
        if (std::find(sols.begin(), sols.end(), s) == sols.end()) sols.push_back(s);
      }
    }
  }
  return sols;
}

inline Tag parse_tag(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + ": tag must be a string");
  std::string s = j.get<std::string>();
  if (s == "plain") return Tag::Plain;
  if (s == "notched") return Tag::Notched;
  throw FormatError(where + ": unknown tag \"" + s + "\"");
}

}  // namespace detail

inline TagTriData tagtri_from_json(const nlohmann::json& j) {
  using detail::require;
  using detail::require_int;
  TagTriData d;
  if (!j.is_object()) throw FormatError("tagtri-v1: top level must be an object");
  const auto& fmt = require(j, "format", "tagtri-v1");
  if (!fmt.is_string() || fmt.get<std::string>() != "tagtri-v1")
    throw FormatError("field \"format\": expected \"tagtri-v1\"");
  d.genus = static_cast<int>(require_int(require(j, "genus", "tagtri-v1"), "field \"genus\""));
  const auto& b = require(j, "boundary", "tagtri-v1");
  if (!b.is_array()) throw FormatError("field \"boundary\": expected an array");
  for (std::size_t i = 0; i < b.size(); ++i)
    d.boundary.push_back(static_cast<int>(require_int(b[i], "boundary[" + std::to_string(i) + "]")));
  const auto& p = require(j, "punctures", "tagtri-v1");
  if (!p.is_array()) throw FormatError("field \"punctures\": expected an array");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_string()) throw FormatError("punctures[" + std::to_string(i) + "]: expected a string");
    d.punctures.push_back(p[i].get<std::string>());
  }
  const auto& arcs = require(j, "arcs", "tagtri-v1");
  if (!arcs.is_array()) throw FormatError("field \"arcs\": expected an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    TagTriData::ArcData a;
    a.id = static_cast<int>(require_int(require(arcs[i], "id", where), where + ".id"));
    const auto& ends = require(arcs[i], "ends", where);
    if (!ends.is_array() || ends.size() != 2) throw FormatError(where + ".ends: expected two ends");
    for (int k = 0; k < 2; ++k) {
      const auto& e = ends[k];
      const std::string w = where + ".ends[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_string()) throw FormatError(w + ": expected [point, tag]");
      a.ends[k] = {e[0].get<std::string>(), detail::parse_tag(e[1], w)};
    }
    d.arcs.push_back(a);
  }
  const auto& tris = require(j, "triangles", "tagtri-v1");
  if (!tris.is_array()) throw FormatError("field \"triangles\": expected an array");
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const std::string where = "triangles[" + std::to_string(i) + "]";
    if (!tris[i].is_array() || tris[i].size() != 3) throw FormatError(where + ": expected three side ids");
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) t[k] = static_cast<int>(require_int(tris[i][k], where));
    d.triangles.push_back(t);
  }
  if (j.contains("boundary_sides")) {
    const auto& bs = j.at("boundary_sides");
    if (!bs.is_array()) throw FormatError("field \"boundary_sides\": expected an array");
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string where = "boundary_sides[" + std::to_string(i) + "]";
      TagTriData::SideData s;
      s.id = static_cast<int>(require_int(require(bs[i], "id", where), where + ".id"));
      s.component = bs[i].contains("component")
                        ? static_cast<int>(require_int(bs[i].at("component"), where + ".component"))
                        : 0;
      const auto& ends = require(bs[i], "ends", where);
      if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
        throw FormatError(where + ".ends: expected two point names");
      s.ends = {ends[0].get<std::string>(), ends[1].get<std::string>()};
      d.boundary_sides.push_back(s);
    }
  }
  return d;
}

// Interprets the document; violations are appended and the result is only
// meaningful when none were reported.
inline TaggedTriangulation build_triangulation(const TagTriData& d, std::vector<std::string>& v) {
  TaggedTriangulation t;
  t.genus = d.genus;
  t.boundary_marked = d.boundary;
  std::map<std::string, PointId> pid;
  for (const auto& name : d.punctures) {
    if (pid.count(name)) v.push_back("duplicate puncture name " + name);
    pid[name] = static_cast<PointId>(t.points.size());
    t.points.push_back({name, true});
  }
  t.n_punctures = static_cast<int>(t.points.size());
  std::vector<TagTriData::SideData> bsides = d.boundary_sides;
  std::sort(bsides.begin(), bsides.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  // Boundary points follow the punctures in name order.
  std::set<std::string> bnames;
  for (const auto& s : bsides)
    for (const auto& name : s.ends)
      if (!pid.count(name)) bnames.insert(name);
  for (const auto& name : bnames) {
    pid[name] = static_cast<PointId>(t.points.size());
    t.points.push_back({name, false});
  }
  auto lookup = [&](const std::string& name, const std::string& where) -> PointId {
    auto it = pid.find(name);
    if (it == pid.end()) {
      v.push_back(where + ": unknown marked point " + name);
      return -1;
    }
    return it->second;
  };
  // Arcs must be numbered 1..n.
  int n = static_cast<int>(d.arcs.size());
  std::vector<const TagTriData::ArcData*> by_id(n + 1, nullptr);
  for (const auto& a : d.arcs) {
    if (a.id < 1 || a.id > n) {
      v.push_back("arc id " + std::to_string(a.id) + " outside 1.." + std::to_string(n));
      continue;
    }
    if (by_id[a.id]) v.push_back("duplicate arc id " + std::to_string(a.id));
    by_id[a.id] = &a;
  }
  t.n_arcs = n;
  std::map<int, std::array<PointId, 2>> bends;
  for (const auto& s : bsides) {
    if (s.id >= 1 && s.id <= n) v.push_back("boundary side id " + std::to_string(s.id) + " clashes with an arc id");
    if (bends.count(s.id)) v.push_back("duplicate boundary side id " + std::to_string(s.id));
    if (s.component < 0 || s.component >= static_cast<int>(d.boundary.size()))
      v.push_back("boundary side " + std::to_string(s.id) + " names a missing component");
    bends[s.id] = {lookup(s.ends[0], "boundary side"), lookup(s.ends[1], "boundary side")};
    t.boundary.push_back({s.id, s.component});
  }
  if (!v.empty()) return t;
  std::vector<std::array<TaggedEnd, 2>> tagged(n + 1);
  for (int id = 1; id <= n; ++id) {
    const auto& a = *by_id[id];
    for (int k = 0; k < 2; ++k) {
      PointId p = lookup(a.ends[k].point, "arc " + std::to_string(id));
      tagged[id][k] = {p, a.ends[k].tag};
      if (p >= t.n_punctures && a.ends[k].tag != Tag::Plain)
        v.push_back("arc " + std::to_string(id) + " is notched at boundary point " + a.ends[k].point);
    }
    if (tagged[id][0].point == tagged[id][1].point && tagged[id][0].tag != tagged[id][1].tag)
      v.push_back("loop arc " + std::to_string(id) + " has mismatched end tags");
  }
  if (!v.empty()) return t;
  // Ideal endpoints; the loop of a self-folded triangle is found from the tags.
  std::vector<std::array<PointId, 2>> ideal(n + 1);
  for (int id = 1; id <= n; ++id) ideal[id] = {tagged[id][0].point, tagged[id][1].point};
  std::set<int> loops_of_self_folded;
  for (auto tri : d.triangles) {
    for (int k = 0; k < 3; ++k)
      if (!(tri[k] >= 1 && tri[k] <= n) && !bends.count(tri[k]))
        v.push_back("triangle uses unknown side " + std::to_string(tri[k]));
  }
  if (!v.empty()) return t;
  for (auto tri : d.triangles) {
    Triangle tr{tri, {}};
    detail::canonical_rotation(tr);
    if (!tr.self_folded()) continue;
    int l = tr.side[0], r = tr.side[1];
    if (l > n || r > n) {
      v.push_back("self-folded triangle with a boundary side");
      continue;
    }
    auto lt = tagged[l], rt = tagged[r];
    if (lt[0].point != rt[0].point) std::swap(rt[0], rt[1]);
    if (lt[0].point != rt[0].point || lt[1].point != rt[1].point) {
      v.push_back("self-folded triangle (" + std::to_string(l) + "," + std::to_string(r) + "," + std::to_string(r) +
                  "): loop and radius must share endpoints as tagged arcs");
      continue;
    }
    bool d0 = lt[0].tag != rt[0].tag, d1 = lt[1].tag != rt[1].tag;
    if (d0 == d1) {
      v.push_back("self-folded triangle (" + std::to_string(l) + "," + std::to_string(r) + "," + std::to_string(r) +
                  "): loop and radius must differ in tag at exactly one end");
      continue;
    }
    PointId p = d0 ? lt[0].point : lt[1].point, q = d0 ? lt[1].point : lt[0].point;
    if (p >= t.n_punctures) {
      v.push_back("self-folded triangle encloses a boundary point");
      continue;
    }
    ideal[l] = {q, q};
    loops_of_self_folded.insert(l);
  }
  if (!v.empty()) return t;
  auto ends_of = [&](int s) { return s <= n ? ideal[s] : bends[s]; };
  for (auto tri : d.triangles) {
    Triangle tr{tri, {}};
    std::array<std::array<PointId, 2>, 3> e{ends_of(tri[0]), ends_of(tri[1]), ends_of(tri[2])};
    auto sols = detail::solve_corners(e);
    if (tri[1] == tri[2] || tri[0] == tri[1] || tri[0] == tri[2]) {
      Triangle r{tri, {}};
      detail::canonical_rotation(r);
      auto lt = ideal[r.side[0]];
      PointId q = lt[0];
      auto re = ideal[r.side[1]];
      PointId p = re[0] == q ? re[1] : re[0];
      r.vert = {q, q, p};
      t.triangles.push_back(r);
      continue;
    }
    if (sols.empty()) {
      v.push_back("triangle (" + std::to_string(tri[0]) + "," + std::to_string(tri[1]) + "," + std::to_string(tri[2]) +
                  "): side endpoints do not close up");
      continue;
    }
    if (sols.size() > 1) {
      v.push_back("triangle (" + std::to_string(tri[0]) + "," + std::to_string(tri[1]) + "," + std::to_string(tri[2]) +
                  "): ambiguous corners");
      continue;
    }
    tr.vert = sols[0];
    t.triangles.push_back(tr);
  }
  if (!v.empty()) return t;
  // Signs: every end at a puncture must agree, except the loop's end at its enclosed puncture.
  std::vector<std::set<int>> seen(t.n_punctures);
  for (int id = 1; id <= n; ++id)
    for (int k = 0; k < 2; ++k) {
      PointId p = tagged[id][k].point;
      if (p >= t.n_punctures) continue;
      if (loops_of_self_folded.count(id) && ideal[id][0] != p) continue;
      seen[p].insert(tagged[id][k].tag == Tag::Plain ? 1 : -1);
    }
  t.sign.assign(t.n_punctures, 1);
  for (PointId p = 0; p < t.n_punctures; ++p) {
    if (seen[p].size() > 1) v.push_back("incompatible tags at puncture " + t.points[p].name);
    if (seen[p].size() == 1) t.sign[p] = *seen[p].begin();
  }
  if (!v.empty()) return t;
  for (const auto& msg : validate(t)) v.push_back(msg);
  if (v.empty()) normalize(t);
  return t;
}

inline std::vector<std::string> validate(const TagTriData& d) {
  std::vector<std::string> v;
  build_triangulation(d, v);
  return v;
}

inline TaggedTriangulation triangulation_from_data(const TagTriData& d) {
  std::vector<std::string> v;
  TaggedTriangulation t = build_triangulation(d, v);
  if (!v.empty()) {
    std::string msg = "invalid triangulation:";
    for (const auto& s : v) msg += "\n  " + s;
    throw InvalidTriangulation(msg);
  }
  return t;
}

inline TagTriData to_data(const TaggedTriangulation& t) {
  TagTriData d;
  d.genus = t.genus;
  d.boundary = t.boundary_marked;
  for (PointId p = 0; p < t.n_punctures; ++p) d.punctures.push_back(t.points[p].name);
  for (const auto& a : tagged_arcs(t)) {
    TagTriData::ArcData ad;
    ad.id = a.id;
    for (int k = 0; k < 2; ++k) ad.ends[k] = {t.points[a.ends[k].point].name, a.ends[k].tag};
    d.arcs.push_back(ad);
  }
  TaggedTriangulation c = t;
  normalize(c);
  for (const auto& tr : c.triangles) d.triangles.push_back(tr.side);
  for (const auto& b : c.boundary) {
    auto e = ideal_ends(c, b.id);
    d.boundary_sides.push_back({b.id, b.component, {t.points[e[0]].name, t.points[e[1]].name}});
  }
  return d;
}

inline nlohmann::ordered_json tagtri_to_json(const TagTriData& d) {
  nlohmann::ordered_json j;
  j["format"] = "tagtri-v1";
  j["genus"] = d.genus;
  j["boundary"] = d.boundary;
  j["punctures"] = d.punctures;
  j["arcs"] = nlohmann::ordered_json::array();
  for (const auto& a : d.arcs) {
    nlohmann::ordered_json arc;
    arc["id"] = a.id;
    arc["ends"] = nlohmann::ordered_json::array();
    for (const auto& e : a.ends) arc["ends"].push_back(nlohmann::ordered_json::array({e.point, to_string(e.tag)}));
    j["arcs"].push_back(arc);
  }
  j["triangles"] = nlohmann::ordered_json::array();
  for (const auto& tr : d.triangles) j["triangles"].push_back(tr);
  j["boundary_sides"] = nlohmann::ordered_json::array();
  for (const auto& s : d.boundary_sides) {
    nlohmann::ordered_json side;
    side["id"] = s.id;
    side["component"] = s.component;
    side["ends"] = s.ends;
    j["boundary_sides"].push_back(side);
  }
  return j;
}

inline TaggedTriangulation parse_triangulation(const std::string& text) {
  return triangulation_from_data(tagtri_from_json(detail::parse_json(text)));
}

inline std::string serialize_triangulation(const TaggedTriangulation& t) {
  return tagtri_to_json(to_data(t)).dump() + "\n";
}

}  // namespace mgs
