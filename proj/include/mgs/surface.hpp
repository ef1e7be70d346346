#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgs/error.hpp"
#include "mgs/quiver.hpp"

namespace mgs {

// Marked points are indexed 0..: punctures first, then boundary points.
using PointId = int;

enum class Tag { Plain, Notched };

inline const char* to_string(Tag t) { return t == Tag::Plain ? "plain" : "notched"; }

struct MarkedPoint {
  std::string name;
  bool puncture = true;
  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

struct MarkedSurface {
  int genus = 0;
  std::vector<int> boundary_marked;
  int punctures = 0;
};

struct TaggedEnd {
  PointId point = 0;
  Tag tag = Tag::Plain;
  friend auto operator<=>(const TaggedEnd&, const TaggedEnd&) = default;
};

struct TaggedArc {
  int id = 0;
  std::array<TaggedEnd, 2> ends;
  friend bool operator==(const TaggedArc&, const TaggedArc&) = default;
};

// Sides listed clockwise; side[k] joins vert[k] and vert[k+1]. A self-folded
// triangle is kept as (L, r, r) with verts (Q, Q, P), P the enclosed puncture.
struct Triangle {
  std::array<int, 3> side{};
  std::array<PointId, 3> vert{};
  bool self_folded() const { return side[1] == side[2]; }
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

struct BoundarySide {
  int id = 0;
  int component = 0;
  friend auto operator<=>(const BoundarySide&, const BoundarySide&) = default;
};

// Ideal triangulation plus a sign per puncture (+1 plain, -1 notched). Kept
// normalized: every enclosed puncture has the sign of its base point, so the
// ideal loop of a self-folded triangle is exactly the arc with mixed tags.
struct TaggedTriangulation {
  int genus = 0;
  std::vector<MarkedPoint> points;
  int n_punctures = 0;
  int n_arcs = 0;  // arcs are 1..n_arcs and double as quiver vertices
  std::vector<int> boundary_marked;
  std::vector<BoundarySide> boundary;
  std::vector<Triangle> triangles;
  std::vector<int> sign;

  MarkedSurface surface() const { return {genus, boundary_marked, n_punctures}; }
  bool closed() const { return boundary_marked.empty(); }
  bool is_arc(int id) const { return id >= 1 && id <= n_arcs; }
  int sign_at(PointId p) const { return p < n_punctures ? sign[p] : 1; }
  int max_side_id() const {
    int m = n_arcs;
    for (const auto& b : boundary) m = std::max(m, b.id);
    return m;
  }
  PointId point_id(const std::string& name) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].name == name) return static_cast<PointId>(i);
    throw InvalidTriangulation("unknown marked point " + name);
  }
  friend bool operator==(const TaggedTriangulation&, const TaggedTriangulation&) = default;
};

inline int expected_arc_count(const MarkedSurface& s) {
  int sum_m = std::accumulate(s.boundary_marked.begin(), s.boundary_marked.end(), 0);
  return 6 * s.genus + 3 * static_cast<int>(s.boundary_marked.size()) + 3 * s.punctures + sum_m - 6;
}

// Empty when the surface is admissible.
inline std::string surface_exclusion(const MarkedSurface& s) {
  if (s.genus < 0) return "negative genus";
  for (int m : s.boundary_marked)
    if (m < 1) return "boundary component without marked points";
  if (s.boundary_marked.empty()) {
    if (s.punctures < 1) return "closed surface without punctures";
    if (s.genus == 0 && s.punctures < 4) return "sphere with fewer than 4 punctures";
  }
  if (s.genus == 0 && s.boundary_marked.size() == 1) {
    int m = s.boundary_marked[0];
    if (m == 1 && s.punctures <= 1) return "unpunctured or once-punctured monogon";
    if (m == 2 && s.punctures == 0) return "unpunctured digon";
    if (m == 3 && s.punctures == 0) return "unpunctured triangle";
  }
  if (expected_arc_count(s) < 1) return "surface admits no arcs";
  return {};
}

namespace detail {

inline Triangle rotated(const Triangle& t, int k) {
  Triangle r;
  for (int i = 0; i < 3; ++i) {
    r.side[i] = t.side[(i + k) % 3];
    r.vert[i] = t.vert[(i + k) % 3];
  }
  return r;
}

inline void canonical_rotation(Triangle& t) {
  for (int k = 0; k < 3; ++k)
    if (t.side[(k + 1) % 3] == t.side[(k + 2) % 3]) {
      t = rotated(t, k);
      return;
    }
  int k = static_cast<int>(std::min_element(t.side.begin(), t.side.end()) - t.side.begin());
  t = rotated(t, k);
}

// slots[id] = the (triangle*3 + position) occurrences of side id.
inline std::vector<std::vector<int>> slot_index(const TaggedTriangulation& t) {
  std::vector<std::vector<int>> slots(t.max_side_id() + 1);
  for (std::size_t i = 0; i < t.triangles.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      int s = t.triangles[i].side[k];
      if (s >= 0 && s < static_cast<int>(slots.size())) slots[s].push_back(static_cast<int>(i) * 3 + k);
    }
  return slots;
}

inline void swap_ids(TaggedTriangulation& t, int a, int b) {
  for (auto& tr : t.triangles)
    for (int& s : tr.side) s = s == a ? b : (s == b ? a : s);
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Corner (tri, k) sits at vert[k]. Corners glued across side s[k] are joined.
// `cut` sides are not crossed.
inline UnionFind corner_classes(const TaggedTriangulation& t, const std::vector<std::vector<int>>& slots,
                                const std::set<int>& cut = {}) {
  UnionFind uf(static_cast<int>(t.triangles.size()) * 3);
  for (std::size_t id = 0; id < slots.size(); ++id) {
    if (slots[id].size() != 2 || cut.count(static_cast<int>(id))) continue;
    int a = slots[id][0], b = slots[id][1];
    int ta = a / 3, ka = a % 3, tb = b / 3, kb = b % 3;
    // Slot a runs vert[ka] -> vert[ka+1]; slot b runs the other way.
    uf.unite(ta * 3 + ka, tb * 3 + (kb + 1) % 3);
    uf.unite(ta * 3 + (ka + 1) % 3, tb * 3 + kb);
  }
  return uf;
}

}  // namespace detail

// Puts the representation in canonical form: rotations, sign normalization
// around self-folded triangles, sorted triangle list.
inline void normalize(TaggedTriangulation& t) {
  for (auto& tr : t.triangles) detail::canonical_rotation(tr);
  for (auto& tr : t.triangles) {
    if (!tr.self_folded()) continue;
    PointId q = tr.vert[0], p = tr.vert[2];
    if (t.sign_at(p) != t.sign_at(q)) {
      // Re-encode the same tagged pair: swap loop and radius, toggle the puncture.
      int l = tr.side[0], r = tr.side[1];
      detail::swap_ids(t, l, r);
      t.sign[p] = -t.sign[p];
    }
  }
  for (auto& tr : t.triangles) detail::canonical_rotation(tr);
  std::sort(t.triangles.begin(), t.triangles.end());
  std::sort(t.boundary.begin(), t.boundary.end());
}

// Ideal endpoints of an arc or boundary side (loop endpoints coincide).
inline std::array<PointId, 2> ideal_ends(const TaggedTriangulation& t, int id) {
  for (const auto& tr : t.triangles)
    for (int k = 0; k < 3; ++k)
      if (tr.side[k] == id) return {tr.vert[k], tr.vert[(k + 1) % 3]};
  throw InvalidArc("no side with id " + std::to_string(id));
}

// The self-folded triangle whose loop or radius is `id`, if any.
inline const Triangle* self_folded_with(const TaggedTriangulation& t, int id) {
  for (const auto& tr : t.triangles)
    if (tr.self_folded() && (tr.side[0] == id || tr.side[1] == id)) return &tr;
  return nullptr;
}

inline std::vector<TaggedArc> tagged_arcs(const TaggedTriangulation& t) {
  auto tag_of = [&](PointId p, bool flipped) {
    int s = t.sign_at(p) * (flipped ? -1 : 1);
    return s > 0 ? Tag::Plain : Tag::Notched;
  };
  std::vector<TaggedArc> out;
  for (int id = 1; id <= t.n_arcs; ++id) {
    TaggedArc a{id, {}};
    const Triangle* sf = self_folded_with(t, id);
    if (sf && sf->side[0] == id) {
      a.ends = {TaggedEnd{sf->vert[0], tag_of(sf->vert[0], false)}, TaggedEnd{sf->vert[2], tag_of(sf->vert[2], true)}};
    } else {
      auto e = ideal_ends(t, id);
      a.ends = {TaggedEnd{e[0], tag_of(e[0], false)}, TaggedEnd{e[1], tag_of(e[1], false)}};
    }
    if (a.ends[1] < a.ends[0]) std::swap(a.ends[0], a.ends[1]);
    out.push_back(a);
  }
  return out;
}

// Structural self-check of the internal representation; never throws.
inline std::vector<std::string> validate(const TaggedTriangulation& t) {
  std::vector<std::string> v;
  auto surf = t.surface();
  if (auto why = surface_exclusion(surf); !why.empty()) v.push_back("excluded surface: " + why);
  if (t.n_arcs != expected_arc_count(surf))
    v.push_back("arc count " + std::to_string(t.n_arcs) + " differs from formula value " +
                std::to_string(expected_arc_count(surf)));
  if (static_cast<int>(t.sign.size()) != t.n_punctures) v.push_back("sign vector size mismatch");
  if (static_cast<int>(t.points.size()) < t.n_punctures) v.push_back("point list too short");
  std::set<int> bids;
  for (const auto& b : t.boundary) {
    if (t.is_arc(b.id) || b.id < 1) v.push_back("boundary side id " + std::to_string(b.id) + " clashes with arcs");
    if (!bids.insert(b.id).second) v.push_back("duplicate boundary side " + std::to_string(b.id));
  }
  for (const auto& tr : t.triangles)
    for (int k = 0; k < 3; ++k) {
      int s = tr.side[k];
      if (!t.is_arc(s) && !bids.count(s)) v.push_back("triangle uses unknown side " + std::to_string(s));
      if (tr.vert[k] < 0 || tr.vert[k] >= static_cast<int>(t.points.size())) v.push_back("corner out of range");
    }
  if (!v.empty()) return v;
  auto slots = detail::slot_index(t);
  for (int id = 1; id <= t.n_arcs; ++id)
    if (slots[id].size() != 2) v.push_back("arc " + std::to_string(id) + " occurs in " +
                                           std::to_string(slots[id].size()) + " triangle slots (expected 2)");
  for (int id : bids)
    if (slots[id].size() != 1) v.push_back("boundary side " + std::to_string(id) + " occurs in " +
                                           std::to_string(slots[id].size()) + " triangle slots (expected 1)");
  if (!v.empty()) return v;
  for (std::size_t id = 0; id < slots.size(); ++id) {
    if (slots[id].size() != 2) continue;
    const auto& a = t.triangles[slots[id][0] / 3];
    const auto& b = t.triangles[slots[id][1] / 3];
    int ka = slots[id][0] % 3, kb = slots[id][1] % 3;
    if (a.vert[ka] != b.vert[(kb + 1) % 3] || a.vert[(ka + 1) % 3] != b.vert[kb])
      v.push_back("arc " + std::to_string(id) + " is glued inconsistently with the orientation");
  }
  // Vertex links: each marked point is exactly one corner class.
  auto uf = detail::corner_classes(t, slots);
  std::map<int, std::set<PointId>> names;
  std::map<PointId, std::set<int>> classes;
  for (std::size_t i = 0; i < t.triangles.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      int c = uf.find(static_cast<int>(i) * 3 + k);
      names[c].insert(t.triangles[i].vert[k]);
      classes[t.triangles[i].vert[k]].insert(c);
    }
  for (const auto& [p, cs] : classes)
    if (cs.size() != 1) v.push_back("marked point " + t.points[p].name + " has a disconnected link");
  for (const auto& [c, ps] : names)
    if (ps.size() != 1) v.push_back("distinct marked points are identified by the gluing");
  if (static_cast<int>(classes.size()) != static_cast<int>(t.points.size()))
    v.push_back("some marked point has no incident triangle");
  int vcount = static_cast<int>(names.size());
  int ecount = t.n_arcs + static_cast<int>(t.boundary.size());
  int fcount = static_cast<int>(t.triangles.size());
  int chi = 2 - 2 * t.genus - static_cast<int>(t.boundary_marked.size());
  if (vcount - ecount + fcount != chi)
    v.push_back("Euler characteristic " + std::to_string(vcount - ecount + fcount) + " does not match surface (" +
                std::to_string(chi) + ")");
  // Boundary components: sides of each component form one cycle of the stated length.
  for (std::size_t c = 0; c < t.boundary_marked.size(); ++c) {
    std::map<PointId, PointId> next;
    int count = 0;
    for (const auto& b : t.boundary)
      if (b.component == static_cast<int>(c)) {
        auto e = ideal_ends(t, b.id);
        next[e[0]] = e[1];
        ++count;
      }
    if (count != t.boundary_marked[c]) {
      v.push_back("boundary component " + std::to_string(c) + " has " + std::to_string(count) +
                  " sides, expected " + std::to_string(t.boundary_marked[c]));
      continue;
    }
    if (count == 0) continue;
    PointId start = next.begin()->first, p = start;
    int steps = 0;
    do {
      if (!next.count(p)) break;
      p = next[p];
      ++steps;
    } while (p != start && steps <= count);
    if (p != start || steps != count) v.push_back("boundary component " + std::to_string(c) + " is not a cycle");
  }
  for (std::size_t p = t.n_punctures; p < t.points.size(); ++p)
    if (t.points[p].puncture) v.push_back("point list order broken");
  for (const auto& tr : t.triangles)
    if (tr.self_folded()) {
      if (tr.vert[0] != tr.vert[1] || tr.vert[2] >= t.n_punctures)
        v.push_back("self-folded triangle must enclose a puncture");
      else if (t.sign_at(tr.vert[2]) != t.sign_at(tr.vert[0]))
        v.push_back("self-folded triangle not sign-normalized");
      if (!t.is_arc(tr.side[0]) || !t.is_arc(tr.side[1])) v.push_back("self-folded triangle uses a boundary side");
    }
  for (int s : t.sign)
    if (s != 1 && s != -1) v.push_back("sign must be +1 or -1");
  return v;
}

// Signed adjacency of arcs in triangles; the radius of a self-folded triangle
// takes the row and column of its loop.
inline IceQuiver quiver_of(const TaggedTriangulation& t) {
  int n = t.n_arcs;
  std::vector<int> pi(n + 1);
  std::iota(pi.begin(), pi.end(), 0);
  for (const auto& tr : t.triangles)
    if (tr.self_folded()) pi[tr.side[1]] = tr.side[0];
  std::vector<std::vector<std::int64_t>> b(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (const auto& tr : t.triangles) {
    if (tr.self_folded()) continue;
    for (int k = 0; k < 3; ++k) {
      int x = tr.side[k], y = tr.side[(k + 1) % 3];
      if (!t.is_arc(x) || !t.is_arc(y)) continue;
      b[pi[x]][pi[y]] += 1;
      b[pi[y]][pi[x]] -= 1;
    }
  }
  std::vector<Arrow> arrows;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && b[pi[i]][pi[j]] > 0) arrows.push_back({i, j, b[pi[i]][pi[j]]});
  return IceQuiver(n, 0, std::move(arrows));
}

namespace detail {

// Flip of an ideal arc lying in two distinct triangles.
inline void ideal_flip(TaggedTriangulation& t, int e) {
  auto slots = slot_index(t);
  int s1 = slots[e][0], s2 = slots[e][1];
  int i1 = s1 / 3, i2 = s2 / 3;
  Triangle t1 = rotated(t.triangles[i1], s1 % 3);
  Triangle t2 = rotated(t.triangles[i2], s2 % 3);
  // t1 = (e,a,b) on (v0,v1,v2); t2 = (e,c,d) on (w0,w1,w2) with w0=v1, w1=v0.
  PointId v0 = t1.vert[0], v1 = t1.vert[1], v2 = t1.vert[2], w2 = t2.vert[2];
  int a = t1.side[1], b = t1.side[2], c = t2.side[1], d = t2.side[2];
  t.triangles[i1] = Triangle{{b, c, e}, {v2, v0, w2}};
  t.triangles[i2] = Triangle{{d, a, e}, {w2, v1, v2}};
}

}  // namespace detail

inline TaggedTriangulation flip(const TaggedTriangulation& t0, int a) {
  if (!t0.is_arc(a)) throw InvalidArc("cannot flip " + std::to_string(a) + ": not an arc");
  TaggedTriangulation t = t0;
  auto slots = detail::slot_index(t);
  if (slots[a].size() != 2) throw InvalidArc("arc " + std::to_string(a) + " is not in two triangle slots");
  if (slots[a][0] / 3 == slots[a][1] / 3) {
    // Radius of a self-folded triangle: re-encode it as the loop, then flip.
    const Triangle& tr = t.triangles[slots[a][0] / 3];
    int loop = tr.side[0];
    PointId p = tr.vert[2];
    detail::swap_ids(t, a, loop);
    t.sign[p] = -t.sign[p];
  }
  detail::ideal_flip(t, a);
  normalize(t);
  return t;
}

inline TaggedTriangulation flip(const TaggedTriangulation& t0, const std::vector<int>& seq) {
  TaggedTriangulation t = t0;
  for (int a : seq) t = flip(t, a);
  return t;
}

// Arcs at a marked point in counterclockwise order, starting at the smallest id.
// A loop appears twice; a radial puncture reports its two tagged arcs.
inline std::vector<int> arcs_around(const TaggedTriangulation& t, PointId p) {
  for (const auto& tr : t.triangles)
    if (tr.self_folded() && tr.vert[2] == p) {
      int a = tr.side[0], b = tr.side[1];
      return {std::min(a, b), std::max(a, b)};
    }
  auto slots = detail::slot_index(t);
  std::vector<int> corners;
  for (std::size_t i = 0; i < t.triangles.size(); ++i)
    for (int k = 0; k < 3; ++k)
      if (t.triangles[i].vert[k] == p) corners.push_back(static_cast<int>(i) * 3 + k);
  if (corners.empty()) return {};
  auto in_side = [&](int c) { return t.triangles[c / 3].side[(c % 3 + 2) % 3]; };
  auto next_corner = [&](int c) -> int {
    int out = t.triangles[c / 3].side[c % 3];
    const auto& sl = slots[out];
    if (sl.size() != 2) return -1;
    int other = sl[0] == c ? sl[1] : sl[0];
    return (other / 3) * 3 + (other % 3 + 1) % 3;
  };
  // On the boundary start where the fan begins so the walk is not cyclic.
  int start = corners[0];
  if (p >= t.n_punctures) {
    std::set<int> has_pred;
    for (int c : corners)
      if (int nc = next_corner(c); nc >= 0) has_pred.insert(nc);
    for (int c : corners)
      if (!has_pred.count(c)) start = c;
  }
  std::vector<int> order;
  int c = start;
  for (std::size_t guard = 0; guard <= corners.size(); ++guard) {
    int s = in_side(c);
    if (t.is_arc(s)) order.push_back(s);
    int nc = next_corner(c);
    if (nc < 0 || nc == start) break;
    c = nc;
  }
  if (p >= t.n_punctures) {
    int last_out = t.triangles[c / 3].side[c % 3];
    if (t.is_arc(last_out)) order.push_back(last_out);
    return order;
  }
  auto it = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), it, order.end());
  return order;
}

struct RadialPunctureInfo {
  PointId puncture = 0;
  int inner = 0;      // the arc notched at the puncture
  int companion = 0;  // the arc plain at the puncture
  std::array<int, 2> outer{};
};

inline std::vector<RadialPunctureInfo> radial_punctures(const TaggedTriangulation& t) {
  std::vector<RadialPunctureInfo> out;
  auto slots = detail::slot_index(t);
  for (const auto& tr : t.triangles) {
    if (!tr.self_folded()) continue;
    int l = tr.side[0], r = tr.side[1];
    PointId p = tr.vert[2];
    RadialPunctureInfo info;
    info.puncture = p;
    // The loop's tagged version is notched at p exactly when p is plain.
    info.inner = t.sign_at(p) > 0 ? l : r;
    info.companion = t.sign_at(p) > 0 ? r : l;
    for (int s : slots[l]) {
      const Triangle& other = t.triangles[s / 3];
      if (other.self_folded()) continue;
      int k = s % 3;
      info.outer = {other.side[(k + 1) % 3], other.side[(k + 2) % 3]};
    }
    out.push_back(info);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.puncture < b.puncture; });
  return out;
}

inline bool is_radial(const TaggedTriangulation& t, PointId p) {
  for (const auto& tr : t.triangles)
    if (tr.self_folded() && tr.vert[2] == p) return true;
  return false;
}

// One complementary side of a loop: its punctures, or nullopt if it is not a disk.
struct LoopSide {
  std::optional<std::vector<PointId>> disk_interior;
  std::vector<PointId> points;  // every marked point strictly inside this side
};

inline std::array<LoopSide, 2> loop_sides(const TaggedTriangulation& t, int a) {
  if (!t.is_arc(a)) throw InvalidArc("no arc " + std::to_string(a));
  auto ends = ideal_ends(t, a);
  if (ends[0] != ends[1]) throw NotALoop("arc " + std::to_string(a) + " is not a loop");
  auto slots = detail::slot_index(t);
  int nt = static_cast<int>(t.triangles.size());
  detail::UnionFind comp(nt);
  for (std::size_t id = 0; id < slots.size(); ++id)
    if (static_cast<int>(id) != a && slots[id].size() == 2) comp.unite(slots[id][0] / 3, slots[id][1] / 3);
  int c0 = comp.find(slots[a][0] / 3), c1 = comp.find(slots[a][1] / 3);
  if (c0 == c1) throw NotADisk("loop " + std::to_string(a) + " does not separate the surface");
  auto corners = detail::corner_classes(t, slots, {a});
  std::array<LoopSide, 2> sides;
  for (int side = 0; side < 2; ++side) {
    int c = side == 0 ? c0 : c1;
    std::set<int> edges, vclasses, base_classes;
    bool has_boundary = false;
    int faces = 0;
    for (int i = 0; i < nt; ++i) {
      if (comp.find(i) != c) continue;
      ++faces;
      for (int k = 0; k < 3; ++k) {
        int s = t.triangles[i].side[k];
        edges.insert(s);
        if (!t.is_arc(s)) has_boundary = true;
        vclasses.insert(corners.find(i * 3 + k));
        if (s == a) {
          base_classes.insert(corners.find(i * 3 + k));
          base_classes.insert(corners.find(i * 3 + (k + 1) % 3));
        }
      }
    }
    int chi = static_cast<int>(vclasses.size()) - static_cast<int>(edges.size()) + faces;
    std::set<PointId> inside;
    for (int i = 0; i < nt; ++i) {
      if (comp.find(i) != c) continue;
      for (int k = 0; k < 3; ++k)
        if (!base_classes.count(corners.find(i * 3 + k))) inside.insert(t.triangles[i].vert[k]);
    }
    sides[side].points.assign(inside.begin(), inside.end());
    if (chi == 1 && !has_boundary && base_classes.size() == 1) sides[side].disk_interior = sides[side].points;
  }
  return sides;
}

// Punctures inside the disk bounded by loop a. When both sides are disks
// (spheres) the side avoiding `outside` is chosen, or else the side with fewer
// punctures, ties going to the side whose smallest puncture is larger.
inline std::vector<PointId> monogon_interior(const TaggedTriangulation& t, int a,
                                             std::optional<PointId> outside = std::nullopt) {
  auto sides = loop_sides(t, a);
  bool d0 = sides[0].disk_interior.has_value(), d1 = sides[1].disk_interior.has_value();
  if (!d0 && !d1) throw NotADisk("neither side of loop " + std::to_string(a) + " is a disk");
  if (d0 != d1) return d0 ? *sides[0].disk_interior : *sides[1].disk_interior;
  const auto& x = *sides[0].disk_interior;
  const auto& y = *sides[1].disk_interior;
  if (outside) {
    bool in_x = std::count(x.begin(), x.end(), *outside) > 0;
    return in_x ? y : x;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? x : y;
  return x > y ? x : y;
}

// Underlying untagged object of an arc: endpoints, or a loop around a radial puncture.
struct IotaImage {
  PointId first = 0;
  PointId second = 0;
  std::optional<PointId> encloses;
  bool loop() const { return first == second; }
  friend bool operator==(const IotaImage&, const IotaImage&) = default;
};

inline IotaImage iota(const TaggedTriangulation& t, int a) {
  if (!t.is_arc(a)) throw InvalidArc("no arc " + std::to_string(a));
  const Triangle* sf = self_folded_with(t, a);
  if (sf && sf->side[0] == a) return {sf->vert[0], sf->vert[0], sf->vert[2]};
  auto e = ideal_ends(t, a);
  return {std::min(e[0], e[1]), std::max(e[0], e[1]), std::nullopt};
}

// Renames arc i to perm[i - 1]; boundary sides keep their ids.
inline TaggedTriangulation relabel_arcs(const TaggedTriangulation& t0, const std::vector<int>& perm) {
  TaggedTriangulation t = t0;
  for (auto& tr : t.triangles)
    for (int& s : tr.side)
      if (t.is_arc(s)) s = perm[s - 1];
  normalize(t);
  return t;
}

// Same complex with every puncture's tags reversed.
inline TaggedTriangulation toggle_all_tags(const TaggedTriangulation& t0) {
  TaggedTriangulation t = t0;
  for (int& s : t.sign) s = -s;
  normalize(t);
  return t;
}

struct ClosedSurface {
  TaggedTriangulation closed;
  std::vector<int> original_ids;
  std::vector<int> added_ids;
};

// Glues a disk to each boundary component: a fan for m >= 3, a star around one
// new puncture for m <= 2. Boundary sides become arcs n+1.. in id order.
inline ClosedSurface close_surface(const TaggedTriangulation& t) {
  if (t.closed()) throw NotABoundedSurface("surface has no boundary");
  ClosedSurface out;
  TaggedTriangulation c = t;
  int n = t.n_arcs;
  std::vector<BoundarySide> bsides = t.boundary;
  std::sort(bsides.begin(), bsides.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  std::map<int, int> renum;
  int next_id = n;
  for (const auto& b : bsides) renum[b.id] = ++next_id;
  for (auto& tr : c.triangles)
    for (int& s : tr.side)
      if (renum.count(s)) s = renum[s];
  // Boundary points become punctures; rebuild the point list with punctures first.
  std::vector<PointId> remap(t.points.size());
  std::vector<MarkedPoint> pts;
  for (PointId p = 0; p < static_cast<PointId>(t.points.size()); ++p) {
    remap[p] = static_cast<PointId>(pts.size());
    pts.push_back({t.points[p].name, true});
  }
  for (auto& tr : c.triangles)
    for (PointId& v : tr.vert) v = remap[v];
  c.sign = t.sign;
  c.sign.resize(pts.size(), 1);
  std::set<std::string> used;
  for (const auto& p : pts) used.insert(p.name);
  auto new_puncture = [&](int comp) {
    std::string name = "D" + std::to_string(comp + 1);
    while (used.count(name)) name += "'";
    used.insert(name);
    pts.push_back({name, true});
    c.sign.push_back(1);
    return static_cast<PointId>(pts.size() - 1);
  };
  for (std::size_t comp = 0; comp < t.boundary_marked.size(); ++comp) {
    // The disk traverses each boundary side against the surface's own triangles.
    std::map<PointId, std::pair<PointId, int>> next;  // u -> (v, side) clockwise in the disk
    for (const auto& b : bsides) {
      if (b.component != static_cast<int>(comp)) continue;
      auto e = ideal_ends(t, b.id);
      next[remap[e[1]]] = {remap[e[0]], renum[b.id]};
    }
    std::vector<PointId> u;
    std::vector<int> e;
    PointId start = next.begin()->first, p = start;
    do {
      u.push_back(p);
      e.push_back(next[p].second);
      p = next[p].first;
    } while (p != start);
    int m = static_cast<int>(u.size());
    if (m == 1) {
      PointId np = new_puncture(static_cast<int>(comp));
      int r = ++next_id;
      out.added_ids.push_back(r);
      c.triangles.push_back(Triangle{{e[0], r, r}, {u[0], u[0], np}});
    } else if (m == 2) {
      PointId np = new_puncture(static_cast<int>(comp));
      int r0 = ++next_id, r1 = ++next_id;  // r0 joins u0, r1 joins u1
      out.added_ids.push_back(r0);
      out.added_ids.push_back(r1);
      c.triangles.push_back(Triangle{{e[0], r1, r0}, {u[0], u[1], np}});
      c.triangles.push_back(Triangle{{e[1], r0, r1}, {u[1], u[0], np}});
    } else {
      std::vector<int> diag(m, 0);  // diag[k] joins u0 and uk
      for (int k = 2; k <= m - 2; ++k) {
        diag[k] = ++next_id;
        out.added_ids.push_back(diag[k]);
      }
      auto spoke = [&](int k) { return k == 1 ? e[0] : (k == m - 1 ? e[m - 1] : diag[k]); };
      for (int k = 1; k + 1 < m; ++k)
        c.triangles.push_back(Triangle{{spoke(k), e[k], spoke(k + 1)}, {u[0], u[k], u[k + 1]}});
    }
  }
  c.points = std::move(pts);
  c.n_punctures = static_cast<int>(c.points.size());
  c.n_arcs = next_id;
  c.boundary_marked.clear();
  c.boundary.clear();
  // Genus is unchanged by capping boundary components with disks.
  normalize(c);
  for (int id = 1; id <= n; ++id) out.original_ids.push_back(id);
  for (const auto& [old, id] : renum) out.added_ids.push_back(id);
  std::sort(out.added_ids.begin(), out.added_ids.end());
  out.closed = std::move(c);
  return out;
}

}  // namespace mgs
