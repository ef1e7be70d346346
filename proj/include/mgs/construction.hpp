#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mgs/error.hpp"
#include "mgs/quiver.hpp"
#include "mgs/surface.hpp"

namespace mgs {

struct PuncturePartition {
  PointId X = 0;
  std::vector<PointId> S;
  std::vector<std::vector<PointId>> strata;
};

struct IndependenceData {
  std::vector<PointId> P_set;
  std::vector<int> E;
  std::map<int, int> sigma;
  std::vector<int> order;
};

using InterchangeLog = std::vector<std::pair<int, int>>;

struct CycleSequence {
  std::vector<int> seq;
  std::pair<int, int> interchange;  // the arcs labeled 1 and 2
};

struct Stage {
  std::string name;
  std::vector<int> seq;
  friend bool operator==(const Stage&, const Stage&) = default;
};

struct ConstructionTrace {
  std::vector<Stage> stages;
  std::vector<int> full;
  Verdict verdict;
  PuncturePartition partition;
  TaggedTriangulation final_triangulation;
  std::vector<int> closed_sequence;  // boundary runs: the unrestricted sequence on the closed surface
  std::vector<int> final_relabel;    // final arc i corresponds to initial arc final_relabel[i-1]

  const Stage* stage(const std::string& name) const {
    for (const auto& s : stages)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

inline bool contains(const std::vector<PointId>& v, PointId p) { return std::find(v.begin(), v.end(), p) != v.end(); }

inline bool is_sphere(const TaggedTriangulation& t) { return t.genus == 0 && t.closed(); }

// Every loop arc (ideal loops included) with its base and its disk interior
// relative to `outside`; loops bounding no disk are omitted.
struct Monogon {
  int arc = 0;
  PointId base = 0;
  std::vector<PointId> interior;
};

inline std::vector<Monogon> monogons(const TaggedTriangulation& t, std::optional<PointId> outside) {
  std::vector<Monogon> out;
  for (int a = 1; a <= t.n_arcs; ++a) {
    auto im = iota(t, a);
    if (!im.loop()) continue;
    try {
      out.push_back({a, im.first, monogon_interior(t, a, outside)});
    } catch (const NotADisk&) {
    }
  }
  return out;
}

inline void require_constructible(const TaggedTriangulation& t) {
  if (!t.closed()) throw NotABoundedSurface("construct_closed needs a closed surface");
  if (auto v = validate(t); !v.empty()) throw InvalidTriangulation("invalid triangulation: " + v[0]);
  if (t.n_punctures < 2)
    throw UnsupportedSurface("once-punctured closed surfaces admit no maximal green sequence");
}

}  // namespace detail

inline PointId choose_X(const TaggedTriangulation& t) {
  if (!t.closed()) throw NotABoundedSurface("choose_X needs a closed surface");
  std::set<PointId> excluded;
  for (const auto& s : radial_punctures(t)) excluded.insert(s.puncture);
  // On a sphere every loop bounds disks on both sides; the side facing X is then outside.
  if (!detail::is_sphere(t))
    for (const auto& m : detail::monogons(t, std::nullopt)) excluded.insert(m.interior.begin(), m.interior.end());
  for (PointId p = 0; p < t.n_punctures; ++p)
    if (!excluded.count(p)) return p;
  throw NoEligiblePuncture("every puncture is radial or inside a monogon");
}

inline PuncturePartition partition_punctures(const TaggedTriangulation& t, PointId X) {
  PuncturePartition part;
  part.X = X;
  for (const auto& s : radial_punctures(t)) part.S.push_back(s.puncture);
  std::vector<PointId> rest;
  for (PointId p = 0; p < t.n_punctures; ++p)
    if (p != X && !detail::contains(part.S, p)) rest.push_back(p);
  auto mono = detail::monogons(t, X);
  // Monogons based at X are ignored: their punctures would otherwise never be reached.
  auto inside_loop_based_in = [&](PointId p, const std::vector<PointId>& bases) {
    for (const auto& m : mono)
      if (detail::contains(bases, m.base) && detail::contains(m.interior, p)) return true;
    return false;
  };
  std::vector<PointId> m0;
  for (PointId p : rest)
    if (!inside_loop_based_in(p, rest)) m0.push_back(p);
  if (rest.empty()) return part;
  if (m0.empty()) throw ConstructionError("no puncture outside every monogon");
  part.strata.push_back(m0);
  std::vector<PointId> left;
  for (PointId p : rest)
    if (!detail::contains(m0, p)) left.push_back(p);
  while (!left.empty()) {
    std::vector<PointId> next, still;
    for (PointId p : left) {
      if (inside_loop_based_in(p, part.strata.back()) && !inside_loop_based_in(p, left))
        next.push_back(p);
      else
        still.push_back(p);
    }
    if (next.empty()) throw ConstructionError("monogon nesting does not stratify");
    part.strata.push_back(next);
    left = still;
  }
  return part;
}

inline IndependenceData independence_data(const TaggedTriangulation& t, const std::vector<PointId>& P) {
  IndependenceData d;
  d.P_set = P;
  std::sort(d.P_set.begin(), d.P_set.end());
  if (static_cast<int>(d.P_set.size()) >= t.n_punctures)
    throw InvalidArc("independence set must be a proper subset of the punctures");
  std::set<int> E;
  for (int a = 1; a <= t.n_arcs; ++a) {
    auto im = iota(t, a);
    if (detail::contains(d.P_set, im.first) && detail::contains(d.P_set, im.second)) E.insert(a);
  }
  d.E.assign(E.begin(), E.end());
  // Breadth-first search over triangles; crossing an arc of E costs one, other arcs block.
  int nt = static_cast<int>(t.triangles.size());
  auto slots = detail::slot_index(t);
  std::vector<int> dist(nt, -1);
  std::deque<int> queue;
  for (int i = 0; i < nt; ++i)
    for (PointId v : t.triangles[i].vert)
      if (!detail::contains(d.P_set, v) && dist[i] < 0) {
        dist[i] = 0;
        queue.push_back(i);
      }
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int s : t.triangles[i].side) {
      if (!E.count(s)) continue;
      for (int slot : slots[s]) {
        int j = slot / 3;
        if (dist[j] < 0) {
          dist[j] = dist[i] + 1;
          queue.push_back(j);
        }
      }
    }
  }
  for (int a : d.E) {
    int best = -1;
    for (int slot : slots[a]) {
      int x = dist[slot / 3];
      if (x >= 0 && (best < 0 || x < best)) best = x;
    }
    if (best < 0) throw NoIndependencePath("arc " + std::to_string(a) + " has no independence path");
    d.sigma[a] = best;
  }
  d.order = d.E;
  std::stable_sort(d.order.begin(), d.order.end(), [&](int a, int b) { return d.sigma[a] < d.sigma[b]; });
  return d;
}

inline std::vector<int> mu_ind(const IndependenceData& d) { return d.order; }

// Arcs around P labeled n..1 counterclockwise from the smallest id; the sequence
// is (n, ..., 2, 1, 3, ..., n) and labels 1 and 2 are interchanged.
inline CycleSequence mu_cycle(const TaggedTriangulation& t, PointId P) {
  if (is_radial(t, P)) throw RadialPuncture("puncture " + t.points[P].name + " is radial");
  auto around = arcs_around(t, P);
  std::set<int> distinct(around.begin(), around.end());
  if (distinct.size() != around.size()) throw LoopAtPuncture("loop based at " + t.points[P].name);
  for (int a : around) {
    auto im = iota(t, a);
    if (im.loop()) throw LoopAtPuncture("loop based at " + t.points[P].name);
  }
  int n = static_cast<int>(around.size());
  if (n < 2) throw LoopAtPuncture("puncture " + t.points[P].name + " meets fewer than two arcs");
  CycleSequence c;
  c.seq = around;
  for (int k = n - 3; k >= 0; --k) c.seq.push_back(around[k]);
  c.interchange = {around[n - 1], around[n - 2]};
  return c;
}

// Reverse of the independence sequence with radial substitutions, then interchanges.
inline std::vector<int> mu_ind_star(const IndependenceData& d, const std::map<int, int>& radial_replacements,
                                    const InterchangeLog& log) {
  std::map<int, int> swap;
  for (auto [a, b] : log) {
    swap[a] = b;
    swap[b] = a;
  }
  std::vector<int> out;
  for (auto it = d.order.rbegin(); it != d.order.rend(); ++it) {
    int a = *it;
    if (auto r = radial_replacements.find(a); r != radial_replacements.end())
      out.push_back(r->second);
    else if (auto s = swap.find(a); s != swap.end())
      out.push_back(s->second);
    else
      out.push_back(a);
  }
  return out;
}

namespace detail {

// Triangulation and framed quiver advanced together, cross-checked at every step.
class Lockstep {
 public:
  explicit Lockstep(const TaggedTriangulation& t) : t_(t), f_(framed(quiver_of(t))) {}

  void run(const std::string& stage, const std::vector<int>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      int a = seq[i];
      auto where = [&] { return "stage " + stage + ", step " + std::to_string(i + 1) + " (arc " + std::to_string(a) + ")"; };
      if (!t_.is_arc(a)) throw ConstructionError(where() + ": not an arc");
      if (never_again_.count(a)) throw ConstructionError(where() + ": arc was already done");
      if (vertex_state(f_, a) != VertexState::Green) throw ConstructionError(where() + ": vertex is not green");
      f_ = mutate(f_, a);
      t_ = flip(t_, a);
      if (quiver_of(t_) != f_.mutable_part()) throw ConstructionError(where() + ": flip and mutation diverge");
    }
    stages_.push_back({stage, seq});
  }

  const TaggedTriangulation& triangulation() const { return t_; }
  const IceQuiver& quiver() const { return f_; }
  std::vector<Stage>& stages() { return stages_; }
  void retire(int a) { never_again_.insert(a); }

 private:
  TaggedTriangulation t_;
  IceQuiver f_;
  std::vector<Stage> stages_;
  std::set<int> never_again_;
};

inline void check_independent(const TaggedTriangulation& t, const std::vector<PointId>& P, const std::string& stage) {
  for (int a = 1; a <= t.n_arcs; ++a) {
    auto im = iota(t, a);
    if (contains(P, im.first) && contains(P, im.second))
      throw ConstructionError("after " + stage + ": arc " + std::to_string(a) + " still joins the independent set");
  }
}

inline void check_cycle_effect(const TaggedTriangulation& before, const TaggedTriangulation& after, PointId P,
                               std::pair<int, int> swapped, const std::string& stage) {
  TaggedTriangulation expect = before;
  swap_ids(expect, swapped.first, swapped.second);
  expect.sign[P] = -expect.sign[P];
  normalize(expect);
  if (expect != after) throw ConstructionError("after " + stage + ": result is not the tag change at the puncture");
}

// Runs ind, cycles and ind* for one independent set; returns nothing, records stages.
inline void run_stratum(Lockstep& ls, const std::vector<PointId>& P, const std::string& label, bool radial_rule) {
  auto d = independence_data(ls.triangulation(), P);
  ls.run("ind:" + label, mu_ind(d));
  check_independent(ls.triangulation(), P, "ind:" + label);
  std::map<int, int> replace;
  std::set<int> mutated(d.order.begin(), d.order.end());
  InterchangeLog log;
  for (PointId p : d.P_set) {
    const auto& t = ls.triangulation();
    if (is_radial(t, p)) {
      if (!radial_rule) throw ConstructionError("puncture " + t.points[p].name + " became radial in ind:" + label);
      // Changing the tag at a radial puncture exchanges its two arcs, so the
      // reversal swaps them; with one of them mutated this is a plain replacement.
      auto pair = arcs_around(t, p);
      if (!mutated.count(pair[0]) && !mutated.count(pair[1]))
        throw ConstructionError("radial puncture " + t.points[p].name + " was not produced by ind:" + label);
      replace[pair[0]] = pair[1];
      replace[pair[1]] = pair[0];
      continue;
    }
    auto c = mu_cycle(t, p);
    std::string name = label == "X" ? "cycle:X" : "cycle:" + t.points[p].name;
    TaggedTriangulation before = t;
    ls.run(name, c.seq);
    check_cycle_effect(before, ls.triangulation(), p, c.interchange, name);
    log.push_back(c.interchange);
  }
  ls.run("ind*:" + label, mu_ind_star(d, replace, log));
}

}  // namespace detail

inline ConstructionTrace construct_closed(const TaggedTriangulation& t_in) {
  detail::require_constructible(t_in);
  TaggedTriangulation t0 = t_in;
  normalize(t0);
  ConstructionTrace trace;
  trace.partition = partition_punctures(t0, choose_X(t0));
  const auto& part = trace.partition;
  detail::Lockstep ls(t0);
  for (std::size_t i = 0; i < part.strata.size(); ++i) {
    detail::run_stratum(ls, part.strata[i], "M" + std::to_string(i), true);
    if (i == 0) {
      // Arcs inside the first stratum, or joining it to a radial puncture, are finished.
      auto red = permanently_red_vertices(ls.quiver());
      std::vector<PointId> zone = part.strata[0];
      for (const auto& a : tagged_arcs(ls.triangulation())) {
        PointId x = a.ends[0].point, y = a.ends[1].point;
        bool in0x = detail::contains(zone, x), in0y = detail::contains(zone, y);
        bool sx = detail::contains(part.S, x), sy = detail::contains(part.S, y);
        if ((in0x && in0y) || (in0x && sy) || (in0y && sx)) {
          if (!std::binary_search(red.begin(), red.end(), a.id))
            throw ConstructionError("arc " + std::to_string(a.id) + " is not finished after ind*:M0");
          ls.retire(a.id);
        }
      }
    }
  }
  detail::run_stratum(ls, {part.X}, "X", false);
  trace.stages = ls.stages();
  for (const auto& s : trace.stages) trace.full.insert(trace.full.end(), s.seq.begin(), s.seq.end());
  trace.final_triangulation = ls.triangulation();
  if (!all_red(ls.quiver())) throw ConstructionError("final quiver has a green vertex");
  // Arc i now plays the role of the initial arc whose frozen copy points into it.
  const IceQuiver& f = ls.quiver();
  int n = f.n_mutable();
  std::vector<int> perm(n, 0);
  for (const auto& a : f.arrows())
    if (f.is_frozen(a.src) && a.mult == 1) perm[a.dst - 1] = a.src - n;
  trace.final_relabel = perm;
  if (relabel_arcs(trace.final_triangulation, perm) != toggle_all_tags(t0))
    throw ConstructionError("final triangulation is not the input with every tag changed");
  trace.verdict = apply_green_sequence(framed(quiver_of(t0)), trace.full).verdict;
  if (trace.verdict.kind != Verdict::ValidMaximalGreen)
    throw ConstructionError("independent check rejected the sequence: " + trace.verdict.str());
  return trace;
}

// c-vector of mutable vertex k in a framed quiver: signed multiplicities from the frozen copies.
inline std::vector<std::int64_t> c_vector(const IceQuiver& f, int k) {
  int n = f.n_mutable();
  std::vector<std::int64_t> c(n, 0);
  for (int j = 1; j <= f.n_frozen(); ++j) c[j - 1] = f.b(k, n + j);
  return c;
}

// Induced green sequence on the full subquiver on vertices 1..m of a framed
// quiver: a step survives when its c-vector lives on 1..m, and is replayed at
// the small vertex carrying the same c-vector.
inline std::vector<int> restrict_sequence(const IceQuiver& big_framed, const std::vector<int>& seq, int m) {
  int n = big_framed.n_mutable();
  std::vector<Arrow> sub;
  for (const auto& a : big_framed.arrows())
    if (a.src <= m && a.dst <= m) sub.push_back(a);
  IceQuiver small = framed(IceQuiver(m, 0, sub));
  IceQuiver big = big_framed;
  std::vector<int> out;
  for (int k : seq) {
    auto c = c_vector(big, k);
    big = mutate(big, k);
    bool inside = true;
    for (int j = m; j < n; ++j) inside = inside && c[j] == 0;
    if (!inside) continue;
    c.resize(m);
    int hit = 0;
    for (int j = 1; j <= m && !hit; ++j)
      if (c_vector(small, j) == c) hit = j;
    if (!hit) throw ConstructionError("no vertex of the subquiver carries c-vector of step at " + std::to_string(k));
    small = mutate(small, hit);
    out.push_back(hit);
  }
  return out;
}

inline ConstructionTrace construct_with_boundary(const TaggedTriangulation& t) {
  if (t.closed()) throw NotABoundedSurface("surface has no boundary");
  if (auto v = validate(t); !v.empty()) throw InvalidTriangulation("invalid triangulation: " + v[0]);
  auto closed = close_surface(t);
  ConstructionTrace trace = construct_closed(closed.closed);
  trace.closed_sequence = trace.full;
  auto restricted = restrict_sequence(framed(quiver_of(closed.closed)), trace.full, t.n_arcs);
  trace.full = restricted;
  trace.final_triangulation = t;
  trace.verdict = apply_green_sequence(framed(quiver_of(t)), restricted).verdict;
  if (trace.verdict.kind != Verdict::ValidMaximalGreen)
    throw ConstructionError("restricted sequence is not maximal green: " + trace.verdict.str());
  return trace;
}

}  // namespace mgs
