#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgs/error.hpp"

namespace mgs {

// Vertices are 1-based: mutable 1..n, frozen n+1..n+m.
using Vertex = int;

struct Arrow {
  Vertex src = 0;
  Vertex dst = 0;
  std::int64_t mult = 0;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw MultiplicityOverflow("arrow multiplicity overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw MultiplicityOverflow("arrow multiplicity overflow");
  return r;
}

}  // namespace detail

// Quiver with mutable and frozen vertices. Arrows are consolidated triples
// kept sorted by (src, dst); the value is immutable once built.
class IceQuiver {
 public:
  IceQuiver() = default;

  IceQuiver(int n_mutable, int n_frozen, std::vector<Arrow> arrows)
      : n_(n_mutable), m_(n_frozen), arrows_(std::move(arrows)) {
    if (n_ < 0 || m_ < 0) throw InvariantViolation("negative vertex count");
    std::sort(arrows_.begin(), arrows_.end());
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const Arrow& a = arrows_[i];
      const std::string at = "arrow (" + std::to_string(a.src) + "," + std::to_string(a.dst) + ")";
      if (a.src < 1 || a.src > n_vertices() || a.dst < 1 || a.dst > n_vertices())
        throw InvariantViolation(at + ": vertex out of range");
      if (a.src == a.dst) throw InvariantViolation(at + ": loop");
      if (a.mult <= 0) throw InvariantViolation(at + ": multiplicity must be positive");
      if (is_frozen(a.src) && is_frozen(a.dst)) throw InvariantViolation(at + ": joins two frozen vertices");
      if (i > 0 && arrows_[i - 1].src == a.src && arrows_[i - 1].dst == a.dst)
        throw InvariantViolation(at + ": duplicate pair");
    }
    for (const Arrow& a : arrows_)
      if (multiplicity(a.dst, a.src) > 0)
        throw InvariantViolation("arrows (" + std::to_string(a.src) + "," + std::to_string(a.dst) +
                                 ") and reverse form a 2-cycle");
  }

  int n_mutable() const { return n_; }
  int n_frozen() const { return m_; }
  int n_vertices() const { return n_ + m_; }
  bool is_frozen(Vertex v) const { return v > n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  // Number of arrows src -> dst.
  std::int64_t multiplicity(Vertex src, Vertex dst) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), Arrow{src, dst, 0},
                               [](const Arrow& a, const Arrow& b) {
                                 return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
                               });
    return (it != arrows_.end() && it->src == src && it->dst == dst) ? it->mult : 0;
  }

  // Signed exchange-matrix entry: arrows i -> j minus arrows j -> i.
  std::int64_t b(Vertex i, Vertex j) const { return multiplicity(i, j) - multiplicity(j, i); }

  // The subquiver on the mutable vertices.
  IceQuiver mutable_part() const {
    std::vector<Arrow> kept;
    for (const Arrow& a : arrows_)
      if (!is_frozen(a.src) && !is_frozen(a.dst)) kept.push_back(a);
    return IceQuiver(n_, 0, std::move(kept));
  }

  friend bool operator==(const IceQuiver&, const IceQuiver&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Arrow> arrows_;
};

inline IceQuiver mutate(const IceQuiver& q, Vertex k) {
  if (k < 1 || k > q.n_vertices())
    throw FrozenVertexMutation("vertex " + std::to_string(k) + " out of range");
  if (q.is_frozen(k)) throw FrozenVertexMutation("vertex " + std::to_string(k) + " is frozen");
  std::vector<Arrow> in, out;
  // Signed weights keyed by (min, max) pair; positive means min -> max.
  std::map<std::pair<Vertex, Vertex>, std::int64_t> w;
  auto add = [&](Vertex i, Vertex j, std::int64_t c) {
    auto key = i < j ? std::pair(i, j) : std::pair(j, i);
    auto& slot = w[key];
    slot = detail::checked_add(slot, i < j ? c : -c);
  };
  for (const Arrow& a : q.arrows()) {
    if (a.dst == k) in.push_back(a);
    if (a.src == k) out.push_back(a);
  }
  // (1) a new arrow i -> j for each 2-path i -> k -> j.
  for (const Arrow& a : in)
    for (const Arrow& c : out) add(a.src, c.dst, detail::checked_mul(a.mult, c.mult));
  // (2) reverse arrows at k; other arrows unchanged.
  for (const Arrow& a : q.arrows()) {
    if (a.src == k || a.dst == k)
      add(a.dst, a.src, a.mult);
    else
      add(a.src, a.dst, a.mult);
  }
  // (3) 2-cycles cancel in the signed sum; frozen-frozen arrows are dropped.
  std::vector<Arrow> result;
  for (const auto& [key, c] : w) {
    if (c == 0 || (q.is_frozen(key.first) && q.is_frozen(key.second))) continue;
    if (c > 0)
      result.push_back({key.first, key.second, c});
    else
      result.push_back({key.second, key.first, -c});
  }
  return IceQuiver(q.n_mutable(), q.n_frozen(), std::move(result));
}

inline IceQuiver mutate(const IceQuiver& q, std::span<const Vertex> seq) {
  IceQuiver r = q;
  for (Vertex k : seq) r = mutate(r, k);
  return r;
}

inline IceQuiver framed(const IceQuiver& q) {
  if (q.n_frozen() > 0) throw AlreadyFramed("quiver already has frozen vertices");
  std::vector<Arrow> arrows = q.arrows();
  for (Vertex i = 1; i <= q.n_mutable(); ++i) arrows.push_back({i, q.n_mutable() + i, 1});
  return IceQuiver(q.n_mutable(), q.n_mutable(), std::move(arrows));
}

enum class VertexState { Green, Red };

inline const char* to_string(VertexState s) { return s == VertexState::Green ? "Green" : "Red"; }

inline VertexState vertex_state(const IceQuiver& q, Vertex i) {
  if (i < 1 || q.is_frozen(i) || i > q.n_vertices())
    throw FrozenVertexMutation("vertex " + std::to_string(i) + " is not mutable");
  bool from_frozen = false, to_frozen = false;
  for (const Arrow& a : q.arrows()) {
    if (a.dst == i && q.is_frozen(a.src)) from_frozen = true;
    if (a.src == i && q.is_frozen(a.dst)) to_frozen = true;
  }
  if (from_frozen == to_frozen)
    throw SignIncoherent("vertex " + std::to_string(i) +
                         (from_frozen ? " has arrows both to and from frozen vertices"
                                      : " has no frozen arrows"));
  return from_frozen ? VertexState::Red : VertexState::Green;
}

struct GreenStep {
  Vertex vertex = 0;
  VertexState before = VertexState::Green;
};

struct Verdict {
  enum Kind { ValidGreen, ValidMaximalGreen, InvalidAtStep };
  Kind kind = ValidGreen;
  int step = 0;  // 1-based first offending step for InvalidAtStep

  std::string str() const {
    switch (kind) {
      case ValidGreen: return "ValidGreen";
      case ValidMaximalGreen: return "ValidMaximalGreen";
      default: return "InvalidAtStep " + std::to_string(step);
    }
  }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct GreenSequenceTrace {
  IceQuiver initial;
  std::vector<GreenStep> steps;
  IceQuiver final;
  Verdict verdict;
};

inline bool all_red(const IceQuiver& q) {
  for (Vertex i = 1; i <= q.n_mutable(); ++i)
    if (vertex_state(q, i) != VertexState::Red) return false;
  return true;
}

inline GreenSequenceTrace apply_green_sequence(const IceQuiver& q0, std::span<const Vertex> seq) {
  GreenSequenceTrace t{q0, {}, q0, {}};
  for (std::size_t s = 0; s < seq.size(); ++s) {
    Vertex k = seq[s];
    if (k < 1 || k > t.final.n_mutable())
      throw FrozenVertexMutation("vertex " + std::to_string(k) + " is not mutable");
    VertexState st = vertex_state(t.final, k);
    t.steps.push_back({k, st});
    if (st != VertexState::Green && t.verdict.kind != Verdict::InvalidAtStep)
      t.verdict = {Verdict::InvalidAtStep, static_cast<int>(s + 1)};
    t.final = mutate(t.final, k);
  }
  if (t.verdict.kind != Verdict::InvalidAtStep && all_red(t.final)) t.verdict.kind = Verdict::ValidMaximalGreen;
  return t;
}

inline GreenSequenceTrace apply_green_sequence(const IceQuiver& q0, const std::vector<Vertex>& seq) {
  return apply_green_sequence(q0, std::span<const Vertex>(seq));
}

// Mutable vertices i with a frozen j whose only arrow is a single j -> i.
inline std::vector<Vertex> permanently_red_vertices(const IceQuiver& q) {
  std::vector<int> count(q.n_vertices() + 1, 0);
  std::vector<std::optional<Arrow>> only(q.n_vertices() + 1);
  for (const Arrow& a : q.arrows())
    for (Vertex v : {a.src, a.dst})
      if (q.is_frozen(v)) {
        ++count[v];
        only[v] = a;
      }
  std::vector<Vertex> out;
  for (Vertex j = q.n_mutable() + 1; j <= q.n_vertices(); ++j)
    if (count[j] == 1 && only[j]->src == j && only[j]->mult == 1) out.push_back(only[j]->dst);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mgs
