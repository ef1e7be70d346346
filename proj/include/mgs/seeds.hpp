#pragma once

// Named seed quivers: rank 2, oriented cycles and the exceptional mutation-finite types.

#include <map>
#include <string>
#include <vector>

#include "mgs/error.hpp"
#include "mgs/quiver.hpp"

namespace mgs {

namespace detail {

// Arms hang off `center`; each arm is a path oriented away from the center.
inline void add_arms(std::vector<Arrow>& arrows, Vertex center, const std::vector<int>& arm_lengths, Vertex& next) {
  for (int len : arm_lengths) {
    Vertex prev = center;
    for (int s = 0; s < len; ++s) {
      Vertex v = ++next;
      arrows.push_back({prev, v, 1});
      prev = v;
    }
  }
}

// Star-shaped tree with the given arm lengths.
inline IceQuiver star(const std::vector<int>& arms) {
  std::vector<Arrow> arrows;
  Vertex next = 1;
  add_arms(arrows, 1, arms, next);
  return IceQuiver(next, 0, arrows);
}

// Elliptic type: double arrow 1 => 2, and each arm root r in an oriented triangle 1 -> 2 -> r -> 1.
inline IceQuiver elliptic(const std::vector<int>& arms) {
  std::vector<Arrow> arrows{{1, 2, 2}};
  Vertex next = 2;
  for (int len : arms) {
    Vertex r = ++next;
    arrows.push_back({2, r, 1});
    arrows.push_back({r, 1, 1});
    add_arms(arrows, r, {len - 1}, next);
  }
  return IceQuiver(next, 0, arrows);
}

// Center 1 with k blocks a => b, b -> 1, 1 -> a, plus optional pendant vertices.
inline IceQuiver x_type(int blocks, int pendants) {
  std::vector<Arrow> arrows;
  Vertex next = 1;
  for (int i = 0; i < blocks; ++i) {
    Vertex a = ++next, b = ++next;
    arrows.push_back({a, b, 2});
    arrows.push_back({b, 1, 1});
    arrows.push_back({1, a, 1});
  }
  for (int i = 0; i < pendants; ++i) arrows.push_back({1, ++next, 1});
  return IceQuiver(next, 0, arrows);
}

}  // namespace detail

// Oriented n-cycle with arrows i -> i-1 and 1 -> n.
inline IceQuiver oriented_cycle(int n) {
  std::vector<Arrow> arrows;
  for (Vertex i = 2; i <= n; ++i) arrows.push_back({i, i - 1, 1});
  arrows.push_back({1, n, 1});
  return IceQuiver(n, 0, arrows);
}

// (n, n-1, ..., 1, 3, 4, ..., n): maximal green on oriented_cycle(n), interchanging 1 and 2.
inline std::vector<Vertex> cycle_sequence(int n) {
  std::vector<Vertex> s;
  for (Vertex i = n; i >= 1; --i) s.push_back(i);
  for (Vertex i = 3; i <= n; ++i) s.push_back(i);
  return s;
}

// Exceptional seeds use the standard shapes: E_n as the tree T(1,2,n-4), affine E as
// T(2,2,2), T(1,3,3), T(1,2,5), elliptic E with a doubled center carrying the same arms,
// and X6/X7 as double-arrow blocks around a center.
inline const std::map<std::string, IceQuiver>& seed_registry() {
  static const std::map<std::string, IceQuiver> seeds = [] {
    std::map<std::string, IceQuiver> s;
    s.emplace("a2", IceQuiver(2, 0, {{1, 2, 1}}));
    for (int n = 3; n <= 8; ++n) s.emplace("c" + std::to_string(n), oriented_cycle(n));
    s.emplace("e6", detail::star({1, 2, 2}));
    s.emplace("e7", detail::star({1, 2, 3}));
    s.emplace("e8", detail::star({1, 2, 4}));
    s.emplace("e6t", detail::star({2, 2, 2}));
    s.emplace("e7t", detail::star({1, 3, 3}));
    s.emplace("e8t", detail::star({1, 2, 5}));
    s.emplace("e6e", detail::elliptic({2, 2, 2}));
    s.emplace("e7e", detail::elliptic({1, 3, 3}));
    s.emplace("e8e", detail::elliptic({1, 2, 5}));
    s.emplace("x6", detail::x_type(2, 1));
    s.emplace("x7", detail::x_type(3, 0));
    return s;
  }();
  return seeds;
}

// The exceptional seeds in catalog order.
inline const std::vector<std::string>& exceptional_seeds() {
  static const std::vector<std::string> names{"e6", "e7", "e8", "e6t", "e7t", "e8t",
                                              "e6e", "e7e", "e8e", "x6", "x7"};
  return names;
}

inline const IceQuiver& seed(const std::string& name) {
  const auto& r = seed_registry();
  auto it = r.find(name);
  if (it == r.end()) throw UnknownSeed("unknown seed '" + name + "'");
  return it->second;
}

}  // namespace mgs
