#pragma once

// Randomized and exhaustive property suites shared by the unit tests and the acceptance run.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mgs/canonical.hpp"
#include "mgs/quiver.hpp"
#include "mgs/seeds.hpp"
#include "mgs/surface.hpp"
#include "oracle.hpp"
#include "surfaces.hpp"

namespace properties {

using mgs::IceQuiver;
using mgs::Vertex;

struct Tally {
  long cases = 0;
  long violations = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (violations++ == 0) first = what;
  }
};

// Mutating twice at the same vertex is the identity, and agrees with the matrix rule.
inline Tally involution(long cases, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  Tally t;
  while (t.cases < cases) {
    int n = 1 + static_cast<int>(rng() % 9), m = static_cast<int>(rng() % 4);
    IceQuiver x = oracle::random_quiver(rng, n, m, 3, 0.4);
    Vertex k = 1 + static_cast<Vertex>(rng() % n);
    IceQuiver y = mutate(x, k);
    bool ok = mutate(y, k) == x && y == oracle::from_matrix(oracle::matrix_mutate(oracle::to_matrix(x), k), n, m);
    t.check(ok, "involution at vertex " + std::to_string(k));
  }
  return t;
}

// Mutation never creates loops, 2-cycles or arrows between frozen vertices.
inline Tally closure(long cases, std::uint64_t seed = 2) {
  std::mt19937_64 rng(seed);
  Tally t;
  while (t.cases < cases) {
    int n = 2 + static_cast<int>(rng() % 8), m = static_cast<int>(rng() % 4);
    IceQuiver x = oracle::random_quiver(rng, n, m, 2, 0.5);
    for (int step = 0; step < 5 && t.cases < cases; ++step) {
      x = mutate(x, 1 + static_cast<Vertex>(rng() % n));
      t.check(oracle::well_formed(x), "closure after random walk");
    }
  }
  return t;
}

// Every vertex of every quiver reached from a framed quiver is exactly one of red or green.
inline Tally sign_coherence(long cases, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  Tally t;
  while (t.cases < cases) {
    int n = 2 + static_cast<int>(rng() % 7);
    IceQuiver x = mgs::framed(oracle::random_quiver(rng, n, 0, 2, 0.4));
    for (int step = 0; step < 8 && t.cases < cases; ++step) {
      bool ok = true;
      for (Vertex i = 1; i <= n && ok; ++i) {
        bool from = false, to = false;
        for (const auto& a : x.arrows()) {
          if (a.dst == i && x.is_frozen(a.src)) from = true;
          if (a.src == i && x.is_frozen(a.dst)) to = true;
        }
        ok = from != to;
      }
      t.check(ok, "sign incoherent vertex");
      std::vector<Vertex> green;
      for (Vertex i = 1; i <= n; ++i)
        if (mgs::vertex_state(x, i) == mgs::VertexState::Green) green.push_back(i);
      if (green.empty()) break;
      x = mutate(x, green[rng() % green.size()]);
    }
  }
  return t;
}

namespace detail {

using Matrix = std::vector<int>;

inline Matrix dense(const IceQuiver& q) {
  int n = q.n_mutable();
  Matrix b(n * n, 0);
  for (const auto& a : q.arrows()) b[(a.src - 1) * n + (a.dst - 1)] = static_cast<int>(a.mult);
  return b;
}

// Exhaustive search for a permutation mapping a onto b.
inline bool brute_isomorphic(const IceQuiver& a, const IceQuiver& b) {
  int n = a.n_mutable();
  if (n != b.n_mutable() || a.arrows().size() != b.arrows().size()) return false;
  Matrix x = dense(a), y = dense(b);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (int i = 0; i < n && same; ++i)
      for (int j = 0; j < n && same; ++j) same = x[i * n + j] == y[p[i] * n + p[j]];
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace detail

// Canonical forms agree exactly when a brute-force permutation search finds an isomorphism.
// Pairs are a relabeled copy, a copy with one arrow changed, or two mutation-class siblings.
inline Tally canonical_vs_brute_force(long cases, std::uint64_t seed = 4) {
  std::mt19937_64 rng(seed);
  Tally t;
  while (t.cases < cases) {
    int n = 2 + static_cast<int>(rng() % 6);
    IceQuiver x = oracle::random_quiver(rng, n, 0, 2, 0.45);
    IceQuiver y = x;
    switch (rng() % 3) {
      case 0: y = oracle::permute(x, detail::random_perm(rng, n)); break;
      case 1: {
        auto arrows = x.arrows();
        if (!arrows.empty()) {
          auto& a = arrows[rng() % arrows.size()];
          std::swap(a.src, a.dst);
        }
        y = oracle::permute(IceQuiver(n, 0, arrows), detail::random_perm(rng, n));
        break;
      }
      default: y = mutate(mutate(x, 1 + rng() % n), 1 + rng() % n);
    }
    bool same = mgs::canonical_form(x).quiver == mgs::canonical_form(y).quiver;
    t.check(same == detail::brute_isomorphic(x, y), "canonical form disagrees with brute force, n=" + std::to_string(n));
  }
  return t;
}

// Every labeled quiver reachable by mutation from `seed`.
inline std::vector<IceQuiver> labeled_class(const IceQuiver& seed) {
  std::set<std::vector<mgs::Arrow>> seen{seed.arrows()};
  std::vector<IceQuiver> out{seed}, stack{seed};
  while (!stack.empty()) {
    IceQuiver q = stack.back();
    stack.pop_back();
    for (Vertex k = 1; k <= q.n_mutable(); ++k) {
      IceQuiver r = mutate(q, k);
      if (seen.insert(r.arrows()).second) {
        out.push_back(r);
        stack.push_back(r);
      }
    }
  }
  return out;
}

// Once a vertex is flagged permanently red, no green continuation mutates it. Exhaustive over
// every green sequence of every labeled quiver of the given classes; each (flag, later step)
// pair on every path counts as a case.
inline Tally permanently_red_exhaustive(const std::vector<IceQuiver>& seeds) {
  Tally t;
  std::function<void(const IceQuiver&, std::vector<Vertex>&, int)> walk = [&](const IceQuiver& q,
                                                                              std::vector<Vertex>& flagged, int depth) {
    if (depth > 64) {
      t.check(false, "green sequence longer than 64 in a finite type");
      return;
    }
    auto now = mgs::permanently_red_vertices(q);
    std::size_t keep = flagged.size();
    flagged.insert(flagged.end(), now.begin(), now.end());
    for (Vertex k = 1; k <= q.n_mutable(); ++k) {
      if (mgs::vertex_state(q, k) != mgs::VertexState::Green) continue;
      for (Vertex f : flagged) t.check(f != k, "flagged vertex " + std::to_string(k) + " mutated");
      walk(mutate(q, k), flagged, depth + 1);
    }
    flagged.resize(keep);
  };
  for (const auto& s : seeds)
    for (const auto& q : labeled_class(s)) {
      std::vector<Vertex> flagged;
      walk(mgs::framed(q), flagged, 0);
    }
  return t;
}

inline Tally permanently_red_a2_a3() {
  return permanently_red_exhaustive({IceQuiver(2, 0, {{1, 2, 1}}), IceQuiver(3, 0, {{1, 2, 1}, {2, 3, 1}})});
}

// The same property along random green walks on larger mutation-finite quivers.
inline Tally permanently_red_random(long cases, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> names{"c4", "c5", "e6", "x6", "e6t", "e7"};
  Tally t;
  while (t.cases < cases) {
    IceQuiver q = mgs::framed(mgs::seed(names[rng() % names.size()]));
    for (int i = 0; i < 5; ++i) q = mutate(q, 1 + rng() % q.n_mutable());
    std::vector<Vertex> flagged;
    for (int step = 0; step < 30 && t.cases < cases; ++step) {
      auto now = mgs::permanently_red_vertices(q);
      flagged.insert(flagged.end(), now.begin(), now.end());
      std::vector<Vertex> green;
      for (Vertex i = 1; i <= q.n_mutable(); ++i)
        if (mgs::vertex_state(q, i) == mgs::VertexState::Green) green.push_back(i);
      if (green.empty()) break;
      Vertex k = green[rng() % green.size()];
      t.check(std::find(flagged.begin(), flagged.end(), k) == flagged.end(), "flagged vertex mutated");
      q = mutate(q, k);
    }
  }
  return t;
}

// Flipping an arc twice restores the triangulation.
inline Tally flip_involution(long cases, std::uint64_t seed = 6) {
  std::mt19937_64 rng(seed);
  Tally t;
  struct Shape {
    int genus, punctures;
  };
  const std::vector<Shape> shapes{{0, 4}, {0, 5}, {0, 7}, {1, 2}, {1, 4}, {2, 2}, {2, 5}};
  while (t.cases < cases) {
    Shape s = shapes[rng() % shapes.size()];
    auto tri = build::random_closed(rng, s.genus, s.punctures, 30);
    for (int i = 0; i < 50 && t.cases < cases; ++i) {
      int a = 1 + static_cast<int>(rng() % tri.n_arcs);
      auto f = mgs::flip(tri, a);
      t.check(mgs::flip(f, a) == tri, "flip involution on arc " + std::to_string(a));
      tri = f;
    }
  }
  return t;
}

}  // namespace properties
