#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "mgs/quiver.hpp"

namespace mgs {

struct CanonicalForm {
  IceQuiver quiver;
  // relabel[v - 1] is the new label of old mutable vertex v.
  std::vector<Vertex> relabel;
};

namespace detail {

// Individualization-refinement search for the lexicographically least relabeled
// encoding. When m == n frozen vertex n+i follows i; otherwise frozen vertices
// stay where they are and only contribute to vertex colors.
class Canonizer {
 public:
  explicit Canonizer(const IceQuiver& q) : q_(q), n_(q.n_mutable()), m_(q.n_frozen()) {
    lockstep_ = m_ == n_ && n_ > 0;
    b_.assign(n_ * n_, 0);
    f_.assign(n_ * std::max(m_, 1), 0);
    for (const Arrow& a : q.arrows()) {
      if (!q.is_frozen(a.src) && !q.is_frozen(a.dst)) {
        b_[(a.src - 1) * n_ + (a.dst - 1)] = a.mult;
        b_[(a.dst - 1) * n_ + (a.src - 1)] = -a.mult;
      } else if (q.is_frozen(a.dst)) {
        f_[(a.src - 1) * m_ + (a.dst - n_ - 1)] = a.mult;
      } else {
        f_[(a.dst - 1) * m_ + (a.src - n_ - 1)] = -a.mult;
      }
    }
  }

  CanonicalForm run() {
    std::vector<int> colors(n_, 0);
    if (!lockstep_) {
      // Frozen columns are fixed, so each row is a labeling-invariant color.
      std::vector<std::vector<std::int64_t>> rows(n_);
      for (int v = 0; v < n_; ++v) rows[v].assign(f_.begin() + v * m_, f_.begin() + v * m_ + m_);
      colors = rank(rows);
    }
    refine(colors);
    std::vector<int> prefix;
    search(colors, prefix);
    std::vector<Vertex> relabel(n_);
    for (int v = 0; v < n_; ++v) relabel[v] = best_pos_[v] + 1;
    return {apply(relabel), relabel};
  }

 private:
  template <class Key>
  static std::vector<int> rank(const std::vector<Key>& keys) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
  }

  std::int64_t rel_f(int u, int v) const { return lockstep_ ? f_[u * m_ + v] : 0; }

  void refine(std::vector<int>& colors) const {
    using Entry = std::tuple<int, std::int64_t, std::int64_t, std::int64_t>;
    int count = *std::max_element(colors.begin(), colors.end()) + 1;
    while (true) {
      std::vector<std::pair<int, std::vector<Entry>>> keys(n_);
      for (int v = 0; v < n_; ++v) {
        keys[v].first = colors[v];
        for (int u = 0; u < n_; ++u) {
          if (u == v) continue;
          Entry e{colors[u], b_[v * n_ + u], rel_f(v, u), rel_f(u, v)};
          if (std::get<1>(e) || std::get<2>(e) || std::get<3>(e)) keys[v].second.push_back(e);
        }
        if (lockstep_) keys[v].second.push_back({-1, f_[v * m_ + v], 0, 0});
        std::sort(keys[v].second.begin(), keys[v].second.end());
      }
      colors = rank(keys);
      int next = *std::max_element(colors.begin(), colors.end()) + 1;
      if (next == count) return;
      count = next;
    }
  }

  std::vector<std::int64_t> encode(const std::vector<int>& inv) const {
    std::vector<std::int64_t> code;
    code.reserve(n_ * n_ + n_ * m_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) code.push_back(b_[inv[i] * n_ + inv[j]]);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m_; ++j) code.push_back(f_[inv[i] * m_ + (lockstep_ ? inv[j] : j)]);
    return code;
  }

  // Union of orbits of v under stored automorphisms fixing the prefix pointwise.
  bool in_orbit_of_tried(int v, const std::vector<int>& tried, const std::vector<int>& prefix) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) parent[find(x)] = find(g[x]);
    }
    for (int t : tried)
      if (find(t) == find(v)) return true;
    return false;
  }

  void search(const std::vector<int>& colors, std::vector<int>& prefix) {
    // Target cell: the smallest color class with more than one member.
    std::vector<int> size(n_ + 1, 0);
    for (int c : colors) ++size[c];
    int target = -1;
    for (int c = 0; c < n_ && target < 0; ++c)
      if (size[c] > 1) target = c;
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<int> tried;
    for (int v = 0; v < n_; ++v) {
      if (colors[v] != target) continue;
      if (in_orbit_of_tried(v, tried, prefix)) continue;
      std::vector<int> child(n_);
      for (int u = 0; u < n_; ++u) child[u] = 2 * colors[u] + ((colors[u] == target && u != v) ? 1 : 0);
      child = rank(child);
      refine(child);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
      tried.push_back(v);
    }
  }

  void leaf(const std::vector<int>& pos) {
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v) inv[pos[v]] = v;
    std::vector<std::int64_t> code = encode(inv);
    if (best_pos_.empty() || code < best_code_) {
      best_code_ = std::move(code);
      best_pos_ = pos;
    } else if (code == best_code_) {
      // Same encoding: best^-1 o pos is an automorphism.
      std::vector<int> best_inv(n_), g(n_);
      for (int v = 0; v < n_; ++v) best_inv[best_pos_[v]] = v;
      for (int v = 0; v < n_; ++v) g[v] = best_inv[pos[v]];
      autos_.push_back(std::move(g));
    }
  }

  IceQuiver apply(const std::vector<Vertex>& relabel) const {
    auto map = [&](Vertex v) -> Vertex {
      if (v <= n_) return relabel[v - 1];
      return lockstep_ ? n_ + relabel[v - n_ - 1] : v;
    };
    std::vector<Arrow> arrows;
    for (const Arrow& a : q_.arrows()) arrows.push_back({map(a.src), map(a.dst), a.mult});
    return IceQuiver(n_, m_, std::move(arrows));
  }

  const IceQuiver& q_;
  int n_, m_;
  bool lockstep_ = false;
  std::vector<std::int64_t> b_, f_;
  std::vector<std::int64_t> best_code_;
  std::vector<int> best_pos_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const IceQuiver& q) {
  if (q.n_mutable() == 0) return {q, {}};
  return detail::Canonizer(q).run();
}

}  // namespace mgs
