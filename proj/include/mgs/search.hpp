#pragma once

// Mutation-class enumeration and breadth-first maximal green sequence search.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include "mgs/canonical.hpp"
#include "mgs/error.hpp"
#include "mgs/quiver.hpp"
#include "mgs/seeds.hpp"

namespace mgs {

namespace detail {

// Runs f(i) for i in [0, count) on `jobs` threads.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Breadth-first closure under mutation, one canonical representative per class member,
// sorted by canonical encoding.
inline std::vector<IceQuiver> enumerate_class(const IceQuiver& seed_quiver, std::size_t cap = 100000, int jobs = 1) {
  if (seed_quiver.n_frozen() > 0) throw AlreadyFramed("enumerate_class takes a quiver without frozen vertices");
  std::set<std::vector<Arrow>> seen;
  std::vector<IceQuiver> layer{canonical_form(seed_quiver).quiver};
  seen.insert(layer[0].arrows());
  const int n = seed_quiver.n_mutable();
  while (!layer.empty()) {
    std::vector<IceQuiver> found(layer.size() * n);
    detail::parallel_for(layer.size(), jobs, [&](std::size_t i) {
      for (Vertex k = 1; k <= n; ++k) found[i * n + (k - 1)] = canonical_form(mutate(layer[i], k)).quiver;
    });
    std::vector<IceQuiver> next;
    for (auto& q : found)
      if (seen.insert(q.arrows()).second) {
        if (seen.size() > cap) throw ClassSizeCapExceeded("mutation class exceeds " + std::to_string(cap));
        next.push_back(std::move(q));
      }
    layer = std::move(next);
  }
  std::vector<IceQuiver> out;
  for (const auto& arrows : seen) out.emplace_back(n, 0, arrows);
  return out;
}

struct SearchOptions {
  int max_len = 0;                     // 0 means 4 * rank
  bool prune_permanently_red = true;   // skip vertices a frozen vertex pins red
  std::size_t max_states = 20000000;   // memory guard; the search stops at the last complete length
};

struct SearchResult {
  std::optional<std::vector<Vertex>> mgs;
  int searched_to = 0;        // no maximal green sequence of length <= searched_to exists, unless found
  std::size_t states = 0;     // distinct states stored on both sides
  bool complete() const { return mgs.has_value(); }
};

namespace detail {

// Framed quiver as the n x 2n block of its exchange matrix (rows mutable vertices).
class DenseFramed {
 public:
  using Entry = std::int16_t;

  DenseFramed(int n, const Entry* data) : n_(n), m_(data, data + static_cast<std::size_t>(n) * 2 * n) {}

  // frozen_sign +1 gives the framed quiver i -> i', -1 the coframed quiver i' -> i.
  DenseFramed(const IceQuiver& q, int frozen_sign) : n_(q.n_mutable()), m_(static_cast<std::size_t>(n_) * 2 * n_, 0) {
    const IceQuiver inner = q.mutable_part();
    for (const Arrow& a : inner.arrows()) {
      at(a.src, a.dst) = narrow(a.mult);
      at(a.dst, a.src) = narrow(-a.mult);
    }
    for (Vertex i = 1; i <= n_; ++i) at(i, n_ + i) = static_cast<Entry>(frozen_sign);
  }

  int n() const { return n_; }
  Entry& at(Vertex i, Vertex j) { return m_[(i - 1) * 2 * n_ + (j - 1)]; }
  Entry at(Vertex i, Vertex j) const { return m_[(i - 1) * 2 * n_ + (j - 1)]; }
  const std::vector<Entry>& data() const { return m_; }

  bool green(Vertex i) const {
    for (Vertex j = n_ + 1; j <= 2 * n_; ++j)
      if (at(i, j) != 0) return at(i, j) > 0;
    throw SignIncoherent("vertex " + std::to_string(i) + " has no frozen arrows");
  }

  // Mutable vertex pinned red by a frozen vertex whose only arrow is a single one into it.
  bool permanently_red(Vertex i) const {
    for (Vertex j = n_ + 1; j <= 2 * n_; ++j) {
      if (at(i, j) != -1) continue;
      bool only = true;
      for (Vertex r = 1; r <= n_ && only; ++r)
        if (r != i && at(r, j) != 0) only = false;
      if (only) return true;
    }
    return false;
  }

  void mutate(Vertex k) {
    for (Vertex i = 1; i <= n_; ++i) {
      if (i == k) continue;
      int bik = at(i, k);
      if (bik == 0) continue;
      for (Vertex j = 1; j <= 2 * n_; ++j) {
        if (j == k) continue;
        int bkj = at(k, j);
        if (bik > 0 && bkj > 0) at(i, j) = narrow(at(i, j) + bik * bkj);
        else if (bik < 0 && bkj < 0) at(i, j) = narrow(at(i, j) - bik * bkj);
      }
    }
    for (Vertex j = 1; j <= 2 * n_; ++j) at(k, j) = static_cast<Entry>(-at(k, j));
    for (Vertex i = 1; i <= n_; ++i)
      if (i != k) at(i, k) = static_cast<Entry>(-at(i, k));
  }

  // Relabels mutable vertices so rows are sorted by their frozen entries; frozen vertices stay.
  // Rows are distinct by sign coherence, so the result identifies the state up to such
  // relabelings. rank[v - 1] is the new label of v.
  DenseFramed canonical(std::vector<Vertex>* rank) const {
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), 1);
    auto row = [&](Vertex v) { return m_.begin() + (v - 1) * 2 * n_ + n_; };
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return std::lexicographical_compare(row(a), row(a) + n_, row(b), row(b) + n_);
    });
    rank->assign(n_, 0);
    for (int p = 0; p < n_; ++p) (*rank)[order[p] - 1] = p + 1;
    DenseFramed out = *this;
    for (Vertex i = 1; i <= n_; ++i)
      for (Vertex j = 1; j <= 2 * n_; ++j) {
        Vertex jj = j <= n_ ? (*rank)[j - 1] : j;
        out.at((*rank)[i - 1], jj) = at(i, j);
      }
    return out;
  }

 private:
  static Entry narrow(std::int64_t v) {
    if (v > INT16_MAX || v < INT16_MIN) throw MultiplicityOverflow("search entry exceeds 16 bits");
    return static_cast<Entry>(v);
  }

  int n_;
  std::vector<Entry> m_;
};

// Visited states stored back to back; the hash set holds indices into the arena.
class StateArena {
 public:
  explicit StateArena(std::size_t width) : width_(width), set_(64, Hash{this}, Eq{this}) {}

  // Index of the stored state, and whether it was new.
  std::pair<std::uint32_t, bool> insert(const std::vector<DenseFramed::Entry>& key) {
    std::uint32_t id = static_cast<std::uint32_t>(size());
    data_.insert(data_.end(), key.begin(), key.end());
    auto [it, fresh] = set_.insert(id);
    if (!fresh) data_.resize(data_.size() - width_);
    return {*it, fresh};
  }

  // Index of an equal stored state, if any.
  std::optional<std::uint32_t> find(const std::vector<DenseFramed::Entry>& key) const {
    probe_ = &key;
    auto it = set_.find(kProbe);
    probe_ = nullptr;
    if (it == set_.end()) return std::nullopt;
    return *it;
  }

  const DenseFramed::Entry* state(std::uint32_t id) const { return data_.data() + std::size_t(id) * width_; }
  std::size_t size() const { return data_.size() / width_; }

 private:
  static constexpr std::uint32_t kProbe = UINT32_MAX;

  std::string_view view(std::uint32_t id) const {
    const DenseFramed::Entry* p = id == kProbe ? probe_->data() : state(id);
    return {reinterpret_cast<const char*>(p), width_ * sizeof(DenseFramed::Entry)};
  }
  struct Hash {
    const StateArena* a;
    std::size_t operator()(std::uint32_t id) const { return std::hash<std::string_view>{}(a->view(id)); }
  };
  struct Eq {
    const StateArena* a;
    bool operator()(std::uint32_t x, std::uint32_t y) const { return a->view(x) == a->view(y); }
  };

  std::size_t width_;
  std::vector<DenseFramed::Entry> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> set_;
  mutable const std::vector<DenseFramed::Entry>* probe_ = nullptr;
};

// One direction of the search. Forward steps mutate green vertices starting from the
// framed quiver; backward steps mutate red vertices starting from the coframed quiver.
// States are stored in canonical labeling; `via` is a vertex in the parent's labeling.
struct SearchSide {
  SearchSide(const DenseFramed& root, bool forward) : root(root), forward(forward), arena(root.data().size()) {
    std::vector<Vertex> rank;
    arena.insert(root.canonical(&rank).data());
    parent.push_back(0);
    via.push_back(0);
    layer.push_back(0);
  }

  // Sequence in root labels leading to `id`, and the map from its canonical labels to actual labels.
  std::pair<std::vector<Vertex>, std::vector<Vertex>> replay(std::uint32_t id) const {
    std::vector<Vertex> steps;
    for (; id != 0; id = parent[id]) steps.push_back(via[id]);
    std::reverse(steps.begin(), steps.end());
    DenseFramed cur = root;
    std::vector<Vertex> rank;
    auto inverse = [&] {
      cur.canonical(&rank);
      std::vector<Vertex> actual(rank.size());
      for (std::size_t v = 0; v < rank.size(); ++v) actual[rank[v] - 1] = static_cast<Vertex>(v + 1);
      return actual;
    };
    std::vector<Vertex> actual = inverse();
    std::vector<Vertex> seq;
    for (Vertex k : steps) {
      seq.push_back(actual[k - 1]);
      cur.mutate(seq.back());
      actual = inverse();
    }
    return {seq, actual};
  }

  DenseFramed root;
  bool forward;
  StateArena arena;
  std::vector<std::uint32_t> parent;
  std::vector<Vertex> via;
  std::vector<std::uint32_t> layer;
  int depth = 0;
};

}  // namespace detail

// Shortest maximal green sequence of length <= max_len, by bidirectional breadth-first
// search. Ties go to the first meeting found in vertex order, so results are deterministic.
inline SearchResult search_mgs(const IceQuiver& q, const SearchOptions& opt = {}) {
  if (q.n_frozen() > 0) throw AlreadyFramed("search_mgs takes an unframed quiver");
  const int n = q.n_mutable();
  const int max_len = opt.max_len > 0 ? opt.max_len : 4 * n;
  SearchResult res;
  if (n == 0) {
    res.mgs = std::vector<Vertex>{};
    return res;
  }
  detail::SearchSide fwd(detail::DenseFramed(q, 1), true);
  detail::SearchSide bwd(detail::DenseFramed(q, -1), false);

  // Joins a forward state and a backward state that agree up to relabeling.
  auto join = [&](std::uint32_t f, std::uint32_t b) {
    auto [fseq, fmap] = fwd.replay(f);
    auto [bseq, bmap] = bwd.replay(b);
    // Backward actual label -> canonical label -> forward actual label.
    std::vector<Vertex> brank(n);
    for (int c = 0; c < n; ++c) brank[bmap[c] - 1] = c + 1;
    std::vector<Vertex> seq = fseq;
    for (auto it = bseq.rbegin(); it != bseq.rend(); ++it) seq.push_back(fmap[brank[*it - 1] - 1]);
    if (apply_green_sequence(framed(q), seq).verdict.kind != Verdict::ValidMaximalGreen)
      throw VerificationFailure("search produced a sequence that does not verify");
    return seq;
  };

  while (!res.mgs && res.searched_to < max_len) {
    bool forward = fwd.layer.size() <= bwd.layer.size();
    detail::SearchSide& side = forward ? fwd : bwd;
    detail::SearchSide& other = forward ? bwd : fwd;
    if (side.layer.empty()) {
      res.searched_to = max_len;
      break;
    }
    std::vector<std::uint32_t> next;
    std::vector<Vertex> rank;
    for (std::uint32_t id : side.layer) {
      detail::DenseFramed state(n, side.arena.state(id));
      for (Vertex k = 1; k <= n && !res.mgs; ++k) {
        if (state.green(k) != forward) continue;
        if (forward && opt.prune_permanently_red && state.permanently_red(k)) continue;
        detail::DenseFramed child = state;
        child.mutate(k);
        auto key = child.canonical(&rank);
        auto [cid, fresh] = side.arena.insert(key.data());
        if (!fresh) continue;
        side.parent.push_back(id);
        side.via.push_back(k);
        next.push_back(cid);
        if (auto hit = other.arena.find(key.data()))
          res.mgs = forward ? join(cid, *hit) : join(*hit, cid);
      }
      if (res.mgs) break;
      if (fwd.arena.size() + bwd.arena.size() > opt.max_states) {
        res.states = fwd.arena.size() + bwd.arena.size();
        return res;
      }
    }
    side.layer = std::move(next);
    ++side.depth;
    res.searched_to = fwd.depth + bwd.depth;
  }
  if (res.mgs) res.searched_to = static_cast<int>(res.mgs->size());
  res.states = fwd.arena.size() + bwd.arena.size();
  return res;
}

namespace detail {

inline bool is_mgs_dense(const IceQuiver& q, const std::vector<Vertex>& seq) {
  DenseFramed state(q, 1);
  for (Vertex k : seq) {
    if (k < 1 || k > q.n_mutable() || !state.green(k)) return false;
    state.mutate(k);
  }
  for (Vertex i = 1; i <= q.n_mutable(); ++i)
    if (state.green(i)) return false;
  return true;
}

}  // namespace detail

// The default search bound: 4 * rank, except the fixed bound 20 reported for x7.
inline int default_max_len(const std::string& seed_name, int rank) { return seed_name == "x7" ? 20 : 4 * rank; }

struct CatalogMember {
  IceQuiver quiver;
  std::optional<std::vector<Vertex>> mgs;
  int searched_to = 0;     // search bound covered; 0 when the certificate came from rotation
  std::size_t states = 0;
  std::string source;      // "search", "rotation" or "none"
};

struct Catalog {
  std::string seed;
  std::vector<CatalogMember> members;
  std::size_t certified() const {
    return static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [](const CatalogMember& m) { return m.mgs.has_value(); }));
  }
};

struct CatalogOptions {
  int max_len = 0;                  // 0 means default_max_len
  int jobs = 1;
  bool rotate = true;               // derive certificates for neighbours by rotating found ones
  std::size_t max_states = 20000000;
  std::size_t class_cap = 100000;
};

// Enumerates the class of a registered seed and certifies every member. Members are searched
// in canonical order in fixed batches, so the result does not depend on `jobs`. A found
// sequence (s1, ..., sL) for Q also yields (s2, ..., sL, x) for mu_s1(Q); such rotated
// certificates fill in members that have none yet. Every certificate is verified.
inline Catalog build_catalog(const std::string& seed_name, const CatalogOptions& opt = {}) {
  const IceQuiver& s = seed(seed_name);
  Catalog cat{seed_name, {}};
  auto reps = enumerate_class(s, opt.class_cap, opt.jobs);
  std::map<std::vector<Arrow>, std::size_t> index;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    index[reps[i].arrows()] = i;
    cat.members.push_back({reps[i], std::nullopt, 0, 0, "none"});
  }
  const int n = s.n_mutable();
  SearchOptions so;
  so.max_len = opt.max_len > 0 ? opt.max_len : default_max_len(seed_name, n);
  so.max_states = opt.max_states;

  auto rotate_from = [&](std::size_t start) {
    IceQuiver q = cat.members[start].quiver;
    std::vector<Vertex> seq = *cat.members[start].mgs;
    for (std::size_t r = 1; r < seq.size(); ++r) {
      IceQuiver next = mutate(q, seq[0]);
      std::vector<Vertex> rest(seq.begin() + 1, seq.end());
      rest.push_back(0);
      bool ok = false;
      for (Vertex x = 1; x <= n && !ok; ++x) {
        rest.back() = x;
        ok = detail::is_mgs_dense(next, rest);
      }
      if (!ok) return;
      q = next;
      seq = rest;
      auto cf = canonical_form(q);
      auto& m = cat.members[index.at(cf.quiver.arrows())];
      if (m.mgs) continue;
      std::vector<Vertex> mapped;
      for (Vertex v : seq) mapped.push_back(cf.relabel[v - 1]);
      if (!detail::is_mgs_dense(m.quiver, mapped)) continue;
      m.mgs = std::move(mapped);
      m.source = "rotation";
    }
  };

  constexpr std::size_t kBatch = 8;
  std::size_t cursor = 0;
  while (true) {
    std::vector<std::size_t> batch;
    for (; cursor < cat.members.size() && batch.size() < kBatch; ++cursor)
      if (!cat.members[cursor].mgs && cat.members[cursor].source == "none") batch.push_back(cursor);
    if (batch.empty()) break;
    std::vector<SearchResult> found(batch.size());
    detail::parallel_for(batch.size(), opt.jobs,
                         [&](std::size_t b) { found[b] = search_mgs(cat.members[batch[b]].quiver, so); });
    for (std::size_t b = 0; b < batch.size(); ++b) {
      auto& m = cat.members[batch[b]];
      m.searched_to = found[b].searched_to;
      m.states = found[b].states;
      if (m.mgs) continue;  // filled by rotation from an earlier member of this batch
      if (!found[b].mgs) continue;
      m.mgs = found[b].mgs;
      m.source = "search";
      if (opt.rotate) rotate_from(batch[b]);
    }
  }

  for (const auto& m : cat.members)
    if (m.mgs && apply_green_sequence(framed(m.quiver), *m.mgs).verdict.kind != Verdict::ValidMaximalGreen)
      throw VerificationFailure("catalog certificate failed verification");
  if (seed_name != "x7" && cat.certified() != cat.members.size())
    throw IncompleteCatalog(seed_name + ": " + std::to_string(cat.members.size() - cat.certified()) +
                            " members without a certificate within length " + std::to_string(so.max_len));
  return cat;
}

}  // namespace mgs

