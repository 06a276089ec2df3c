#include "elimdeg/oracle.hpp"

#include <functional>
#include <unordered_map>

#include "elimdeg/errors.hpp"

namespace elimdeg {

namespace {

void guard_size(const Graph& g, const OracleConfig& cfg) {
  if (cfg.max_vertices < 1) throw InputError("max_vertices must be at least 1");
  if (g.size() > cfg.max_vertices)
    throw ResourceError("instance has " + std::to_string(g.size()) + " vertices, oracle guard is " +
                        std::to_string(cfg.max_vertices));
}

// Bounded form of the ed_d recursion: le(X, k) iff ed_d(g[X]) <= k. The memo
// keeps, per connected vertex set, an interval known to contain ed_d.
class BoundedSearch {
 public:
  BoundedSearch(const Graph& g, int d, const OracleConfig& cfg) : g_(g), d_(d), cfg_(cfg) {}

  bool le(const VertexSet& x, int k) {
    for (auto& c : component_sets(g_, x))
      if (!le_connected(c, k)) return false;
    return true;
  }

  bool le_connected(const VertexSet& c, int k) {
    Interval* iv = nullptr;
    Interval scratch;
    if (cfg_.memoize) {
      if (memo_.size() >= static_cast<std::size_t>(cfg_.max_states))
        throw ResourceError("oracle memo exceeded " + std::to_string(cfg_.max_states) + " states");
      iv = &memo_[c];
    } else {
      iv = &scratch;
    }
    if (iv->hi <= k) return true;
    if (iv->lo > k) return false;
    if (max_degree_within(g_, c) <= d_) {
      iv->lo = iv->hi = 0;
      return true;
    }
    if (k == 0) {
      iv->lo = std::max(iv->lo, 1);
      return false;
    }
    VertexSet cand = c;
    if (k == 1) {
      // With one deletion left, the deleted vertex must be a high-degree
      // vertex or a neighbour of every one of them.
      c.for_each([&](int w) {
        int deg = 0;
        for (int u : g_.neighbors(w))
          if (c.test(u)) ++deg;
        if (deg <= d_) return;
        VertexSet closed(g_.size());
        closed.set(w);
        for (int u : g_.neighbors(w)) closed.set(u);
        cand &= closed;
      });
    }
    bool ok = false;
    cand.for_each([&](int v) {
      if (ok) return;
      VertexSet rest = c;
      rest.reset(v);
      if (le(rest, k - 1)) ok = true;
    });
    // The recursive calls may have rehashed the memo.
    if (cfg_.memoize) iv = &memo_[c];
    if (ok)
      iv->hi = std::min(iv->hi, k);
    else
      iv->lo = std::max(iv->lo, k + 1);
    return ok;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  struct Interval {
    int lo = 0;
    int hi = 1 << 29;
  };
  const Graph& g_;
  int d_;
  const OracleConfig& cfg_;
  std::unordered_map<VertexSet, Interval, VertexSetHash> memo_;
};

}  // namespace

int elim_distance_exact(const Graph& g, int d, const OracleConfig& cfg) {
  guard_size(g, cfg);
  BoundedSearch search(g, d, cfg);
  for (int k = 0;; ++k)
    if (search.le(g.all(), k)) return k;
}

bool member_exact(const Graph& g, int k, int d, const OracleConfig& cfg) {
  guard_size(g, cfg);
  if (k < 0 || d < 0) throw InputError("k and d must be non-negative");
  BoundedSearch search(g, d, cfg);
  return search.le(g.all(), k);
}

int treedepth_exact(const Graph& g, const OracleConfig& cfg) { return elim_distance_exact(g, 0, cfg); }

std::optional<TreeOrder> synthesize_order(const Graph& g, int k, int d, const OracleConfig& cfg) {
  guard_size(g, cfg);
  BoundedSearch search(g, d, cfg);
  if (!search.le(g.all(), k)) return std::nullopt;
  std::map<VertexId, std::optional<VertexId>> parent;
  std::function<void(const VertexSet&, std::optional<VertexId>, int)> place =
      [&](const VertexSet& x, std::optional<VertexId> above, int budget) {
        for (auto& c : component_sets(g, x)) {
          if (max_degree_within(g, c) <= d) {
            c.for_each([&](int v) { parent[g.id(v)] = above; });
            continue;
          }
          bool placed = false;
          c.for_each([&](int v) {
            if (placed) return;
            VertexSet rest = c;
            rest.reset(v);
            if (!search.le(rest, budget - 1)) return;
            placed = true;
            parent[g.id(v)] = above;
            place(rest, g.id(v), budget - 1);
          });
        }
      };
  place(g.all(), std::nullopt, k);
  return TreeOrder(std::move(parent));
}

namespace {

// Round-by-round search over tree orders. A call handles a vertex set X whose
// members share the same t strict predecessors. At depth t the set splits
// into sibling leaves (whole components of maximum degree <= d) and groups,
// each a union of extended components for level t+1 with one root at depth
// t. Two vertices in different parts are separated at depth t, which the
// separation conditions allow exactly when no extended link at level t+1
// joins them. Roots are the only vertices at depth t that leave the
// internal-connectivity graph from level t+1 on; leaves stay for good and
// are held to the finest P.
class SequenceSearch {
 public:
  struct Part {
    VertexSet members;
    int root = -1;  // local index, -1 for sibling leaves
  };

  SequenceSearch(const Graph& h, const PortMap& ports, const KdSequence& s, int d, const OracleConfig& cfg)
      : h_(h), s_(s), d_(d), cfg_(cfg), ell_(s.length()) {
    pc_.graph = h;
    pc_.p = s.p;
    local_ports_.resize(h.size());
    for (auto& [v, js] : ports) {
      int i = h.index_of(v);
      if (i < 0) throw InputError("port on vertex " + std::to_string(v) + " outside the component");
      for (int j : js)
        if (j < 1 || j > s.p)
          throw InputError("port index " + std::to_string(j) + " outside 1.." + std::to_string(s.p));
      if (!js.empty()) pc_.ports[v] = js;
      local_ports_[i] = js;
    }
  }

  const std::optional<std::vector<Part>>& choose(const VertexSet& x, int t) {
    Key key{x, t};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= static_cast<std::size_t>(cfg_.max_states))
      throw ResourceError("sequence search exceeded " + std::to_string(cfg_.max_states) + " states");
    auto result = compute(x, t);
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  void build(const VertexSet& x, int t, std::optional<VertexId> above,
             std::map<VertexId, std::optional<VertexId>>& parent) {
    if (x.empty()) return;
    const auto& parts = *choose(x, t);
    for (const auto& part : parts) {
      if (part.root < 0) {
        part.members.for_each([&](int v) { parent[h_.id(v)] = above; });
        continue;
      }
      parent[h_.id(part.root)] = above;
      VertexSet rest = part.members;
      rest.reset(part.root);
      build(rest, t + 1, h_.id(part.root), parent);
    }
  }

 private:
  struct Key {
    VertexSet x;
    int t;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.x.hash() * 31 + static_cast<std::size_t>(k.t); }
  };

  // Every component of h[y] has all its ports inside one block of P.
  bool ports_fit(const VertexSet& y, const Partition& P) const {
    for (auto& c : component_sets(h_, y)) {
      int block = -1;
      bool ok = true;
      c.for_each([&](int v) {
        for (int j : local_ports_[v]) {
          int b = P.block_of(j);
          if (block < 0) block = b;
          else if (block != b) ok = false;
        }
      });
      if (!ok) return false;
    }
    return true;
  }

  bool leaves_ok(const VertexSet& y) const {
    if (max_degree_within(h_, y) > d_) return false;
    return ell_ == 0 || ports_fit(y, s_.level(ell_).P);
  }

  std::optional<std::vector<Part>> compute(const VertexSet& x, int t) {
    if (x.empty()) return std::vector<Part>{};
    if (t == ell_) {
      if (!leaves_ok(x)) return std::nullopt;
      return std::vector<Part>{Part{x, -1}};
    }
    auto ext = extended_components(pc_, s_, t + 1, x);
    const int q = static_cast<int>(ext.size());
    if (q > 20) throw ResourceError("too many extended components for exhaustive grouping");
    const Partition& next_p = s_.level(t + 1).P;

    std::vector<char> leaf(q);
    for (int e = 0; e < q; ++e) leaf[e] = leaves_ok(ext[e]);

    auto union_of = [&](unsigned mask) {
      VertexSet u(h_.size());
      for (int e = 0; e < q; ++e)
        if (mask >> e & 1u) u |= ext[e];
      return u;
    };
    // good[mask]: root for the group formed by these extended components,
    // or -1; -2 while unknown.
    std::unordered_map<unsigned, int> good;
    auto group_root = [&](unsigned mask) {
      auto it = good.find(mask);
      if (it != good.end()) return it->second;
      VertexSet u = union_of(mask);
      int found = -1;
      u.for_each([&](int r) {
        if (found >= 0) return;
        VertexSet rest = u;
        rest.reset(r);
        if (!ports_fit(rest, next_p)) return;
        if (choose(rest, t + 1)) found = r;
      });
      good[mask] = found;
      return found;
    };

    // cover[mask] = first successful split of mask; computed lazily.
    std::unordered_map<unsigned, std::optional<std::vector<std::pair<unsigned, int>>>> cover;
    std::function<const std::optional<std::vector<std::pair<unsigned, int>>>&(unsigned)> solve =
        [&](unsigned mask) -> const std::optional<std::vector<std::pair<unsigned, int>>>& {
      auto it = cover.find(mask);
      if (it != cover.end()) return it->second;
      std::optional<std::vector<std::pair<unsigned, int>>> res;
      if (mask == 0) {
        res.emplace();
      } else {
        unsigned low = mask & (~mask + 1);
        int low_idx = std::countr_zero(low);
        if (leaf[low_idx]) {
          const auto& sub = solve(mask ^ low);
          if (sub) {
            res = *sub;
            res->emplace_back(low, -1);
          }
        }
        unsigned others = mask ^ low;
        // Subsets of the other components, smallest groups first by
        // enumeration order; each joined with the lowest component.
        for (unsigned s = 0;; s = (s - others) & others) {
          if (res) break;
          unsigned g = low | s;
          int r = group_root(g);
          if (r >= 0) {
            const auto& sub = solve(mask ^ g);
            if (sub) {
              res = *sub;
              res->emplace_back(g, r);
            }
          }
          if (s == others) break;
        }
      }
      return cover.emplace(mask, std::move(res)).first->second;
    };
    unsigned all = q == 32 ? ~0u : ((1u << q) - 1);
    const auto& plan = solve(all);
    if (!plan) return std::nullopt;
    std::vector<Part> parts;
    for (auto [mask, root] : *plan) parts.push_back(Part{union_of(mask), root});
    return parts;
  }

  const Graph& h_;
  const KdSequence& s_;
  int d_;
  const OracleConfig& cfg_;
  int ell_;
  PortedComponent pc_;
  std::vector<std::vector<int>> local_ports_;
  std::unordered_map<Key, std::optional<std::vector<Part>>, KeyHash> memo_;
};

void require_well_formed(const KdSequence& s) {
  auto rep = validate_sequence(s, -1);
  if (!rep.valid) throw InputError("malformed sequence: " + rep.violations.front());
}

}  // namespace

bool sequence_satisfies_exact(const Graph& h, const PortMap& ports, const KdSequence& s, int d,
                              const OracleConfig& cfg) {
  require_well_formed(s);
  guard_size(h, cfg);
  SequenceSearch search(h, ports, s, d, cfg);
  return search.choose(h.all(), 0).has_value();
}

std::optional<TreeOrder> sequence_witness(const Graph& h, const PortMap& ports, const KdSequence& s, int d,
                                          const OracleConfig& cfg) {
  require_well_formed(s);
  guard_size(h, cfg);
  SequenceSearch search(h, ports, s, d, cfg);
  if (!search.choose(h.all(), 0)) return std::nullopt;
  std::map<VertexId, std::optional<VertexId>> parent;
  search.build(h.all(), 0, std::nullopt, parent);
  return TreeOrder(std::move(parent));
}

}  // namespace elimdeg
