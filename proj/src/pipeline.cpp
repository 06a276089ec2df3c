#include "elimdeg/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "elimdeg/errors.hpp"
#include "elimdeg/union_find.hpp"

namespace elimdeg {

std::vector<QuotientClass> next_components(const QuotientGraph& gq, const std::vector<char>& red_alive,
                                           const std::vector<std::optional<PortBlocks>>& node_blocks) {
  const int nr = gq.num_reds();
  UnionFind uf(nr);
  for (auto [u, v] : gq.red_edges) {
    int a = gq.red_index(u), b = gq.red_index(v);
    if (red_alive[a] && red_alive[b]) uf.unite(a, b);
  }
  // Alive red indices per block, per node.
  std::vector<std::vector<std::vector<int>>> node_reds(gq.nodes.size());
  for (std::size_t n = 0; n < gq.nodes.size(); ++n) {
    const auto& ports = gq.nodes[n].ports;
    PortBlocks blocks;
    if (node_blocks[n]) {
      blocks = *node_blocks[n];
    } else {
      blocks.emplace_back();
      for (std::size_t j = 1; j <= ports.size(); ++j) blocks.back().push_back(static_cast<int>(j));
    }
    for (auto& block : blocks) {
      std::vector<int> reds;
      for (int j : block) {
        int r = gq.red_index(ports[j - 1]);
        if (red_alive[r]) reds.push_back(r);
      }
      for (std::size_t t = 1; t < reds.size(); ++t) uf.unite(reds[0], reds[t]);
      if (!reds.empty()) node_reds[n].push_back(std::move(reds));
    }
  }
  std::map<int, QuotientClass> by_root;
  for (int r = 0; r < nr; ++r)
    if (red_alive[r]) by_root[uf.find(r)].reds.push_back(r);
  std::vector<QuotientClass> out;
  for (std::size_t n = 0; n < gq.nodes.size(); ++n) {
    const int q = nr + static_cast<int>(n);
    if (node_reds[n].empty()) {
      out.push_back(QuotientClass{{}, {q}});
      continue;
    }
    for (auto& reds : node_reds[n]) {
      auto& nodes = by_root[uf.find(reds[0])].nodes;
      if (nodes.empty() || nodes.back() != q) nodes.push_back(q);
    }
  }
  for (auto& [root, cls] : by_root) out.push_back(std::move(cls));
  auto smallest = [](const QuotientClass& c) { return c.reds.empty() ? c.nodes.front() : c.reds.front(); };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return smallest(a) < smallest(b); });
  out.push_back(QuotientClass{});
  return out;
}

namespace {

// One component node of the quotient as seen by the round search.
struct NodeInfo {
  Graph h;
  int p = 0;
  std::vector<int> port_red;                // port j-1 -> red index
  std::vector<std::vector<int>> ports_at;  // local vertex -> ports
};

// Ports reached by the alive part: 0 for untouched ports, otherwise a
// block number; ports reached by one piece, or by pieces sharing a port,
// share a block.
using Pattern = std::vector<int>;

struct NodeState {
  Pattern pattern;
  std::vector<VertexSet> alive;  // sorted candidate alive sets
};

class QuotientSearch {
 public:
  QuotientSearch(const Graph& g, const QuotientGraph& gq, int k, int d, const QuotientConfig& cfg,
                 QuotientStats* stats)
      : gq_(gq), k_(k), d_(d), cfg_(cfg), stats_(stats) {
    for (const auto& node : gq.nodes) {
      NodeInfo info;
      VertexSet keep(g.size());
      for (VertexId v : node.vertices) keep.set(g.index_of(v));
      info.h = g.induced(keep);
      info.p = static_cast<int>(node.ports.size());
      for (VertexId r : node.ports) info.port_red.push_back(gq.red_index(r));
      info.ports_at.resize(info.h.size());
      for (int j = 1; j <= info.p; ++j) {
        int r = g.index_of(node.ports[j - 1]);
        for (int w : g.neighbors(r)) {
          int local = info.h.index_of(g.id(w));
          if (local >= 0) info.ports_at[local].push_back(j);
        }
      }
      nodes_.push_back(std::move(info));
    }
    detached_memo_.resize(nodes_.size());
    path_.resize(nodes_.size());
  }

  bool run() {
    std::vector<char> red_alive(gq_.num_reds(), 1);
    std::vector<NodeState> st;
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      auto all = strip(n, nodes_[n].h.all(), red_alive, k_);
      if (!all) return false;
      st.push_back(NodeState{pattern(n, *all, red_alive), {*all}});
    }
    return round(1, red_alive, st);
  }

 private:
  Pattern pattern(std::size_t n, const VertexSet& x, const std::vector<char>& red_alive) const {
    const auto& info = nodes_[n];
    UnionFind uf(info.p + 1);
    std::vector<char> touched(info.p + 1, 0);
    for (auto& piece : component_sets(info.h, x)) {
      int first = 0;
      piece.for_each([&](int v) {
        for (int j : info.ports_at[v]) {
          if (!red_alive[info.port_red[j - 1]]) continue;
          touched[j] = 1;
          if (first == 0)
            first = j;
          else
            uf.unite(first, j);
        }
      });
    }
    Pattern out(info.p, 0);
    std::map<int, int> renum;
    for (int j = 1; j <= info.p; ++j)
      if (touched[j]) out[j - 1] = renum.emplace(uf.find(j), static_cast<int>(renum.size()) + 1).first->second;
    return out;
  }

  static PortBlocks blocks_of(const Pattern& pat) {
    PortBlocks out;
    for (std::size_t j = 0; j < pat.size(); ++j) {
      if (pat[j] == 0) continue;
      if (static_cast<int>(out.size()) < pat[j]) out.resize(pat[j]);
      out[pat[j] - 1].push_back(static_cast<int>(j) + 1);
    }
    return out;
  }

  bool detached_ok(std::size_t n, const VertexSet& piece, int rem) {
    auto& memo = detached_memo_[n];
    auto key = piece;
    auto it = memo.find(key);
    if (it != memo.end() && it->second.count(rem)) return it->second[rem];
    const auto& h = nodes_[n].h;
    bool ok = max_degree_within(h, piece) <= d_ || (rem > 0 && member_exact(h.induced(piece), rem, d_, cfg_.detached));
    memo[key][rem] = ok;
    return ok;
  }

  // Removes pieces with no alive port after checking each can finish on its
  // own within rem rounds.
  std::optional<VertexSet> strip(std::size_t n, VertexSet x, const std::vector<char>& red_alive, int rem) {
    const auto& info = nodes_[n];
    for (auto& piece : component_sets(info.h, x)) {
      bool ported = false;
      piece.for_each([&](int v) {
        for (int j : info.ports_at[v])
          if (red_alive[info.port_red[j - 1]]) ported = true;
      });
      if (ported) continue;
      if (!detached_ok(n, piece, rem)) return std::nullopt;
      x -= piece;
    }
    return x;
  }

  // Successor alive sets of node n, grouped by pattern.
  std::map<Pattern, std::vector<VertexSet>> advance(std::size_t n, const NodeState& s,
                                                    const std::vector<int>& class_of_red,
                                                    const std::vector<char>& mover_class,
                                                    const std::vector<char>& red_after, int rem) {
    const auto& info = nodes_[n];
    std::unordered_set<VertexSet, VertexSetHash> next;
    for (const auto& x : s.alive) {
      std::map<int, VertexSet> pool;  // mover class -> vertices to pick from
      for (auto& piece : component_sets(info.h, x)) {
        int cls = -1;
        piece.for_each([&](int v) {
          for (int j : info.ports_at[v])
            if (cls < 0 && class_of_red[info.port_red[j - 1]] >= 0) cls = class_of_red[info.port_red[j - 1]];
        });
        if (cls >= 0 && mover_class[cls]) {
          auto [it, fresh] = pool.try_emplace(cls, info.h.size());
          it->second |= piece;
        }
      }
      std::vector<std::vector<int>> picks;
      for (auto& [cls, vs] : pool) picks.push_back(vs.to_vector());
      std::vector<int> at(picks.size(), 0);
      while (true) {
        VertexSet y = x;
        for (std::size_t c = 0; c < picks.size(); ++c) y.reset(picks[c][at[c]]);
        if (auto z = strip(n, y, red_after, rem)) {
          next.insert(std::move(*z));
          if (static_cast<long long>(next.size()) > cfg_.max_states)
            throw ResourceError("quotient search exceeded " + std::to_string(cfg_.max_states) +
                                " alive sets for one component node");
        }
        std::size_t c = 0;
        while (c < picks.size() && ++at[c] == static_cast<int>(picks[c].size())) at[c++] = 0;
        if (c == picks.size()) break;
      }
    }
    std::map<Pattern, std::vector<VertexSet>> out;
    for (auto& y : next) out[pattern(n, y, red_after)].push_back(y);
    for (auto& [pat, ys] : out) std::sort(ys.begin(), ys.end());
    if (stats_)
      for (auto& [pat, ys] : out)
        stats_->largest_state_set = std::max<long long>(stats_->largest_state_set, ys.size());
    return out;
  }

  std::string key_of(int t, const std::vector<char>& red_alive, const std::vector<NodeState>& st) const {
    std::string key;
    auto put = [&](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(t);
    key.append(red_alive.begin(), red_alive.end());
    for (const auto& s : st) {
      for (int x : s.pattern) put(x);
      put(static_cast<int>(s.alive.size()));
      for (const auto& x : s.alive) {
        for (int v : x.to_vector()) put(v);
        put(-1);
      }
    }
    return key;
  }

  bool round(int t, const std::vector<char>& red_alive, const std::vector<NodeState>& st) {
    if (std::none_of(red_alive.begin(), red_alive.end(), [](char a) { return a; })) {
      if (stats_ && stats_->transcripts.empty()) record_success();
      return true;
    }
    if (t > k_) return false;
    if (stats_) ++stats_->search_nodes;
    if (++nodes_visited_ > cfg_.max_search_nodes)
      throw ResourceError("quotient search exceeded " + std::to_string(cfg_.max_search_nodes) + " nodes");
    std::string key = key_of(t, red_alive, st);
    if (failed_.count(key)) return false;

    std::vector<std::optional<PortBlocks>> blocks;
    for (const auto& s : st) blocks.emplace_back(blocks_of(s.pattern));
    auto classes = next_components(gq_, red_alive, blocks);
    classes.erase(std::remove_if(classes.begin(), classes.end(), [](const auto& c) { return c.reds.empty(); }),
                  classes.end());
    std::vector<int> class_of_red(gq_.num_reds(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int r : classes[c].reds) class_of_red[r] = static_cast<int>(c);

    // Every class deletes exactly one vertex: deleting never hurts, since
    // a winning schedule restricts to any induced subgraph.
    std::vector<int> choice(classes.size(), 0);
    auto options = [&](std::size_t c) { return classes[c].reds.size() + classes[c].nodes.size(); };
    bool ok = false;
    while (!ok) {
      std::vector<char> red_after = red_alive;
      std::vector<std::vector<char>> mover(st.size(), std::vector<char>(classes.size(), 0));
      for (std::size_t c = 0; c < classes.size(); ++c) {
        std::size_t o = choice[c];
        if (o < classes[c].reds.size())
          red_after[classes[c].reds[o]] = 0;
        else
          mover[classes[c].nodes[o - classes[c].reds.size()] - gq_.num_reds()][c] = 1;
      }
      ok = play(t, classes, class_of_red, red_after, mover, st);
      std::size_t c = 0;
      while (c < classes.size() && ++choice[c] == static_cast<int>(options(c))) choice[c++] = 0;
      if (c == classes.size()) break;
    }
    if (!ok) failed_.insert(std::move(key));
    return ok;
  }

  bool play(int t, const std::vector<QuotientClass>& classes, const std::vector<int>& class_of_red,
            const std::vector<char>& red_after, const std::vector<std::vector<char>>& mover,
            const std::vector<NodeState>& st) {
    const int rem = k_ - t;
    std::vector<std::vector<std::pair<Pattern, std::vector<VertexSet>>>> succ(st.size());
    for (std::size_t n = 0; n < st.size(); ++n) {
      auto groups = advance(n, st[n], class_of_red, mover[n], red_after, rem);
      if (groups.empty()) return false;
      succ[n].assign(groups.begin(), groups.end());
    }
    // Round-t transcript entries that do not depend on the pattern choice.
    std::vector<Partition> L(st.size());
    std::vector<std::vector<int>> D(st.size());
    std::vector<PortBlocks> moved(st.size());
    if (stats_) {
      for (std::size_t n = 0; n < st.size(); ++n) {
        const auto& info = nodes_[n];
        std::vector<int> label(info.p);
        for (int j = 1; j <= info.p; ++j) {
          int c = class_of_red[info.port_red[j - 1]];
          label[j - 1] = c >= 0 ? c : static_cast<int>(classes.size()) + j;
          if (!red_after[info.port_red[j - 1]]) D[n].push_back(j);
        }
        L[n] = Partition::from_labels(label);
        for (std::size_t c = 0; c < classes.size(); ++c) {
          if (!mover[n][c]) continue;
          std::vector<int> ports;
          for (int j = 1; j <= info.p; ++j)
            if (class_of_red[info.port_red[j - 1]] == static_cast<int>(c)) ports.push_back(j);
          moved[n].push_back(std::move(ports));
        }
      }
    }
    std::vector<std::size_t> at(st.size(), 0);
    while (true) {
      std::vector<NodeState> next;
      for (std::size_t n = 0; n < st.size(); ++n) next.push_back({succ[n][at[n]].first, succ[n][at[n]].second});
      if (stats_)
        for (std::size_t n = 0; n < st.size(); ++n) {
          std::vector<int> label(nodes_[n].p);
          for (int j = 0; j < nodes_[n].p; ++j)
            label[j] = next[n].pattern[j] > 0 ? next[n].pattern[j] : nodes_[n].p + 1 + j;
          path_[n].push_back({SequenceLevel{Partition::from_labels(label), L[n], D[n]}, moved[n]});
        }
      bool ok = round(t + 1, red_after, next);
      if (stats_)
        for (auto& p : path_) p.pop_back();
      if (ok) return true;
      std::size_t n = 0;
      while (n < st.size() && ++at[n] == succ[n].size()) at[n++] = 0;
      if (n == st.size()) return false;
    }
  }

  void record_success() {
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      NodeTranscript tr;
      tr.sequence.p = nodes_[n].p;
      for (auto& [level, moved] : path_[n]) {
        tr.sequence.levels.push_back(level);
        tr.moved.push_back(moved);
      }
      stats_->transcripts.push_back(std::move(tr));
    }
  }

  const QuotientGraph& gq_;
  int k_;
  int d_;
  const QuotientConfig& cfg_;
  QuotientStats* stats_;
  std::vector<NodeInfo> nodes_;
  std::vector<std::unordered_map<VertexSet, std::map<int, bool>, VertexSetHash>> detached_memo_;
  std::unordered_set<std::string> failed_;
  long long nodes_visited_ = 0;
  std::vector<std::vector<std::pair<SequenceLevel, PortBlocks>>> path_;
};

std::string cell_text(Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; }

void attach_witness(Decision& dec, const Graph& g, int k, int d, const SolveOptions& opt) {
  if (!dec.member || g.size() > opt.witness_limit) return;
  OracleConfig cfg;
  cfg.max_vertices = std::max(opt.witness_limit, 1);
  dec.witness = synthesize_order(g, k, d, cfg);
}

// Exact small-degree decision without witness; appends to dec.
bool small_degree_into(Decision& dec, const Graph& g, int k, int d, const SolveOptions& opt,
                       const std::optional<MinorModel>& model) {
  dec.trace.push_back({"small-degree", "max degree " + std::to_string(g.max_degree()) + " <= k+d", {}});
  auto c1 = case1_component(g, k, d);
  if (!c1.empty()) {
    dec.stage = "case1";
    dec.case1_component = c1;
    dec.trace.push_back({"case1",
                         "component with more than " + std::to_string(case1_threshold(k, d)) +
                             " vertices of degree >= d+1",
                         c1});
    return false;
  }
  long long high = 0;
  for (int i = 0; i < g.size(); ++i) high += g.degree(i) >= d + 1;
  dec.trace.push_back({"case1-check",
                       std::to_string(high) + " vertices of degree >= d+1, per-component threshold " +
                           (k + d <= 1 ? std::string("not applicable for k+d <= 1")
                                       : std::to_string(case1_threshold(k, d))),
                       {}});
  ModelProvider provider = no_model_provider();
  if (model) {
    auto rep = validate_model(g, *model);
    if (!rep.valid) throw InputError("invalid model: " + rep.violations.front());
    provider = ShrinkingModelProvider(*model);
  }
  auto red = reduce_small_degree(g, k, d, provider);
  for (const auto& step : red.steps) {
    std::string detail = "safe cell " + cell_text(step.cell) + " of side " + std::to_string(step.m);
    for (auto mg : step.merges) detail += ", after merging row/col " + cell_text({mg.row, mg.col});
    dec.trace.push_back({"case3-delete", detail, {step.vertex}});
  }
  dec.reductions.insert(dec.reductions.end(), red.steps.begin(), red.steps.end());
  dec.trace.push_back({"case3-stop", red.stop_reason, {}});
  for (auto& comp : component_sets(red.graph, red.graph.all())) {
    if (max_degree_within(red.graph, comp) <= d) continue;
    Graph part = red.graph.induced(comp);
    bool ok;
    try {
      ok = member_exact(part, k, d, opt.residual);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string("residual exact search: ") + e.what());
    }
    dec.trace.push_back({"residual",
                         std::string(ok ? "member" : "not a member") + ", component of " +
                             std::to_string(part.size()) + " vertices",
                         {part.id(0)}});
    if (!ok) {
      dec.stage = "residual";
      return false;
    }
  }
  dec.stage = "residual";
  return true;
}

}  // namespace

bool decide_quotient(const Graph& g, const QuotientGraph& gq, int k, int d, const QuotientConfig& cfg,
                     QuotientStats* stats) {
  QuotientSearch search(g, gq, k, d, cfg, stats);
  return search.run();
}

Decision solve_small_degree(const Graph& g, int k, int d, const SolveOptions& opt) {
  if (k < 0 || d < 0) throw InputError("k and d must be non-negative");
  if (g.max_degree() > k + d) throw InputError("solve_small_degree needs maximum degree <= k+d");
  Decision dec;
  dec.member = small_degree_into(dec, g, k, d, opt, opt.model);
  attach_witness(dec, g, k, d, opt);
  return dec;
}

Decision solve(const Graph& g, int k, int d, const SolveOptions& opt) {
  if (k < 0 || d < 0) throw InputError("k and d must be non-negative");
  if (g.max_degree() <= k + d) return solve_small_degree(g, k, d, opt);
  Decision dec;
  dec.member = true;
  for (auto& comp : component_sets(g, g.all())) {
    Graph c = g.induced(comp);
    if (c.max_degree() <= k + d) {
      if (!small_degree_into(dec, c, k, d, opt, std::nullopt)) {
        dec.member = false;
        return dec;
      }
      continue;
    }
    auto prune = reject_by_red_neighbors(c, k, d);
    if (prune.reject) {
      dec.member = false;
      dec.stage = to_string(prune.reason);
      dec.certificate = Certificate{prune.reason, prune.witness, prune.reds};
      dec.trace.push_back({dec.stage,
                           "component of G-R with " + std::to_string(prune.reds.size()) + " red neighbours, bound " +
                               std::to_string(red_neighbor_bound(k, d)),
                           prune.witness});
      return dec;
    }
    auto gq = contract(c, k, d);
    auto dfs = quotient_dfs_order(gq, k);
    if (dfs.reject) {
      auto path = expand_quotient_path(c, gq, dfs.witness);
      dec.member = false;
      dec.stage = to_string(dfs.reason);
      dec.certificate = Certificate{dfs.reason, path, dfs.reds};
      dec.trace.push_back({dec.stage,
                           "DFS of the contracted graph deeper than " + std::to_string(quotient_depth_bound(k)),
                           path});
      return dec;
    }
    dec.trace.push_back({"contract",
                         std::to_string(gq.num_reds()) + " red, " + std::to_string(gq.nodes.size()) +
                             " component nodes, DFS depth " + std::to_string(dfs.order->depth()),
                         gq.reds});
    QuotientStats stats;
    bool ok;
    try {
      ok = decide_quotient(c, gq, k, d, opt.quotient, &stats);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string("quotient search: ") + e.what());
    }
    std::string detail = std::string(ok ? "accepted" : "rejected") + " after " +
                         std::to_string(stats.search_nodes) + " search nodes";
    if (ok)
      for (std::size_t n = 0; n < stats.transcripts.size(); ++n) {
        detail += "; node " + std::to_string(n) + ":";
        for (const auto& lv : stats.transcripts[n].sequence.levels)
          detail += " P=" + format_partition(lv.P);
      }
    dec.trace.push_back({"quotient", detail, {c.id(0)}});
    dec.stage = "quotient";
    if (!ok) {
      dec.member = false;
      return dec;
    }
  }
  attach_witness(dec, g, k, d, opt);
  return dec;
}

}  // namespace elimdeg
