#include "elimdeg/sequence.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "elimdeg/errors.hpp"
#include "elimdeg/union_find.hpp"

namespace elimdeg {

Partition Partition::from_labels(const std::vector<int>& label) {
  Partition x;
  std::map<int, int> renum;
  x.block_.resize(label.size());
  for (std::size_t j = 0; j < label.size(); ++j) {
    auto [it, fresh] = renum.emplace(label[j], static_cast<int>(renum.size()));
    x.block_[j] = it->second;
  }
  x.num_blocks_ = static_cast<int>(renum.size());
  return x;
}

Partition::Partition(int p, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> label(p, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InputError("empty block in partition");
    for (int j : blocks[b]) {
      if (j < 1 || j > p) throw InputError("partition element " + std::to_string(j) + " outside 1.." + std::to_string(p));
      if (label[j - 1] >= 0) throw InputError("element " + std::to_string(j) + " in two blocks");
      label[j - 1] = static_cast<int>(b);
    }
  }
  for (int j = 1; j <= p; ++j)
    if (label[j - 1] < 0) throw InputError("element " + std::to_string(j) + " missing from partition");
  *this = from_labels(label);
}

Partition Partition::discrete(int p) {
  std::vector<int> label(p);
  for (int j = 0; j < p; ++j) label[j] = j;
  return from_labels(label);
}

Partition Partition::single(int p) { return from_labels(std::vector<int>(p, 0)); }

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(num_blocks_);
  for (int j = 1; j <= ground(); ++j) out[block_of(j)].push_back(j);
  return out;
}

bool Partition::isolated(int j) const {
  for (int t = 1; t <= ground(); ++t)
    if (t != j && grouped(t, j)) return false;
  return true;
}

bool refines(const Partition& a, const Partition& b) {
  if (a.ground() != b.ground()) throw InputError("partitions over different ground sets");
  std::vector<int> target(a.num_blocks(), -1);
  for (int j = 1; j <= a.ground(); ++j) {
    int& t = target[a.block_of(j)];
    if (t < 0)
      t = b.block_of(j);
    else if (t != b.block_of(j))
      return false;
  }
  return true;
}

Partition join(const Partition& a, const Partition& b) {
  if (a.ground() != b.ground()) throw InputError("partitions over different ground sets");
  const int p = a.ground();
  UnionFind uf(p);
  std::vector<int> first_a(a.num_blocks(), -1), first_b(b.num_blocks(), -1);
  for (int j = 0; j < p; ++j) {
    int& fa = first_a[a.block_of(j + 1)];
    if (fa < 0) fa = j; else uf.unite(fa, j);
    int& fb = first_b[b.block_of(j + 1)];
    if (fb < 0) fb = j; else uf.unite(fb, j);
  }
  std::vector<int> label(p);
  for (int j = 0; j < p; ++j) label[j] = uf.find(j);
  return Partition::from_labels(label);
}

std::vector<Partition> all_partitions(int p) {
  // Restricted growth strings.
  std::vector<Partition> out;
  std::vector<int> label(p, 0);
  std::function<void(int, int)> rec = [&](int j, int used) {
    if (j == p) {
      out.push_back(Partition::from_labels(label));
      return;
    }
    for (int b = 0; b <= used; ++b) {
      label[j] = b;
      rec(j + 1, std::max(used, b + 1));
    }
  };
  if (p == 0)
    out.push_back(Partition::from_labels({}));
  else
    rec(0, 0);
  return out;
}

bool SequenceLevel::deleted(int j) const { return std::binary_search(D.begin(), D.end(), j); }

SequenceReport validate_sequence(const KdSequence& s, int k) {
  SequenceReport rep;
  auto bad = [&](const std::string& what) {
    rep.valid = false;
    rep.violations.push_back(what);
  };
  if (k >= 0 && s.length() > k)
    bad("length " + std::to_string(s.length()) + " exceeds k=" + std::to_string(k));
  for (int i = 1; i <= s.length(); ++i) {
    const auto& lv = s.level(i);
    std::string at = "level " + std::to_string(i) + ": ";
    if (lv.P.ground() != s.p || lv.L.ground() != s.p) {
      bad(at + "partition ground set differs from p=" + std::to_string(s.p));
      continue;
    }
    if (!std::is_sorted(lv.D.begin(), lv.D.end()) ||
        std::adjacent_find(lv.D.begin(), lv.D.end()) != lv.D.end())
      bad(at + "D not strictly ascending");
    for (int j : lv.D) {
      if (j < 1 || j > s.p) {
        bad(at + "D element " + std::to_string(j) + " outside 1..p");
        continue;
      }
      if (!lv.L.isolated(j)) bad(at + "deleted port " + std::to_string(j) + " is grouped in L");
    }
    if (i > 1) {
      const auto& prev = s.level(i - 1);
      if (prev.P.ground() != s.p || prev.L.ground() != s.p) continue;
      if (!refines(lv.P, prev.P)) bad(at + "P does not refine the previous P");
      if (!refines(lv.L, prev.L)) bad(at + "L does not refine the previous L");
      for (int j : prev.D)
        if (!lv.deleted(j)) bad(at + "D drops port " + std::to_string(j));
    }
  }
  return rep;
}

std::vector<int> PortedComponent::ports_of(VertexId v) const {
  auto it = ports.find(v);
  return it == ports.end() ? std::vector<int>{} : it->second;
}

PortedComponent ported_component(const Graph& g, const ComponentNode& node) {
  PortedComponent pc;
  VertexSet keep(g.size());
  for (VertexId v : node.vertices) keep.set(g.index_of(v));
  pc.graph = g.induced(keep);
  pc.p = static_cast<int>(node.ports.size());
  for (VertexId v : node.vertices) {
    int i = g.index_of(v);
    std::vector<int> js;
    for (int w : g.neighbors(i)) {
      auto it = std::lower_bound(node.ports.begin(), node.ports.end(), g.id(w));
      if (it != node.ports.end() && *it == g.id(w)) js.push_back(static_cast<int>(it - node.ports.begin()) + 1);
    }
    if (!js.empty()) {
      std::sort(js.begin(), js.end());
      pc.ports[v] = js;
    }
  }
  return pc;
}

std::vector<VertexSet> extended_components(const PortedComponent& pc, const KdSequence& s, int i,
                                           const VertexSet& within) {
  if (i < 0 || i > s.length()) throw InputError("level " + std::to_string(i) + " out of range");
  const Graph& g = pc.graph;
  UnionFind uf(g.size());
  within.for_each([&](int v) {
    for (int w : g.neighbors(v))
      if (within.test(w)) uf.unite(v, w);
  });
  if (i > 0) {
    const auto& lv = s.level(i);
    // anchor[key] = first vertex seen with that key; keys are ports j not in
    // D_i, and L-blocks of size at least two.
    std::vector<int> by_port(s.p + 1, -1), by_block(s.p, -1);
    std::vector<int> block_size(lv.L.num_blocks(), 0);
    for (int j = 1; j <= s.p; ++j) ++block_size[lv.L.block_of(j)];
    within.for_each([&](int v) {
      auto it = pc.ports.find(g.id(v));
      if (it == pc.ports.end()) return;
      for (int j : it->second) {
        if (!lv.deleted(j)) {
          int& a = by_port[j];
          if (a < 0) a = v; else uf.unite(a, v);
        }
        int b = lv.L.block_of(j);
        if (block_size[b] >= 2) {
          int& a = by_block[b];
          if (a < 0) a = v; else uf.unite(a, v);
        }
      }
    });
  }
  std::map<int, VertexSet> groups;
  std::vector<int> order;
  within.for_each([&](int v) {
    int r = uf.find(v);
    auto [it, fresh] = groups.try_emplace(r, g.size());
    if (fresh) order.push_back(r);
    it->second.set(v);
  });
  std::vector<VertexSet> out;
  for (int r : order) out.push_back(groups.at(r));
  return out;
}

bool conn_extended(const PortedComponent& pc, const KdSequence& s, int i, VertexId x, VertexId y,
                   const std::vector<VertexId>& deleted) {
  const Graph& g = pc.graph;
  int a = g.index_of(x), b = g.index_of(y);
  if (a < 0 || b < 0) throw InputError("conn_extended: unknown vertex");
  VertexSet within = g.all();
  for (VertexId v : deleted) {
    int t = g.index_of(v);
    if (t < 0) throw InputError("conn_extended: unknown deleted vertex");
    within.reset(t);
  }
  if (!within.test(a) || !within.test(b)) throw InputError("conn_extended: endpoint is deleted");
  for (auto& c : extended_components(pc, s, i, within))
    if (c.test(a)) return c.test(b);
  return false;
}

namespace {

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw InputError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad integer `" + item + "` in " + what);
    }
  }
  return out;
}

std::vector<std::vector<int>> parse_blocks(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) blocks.push_back(parse_int_list(part, "partition"));
  return blocks;
}

}  // namespace

KdSequence parse_sequence(std::istream& in, int p) {
  struct Raw {
    std::vector<std::vector<int>> P, L;
    std::vector<int> D;
  };
  std::vector<Raw> raws;
  int max_seen = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    Raw raw;
    bool any = false, hasP = false, hasL = false;
    while (ls >> tok) {
      any = true;
      auto fail = [&](const std::string& what) {
        throw InputError("sequence line " + std::to_string(lineno) + ": " + what);
      };
      if (tok.size() < 2 || tok[1] != '=') fail("expected P=, L= or D=, got `" + tok + "`");
      std::string body = tok.substr(2);
      if (tok[0] == 'P') {
        raw.P = parse_blocks(body);
        hasP = true;
      } else if (tok[0] == 'L') {
        raw.L = parse_blocks(body);
        hasL = true;
      } else if (tok[0] == 'D') {
        raw.D = parse_int_list(body, "D");
      } else {
        fail("unknown field `" + tok + "`");
      }
    }
    if (!any) continue;
    if (!hasP || !hasL) throw InputError("sequence line " + std::to_string(lineno) + ": P= and L= are required");
    for (auto* bs : {&raw.P, &raw.L})
      for (auto& b : *bs)
        for (int j : b) max_seen = std::max(max_seen, j);
    for (int j : raw.D) max_seen = std::max(max_seen, j);
    raws.push_back(std::move(raw));
  }
  KdSequence s;
  s.p = p >= 0 ? p : max_seen;
  for (auto& raw : raws) {
    // An empty P= or L= denotes the empty partition (p = 0).
    auto drop_empty = [](std::vector<std::vector<int>> bs) {
      bs.erase(std::remove_if(bs.begin(), bs.end(), [](auto& b) { return b.empty(); }), bs.end());
      return bs;
    };
    SequenceLevel lv{Partition(s.p, drop_empty(raw.P)), Partition(s.p, drop_empty(raw.L)), raw.D};
    std::sort(lv.D.begin(), lv.D.end());
    s.levels.push_back(std::move(lv));
  }
  return s;
}

KdSequence read_sequence(const std::string& path, int p) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_sequence(in, p);
}

std::string format_partition(const Partition& x) {
  std::string out;
  auto bs = x.blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b) out += '|';
    for (std::size_t t = 0; t < bs[b].size(); ++t) {
      if (t) out += ',';
      out += std::to_string(bs[b][t]);
    }
  }
  return out;
}

void write_sequence(std::ostream& out, const KdSequence& s) {
  for (const auto& lv : s.levels) {
    out << "P=" << format_partition(lv.P) << " L=" << format_partition(lv.L) << " D=";
    for (std::size_t t = 0; t < lv.D.size(); ++t) out << (t ? "," : "") << lv.D[t];
    out << "\n";
  }
}

PortMap parse_ports(std::istream& in) {
  PortMap ports;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string v, list, extra;
    if (!(ls >> v)) continue;
    if (!(ls >> list) || (ls >> extra)) throw InputError("ports line " + std::to_string(lineno) + ": expected `v j1,j2,...`");
    VertexId id;
    try {
      std::size_t pos = 0;
      id = std::stoi(v, &pos);
      if (pos != v.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("ports line " + std::to_string(lineno) + ": bad vertex `" + v + "`");
    }
    auto js = parse_int_list(list, "ports");
    for (int j : js)
      if (j < 1) throw InputError("ports line " + std::to_string(lineno) + ": port indices start at 1");
    auto& slot = ports[id];
    slot.insert(slot.end(), js.begin(), js.end());
    std::sort(slot.begin(), slot.end());
    slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
  }
  return ports;
}

PortMap read_ports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_ports(in);
}

int max_port(const PortMap& ports) {
  int m = 0;
  for (auto& [v, js] : ports)
    for (int j : js) m = std::max(m, j);
  return m;
}

}  // namespace elimdeg
