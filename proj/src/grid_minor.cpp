#include "elimdeg/grid_minor.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "elimdeg/errors.hpp"

namespace elimdeg {

std::vector<std::vector<std::vector<VertexId>>> MinorModel::branch_sets() const {
  std::vector<std::vector<std::vector<VertexId>>> out(m, std::vector<std::vector<VertexId>>(m));
  for (auto& [v, c] : cell)
    if (c.row >= 1 && c.row <= m && c.col >= 1 && c.col <= m) out[c.row - 1][c.col - 1].push_back(v);
  return out;
}

ModelReport validate_model(const Graph& g, const MinorModel& mm) {
  ModelReport rep;
  auto bad = [&](std::string what) {
    rep.valid = false;
    rep.violations.push_back(std::move(what));
  };
  if (mm.m < 1) {
    bad("grid side must be positive");
    return rep;
  }
  std::vector<int> row(g.size(), 0), col(g.size(), 0);
  for (auto& [v, c] : mm.cell) {
    int i = g.index_of(v);
    if (i < 0) {
      bad("model assigns vertex " + std::to_string(v) + " not in the graph");
      continue;
    }
    if (c.row < 1 || c.row > mm.m || c.col < 1 || c.col > mm.m) {
      bad("vertex " + std::to_string(v) + " assigned outside the grid");
      continue;
    }
    row[i] = c.row;
    col[i] = c.col;
  }
  for (int i = 0; i < g.size(); ++i)
    if (row[i] == 0) bad("vertex " + std::to_string(g.id(i)) + " is not assigned to a branch set");
  if (!rep.valid) return rep;

  const int m = mm.m;
  std::vector<VertexSet> sets(m * m, VertexSet(g.size()));
  for (int i = 0; i < g.size(); ++i) sets[(row[i] - 1) * m + col[i] - 1].set(i);
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m; ++c) {
      const auto& s = sets[(r - 1) * m + c - 1];
      std::string at = "branch set (" + std::to_string(r) + "," + std::to_string(c) + ")";
      if (s.empty())
        bad(at + " is empty");
      else if (component_sets(g, s).size() != 1)
        bad(at + " is disconnected");
    }
  std::vector<char> right(m * m, 0), down(m * m, 0);
  for (int i = 0; i < g.size(); ++i)
    for (int j : g.neighbors(i)) {
      if (row[i] == row[j] && col[j] == col[i] + 1) right[(row[i] - 1) * m + col[i] - 1] = 1;
      if (col[i] == col[j] && row[j] == row[i] + 1) down[(row[i] - 1) * m + col[i] - 1] = 1;
    }
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m; ++c) {
      if (c < m && !right[(r - 1) * m + c - 1])
        bad("no edge between (" + std::to_string(r) + "," + std::to_string(c) + ") and (" + std::to_string(r) + "," +
            std::to_string(c + 1) + ")");
      if (r < m && !down[(r - 1) * m + c - 1])
        bad("no edge between (" + std::to_string(r) + "," + std::to_string(c) + ") and (" + std::to_string(r + 1) +
            "," + std::to_string(c) + ")");
    }
  return rep;
}

SafetyWindow safety_window(const SafetyParams& sp, int m) {
  if (sp.mode == SafetyMode::SemiSafeCase33) return {4 * sp.k + 2, 4 * sp.k + 3, m - 4 * sp.k - 2};
  return {2 * sp.k + 2, 2 * sp.k + 3, m - 2 * sp.k - 2};
}

int min_side(const SafetyParams& sp) {
  auto w = safety_window(sp, 0);
  return 2 * w.radius + 1;
}

std::vector<std::vector<char>> blocked_cells(const Graph& g, const MinorModel& mm, const SafetyParams& sp) {
  std::vector<std::vector<char>> blocked(mm.m, std::vector<char>(mm.m, 0));
  for (auto& [v, c] : mm.cell) {
    int i = g.index_of(v);
    if (i < 0) continue;
    bool block = g.degree(i) >= sp.d + 1;
    if (!block && sp.mode != SafetyMode::Safe) {
      auto it = sp.ports.find(v);
      if (it != sp.ports.end())
        for (int j : it->second) {
          if (sp.mode == SafetyMode::SemiSafeCase31 ||
              std::find(sp.J.begin(), sp.J.end(), j) == sp.J.end())
            block = true;
        }
    }
    if (block) blocked[c.row - 1][c.col - 1] = 1;
  }
  return blocked;
}

std::optional<Cell> find_safe_branch_set(const Graph& g, const MinorModel& mm, const SafetyParams& sp) {
  if (mm.m < min_side(sp))
    throw InputError("grid side " + std::to_string(mm.m) + " below " + std::to_string(min_side(sp)) +
                     " required for this safety mode");
  const int m = mm.m;
  auto blocked = blocked_cells(g, mm, sp);
  // prefix[r][c] = blocked cells in rows < r, cols < c (0-based).
  std::vector<std::vector<int>> prefix(m + 1, std::vector<int>(m + 1, 0));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      prefix[r + 1][c + 1] = prefix[r][c + 1] + prefix[r + 1][c] - prefix[r][c] + blocked[r][c];
  auto w = safety_window(sp, m);
  for (int i = w.lo; i <= w.hi; ++i)
    for (int j = w.lo; j <= w.hi; ++j) {
      int r0 = i - w.radius - 1, r1 = i + w.radius, c0 = j - w.radius - 1, c1 = j + w.radius;
      int count = prefix[r1][c1] - prefix[r0][c1] - prefix[r1][c0] + prefix[r0][c0];
      if (count == 0) return Cell{i, j};
    }
  return std::nullopt;
}

MinorModel merge_grid(const MinorModel& mm, int r, int c) {
  if (r < 1 || r >= mm.m || c < 1 || c >= mm.m) throw InputError("merge index outside the grid");
  MinorModel out;
  out.m = mm.m - 1;
  for (auto [v, cell] : mm.cell) {
    if (cell.row > r) --cell.row;
    if (cell.col > c) --cell.col;
    out.cell.emplace(v, cell);
  }
  return out;
}

namespace {

// Checks one branch set: non-empty, connected, and joined to every
// grid neighbour.
bool cell_locally_valid(const Graph& g, const MinorModel& mm, Cell at) {
  VertexSet s(g.size());
  for (auto& [v, c] : mm.cell)
    if (c == at) s.set(g.index_of(v));
  if (s.empty() || component_sets(g, s).size() != 1) return false;
  std::set<Cell> touched;
  s.for_each([&](int i) {
    for (int j : g.neighbors(i)) touched.insert(mm.cell.at(g.id(j)));
  });
  const Cell around[4] = {{at.row - 1, at.col}, {at.row + 1, at.col}, {at.row, at.col - 1}, {at.row, at.col + 1}};
  for (Cell nb : around) {
    if (nb.row < 1 || nb.row > mm.m || nb.col < 1 || nb.col > mm.m) continue;
    if (!touched.count(nb)) return false;
  }
  return true;
}

}  // namespace

std::optional<ProvidedModel> ShrinkingModelProvider::operator()(const Graph& g) {
  if (failed_) return std::nullopt;
  std::set<Cell> damaged;
  for (auto it = current_.cell.begin(); it != current_.cell.end();) {
    if (!g.contains(it->first)) {
      damaged.insert(it->second);
      it = current_.cell.erase(it);
    } else {
      ++it;
    }
  }
  if (current_.cell.size() != static_cast<std::size_t>(g.size())) {
    failed_ = true;
    return std::nullopt;
  }
  ProvidedModel out;
  bool ok = true;
  for (Cell c : damaged)
    if (!cell_locally_valid(g, current_, c)) {
      ok = false;
      break;
    }
  if (!ok) {
    // Merge the first damaged cell's row and column with a neighbouring row
    // and column; the first combination that validates wins.
    Cell c = *damaged.begin();
    bool repaired = false;
    for (int r : {c.row, c.row - 1}) {
      for (int col : {c.col, c.col - 1}) {
        if (repaired || r < 1 || r >= current_.m || col < 1 || col >= current_.m) continue;
        MinorModel cand = merge_grid(current_, r, col);
        if (validate_model(g, cand).valid) {
          current_ = std::move(cand);
          out.merges.push_back({r, col});
          repaired = true;
        }
      }
    }
    if (!repaired) {
      failed_ = true;
      return std::nullopt;
    }
  }
  out.model = current_;
  return out;
}

ModelProvider no_model_provider() {
  return [](const Graph&) { return std::optional<ProvidedModel>{}; };
}

namespace {

long long sat_mul(long long a, long long b) {
  const long long cap = 1LL << 60;
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return a * b;
}

long long sat_pow(long long base, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

long long case1_threshold(int k, int d) { return sat_pow(k + d, 2LL * (k + d)); }

long long small_degree_side(int k, int d) {
  return sat_mul(sat_mul(4LL * k + 5, 4LL * k + 5), case1_threshold(k, d)) + 4LL * k + 5;
}

long long sequence_side(int k, int d, int p) {
  long long inner = case1_threshold(k, d) + sat_mul(p, sat_mul(k, k));
  return sat_mul(inner, sat_mul(8LL * k + 5, 8LL * k + 5));
}

std::vector<VertexId> case1_component(const Graph& g, int k, int d) {
  if (k + d <= 1) return {};
  const long long threshold = case1_threshold(k, d);
  for (auto& comp : component_sets(g, g.all())) {
    long long high = 0;
    comp.for_each([&](int v) {
      if (g.degree(v) >= d + 1) ++high;
    });
    if (high > threshold) {
      std::vector<VertexId> ids;
      comp.for_each([&](int v) { ids.push_back(g.id(v)); });
      return ids;
    }
  }
  return {};
}

ReductionResult reduce_small_degree(const Graph& g, int k, int d, const ModelProvider& provider) {
  ReductionResult res;
  res.graph = g;
  // Deletions only lower degrees, so the count is checked once.
  res.case1_component = case1_component(g, k, d);
  if (!res.case1_component.empty()) {
    res.case1 = true;
    res.stop_reason = "case-1 high-degree count";
    return res;
  }
  SafetyParams sp{k, d, SafetyMode::Safe, {}, {}};
  while (true) {
    auto pm = provider(res.graph);
    if (!pm) {
      res.stop_reason = "no grid model";
      break;
    }
    if (pm->model.m < min_side(sp)) {
      res.stop_reason = "grid side below " + std::to_string(min_side(sp));
      break;
    }
    auto cell = find_safe_branch_set(res.graph, pm->model, sp);
    if (!cell) {
      res.stop_reason = "no safe branch set";
      break;
    }
    VertexId a = -1;
    for (auto& [v, c] : pm->model.cell)
      if (c == *cell) {
        a = v;
        break;
      }
    res.steps.push_back({pm->model.m, *cell, a, pm->merges});
    res.graph = delete_vertices(res.graph, {a});
  }
  return res;
}

GeneratedInstance generate_decorated_grid(int m, int k, int d, const Decorations& dec, unsigned seed) {
  if (m < 3) throw InputError("grid side must be at least 3");
  if (k < 0 || d < 0) throw InputError("k and d must be non-negative");
  if (dec.hubs < 0 || dec.subdivide < 0 || dec.pendants < 0) throw InputError("decoration counts must be non-negative");
  const int hub_degree = dec.hub_degree < 0 ? k + d + 1 : dec.hub_degree;
  if (dec.hubs > 0 && hub_degree < 1) throw InputError("hub degree must be at least 1");
  if (!dec.hub_cells.empty() && static_cast<int>(dec.hub_cells.size()) != dec.hubs)
    throw InputError("hub placement lists " + std::to_string(dec.hub_cells.size()) + " cells for " +
                     std::to_string(dec.hubs) + " hubs");
  if (dec.hubs > m * m) throw InputError("more hubs than cells");

  std::mt19937 rng(seed);
  GeneratedInstance out;
  std::vector<Edge> edges;
  std::vector<Cell> cell_of;
  auto add_vertex = [&](Cell c) {
    cell_of.push_back(c);
    return static_cast<VertexId>(cell_of.size() - 1);
  };
  std::vector<VertexId> first(m * m);
  std::vector<VertexId> base;
  std::vector<size_t> inter_cell;  // indices into edges
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      VertexId x = add_vertex({i, j});
      first[(i - 1) * m + j - 1] = x;
      base.push_back(x);
      if (dec.style == CellStyle::Brick) {
        VertexId y = add_vertex({i, j});
        base.push_back(y);
        edges.emplace_back(x, y);
      }
    }
  auto second = [&](int i, int j) {
    VertexId x = first[(i - 1) * m + j - 1];
    return dec.style == CellStyle::Brick ? x + 1 : x;
  };
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      VertexId x = first[(i - 1) * m + j - 1];
      if (j > 1) {
        inter_cell.push_back(edges.size());
        edges.emplace_back(second(i, j - 1), x);
      }
      if (i > 1) {
        inter_cell.push_back(edges.size());
        edges.emplace_back(second(i - 1, j), x);
      }
    }

  std::vector<Cell> hub_cells = dec.hub_cells;
  if (hub_cells.empty() && dec.hubs > 0) {
    std::vector<int> all(m * m);
    for (int t = 0; t < m * m; ++t) all[t] = t;
    std::shuffle(all.begin(), all.end(), rng);
    for (int h = 0; h < dec.hubs; ++h) hub_cells.push_back({all[h] / m + 1, all[h] % m + 1});
  }
  std::set<Cell> distinct;
  for (Cell c : hub_cells) {
    if (c.row < 1 || c.row > m || c.col < 1 || c.col > m) throw InputError("hub cell outside the grid");
    if (!distinct.insert(c).second) throw InputError("two hubs in one cell");
    VertexId h = add_vertex(c);
    edges.emplace_back(first[(c.row - 1) * m + c.col - 1], h);
    for (int t = 1; t < hub_degree; ++t) edges.emplace_back(h, add_vertex(c));
    out.hubs.push_back(h);
  }
  out.hub_cells = hub_cells;

  if (dec.subdivide > static_cast<int>(inter_cell.size())) throw InputError("more subdivisions than grid edges");
  std::shuffle(inter_cell.begin(), inter_cell.end(), rng);
  std::vector<size_t> chosen(inter_cell.begin(), inter_cell.begin() + dec.subdivide);
  std::sort(chosen.begin(), chosen.end());
  for (size_t e : chosen) {
    auto [x, y] = edges[e];
    VertexId s = add_vertex(cell_of[x]);
    edges[e] = {x, s};
    edges.emplace_back(s, y);
  }
  for (int t = 0; t < dec.pendants; ++t) {
    VertexId x = base[std::uniform_int_distribution<size_t>(0, base.size() - 1)(rng)];
    edges.emplace_back(x, add_vertex(cell_of[x]));
  }

  out.graph = Graph(static_cast<int>(cell_of.size()), edges);
  out.model.m = m;
  for (VertexId v = 0; v < static_cast<VertexId>(cell_of.size()); ++v) out.model.cell[v] = cell_of[v];
  return out;
}

MinorModel parse_model(std::istream& in) {
  MinorModel mm;
  bool has_m = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first, extra;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& what) {
      throw InputError("model line " + std::to_string(lineno) + ": " + what);
    };
    if (first == "m") {
      if (!(ls >> mm.m) || mm.m < 1 || (ls >> extra)) fail("expected `m <side>`");
      has_m = true;
      continue;
    }
    int row, col;
    VertexId v;
    std::istringstream fs(first);
    if (!(fs >> v) || !fs.eof() || !(ls >> row >> col) || (ls >> extra)) fail("expected `v row col`");
    if (!mm.cell.emplace(v, Cell{row, col}).second) fail("vertex assigned twice");
  }
  if (!has_m) throw InputError("model file lacks `m <side>` header");
  return mm;
}

MinorModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return parse_model(in);
}

void write_model(std::ostream& out, const MinorModel& mm) {
  out << "m " << mm.m << "\n";
  for (auto& [v, c] : mm.cell) out << v << " " << c.row << " " << c.col << "\n";
}

}  // namespace elimdeg
