#pragma once

#include <compare>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elimdeg/graph.hpp"
#include "elimdeg/sequence.hpp"

namespace elimdeg {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

// Assignment of vertices to cells of an m x m grid, 1-based.
struct MinorModel {
  int m = 0;
  std::map<VertexId, Cell> cell;

  // Branch sets as id lists, indexed [row-1][col-1].
  std::vector<std::vector<std::vector<VertexId>>> branch_sets() const;
};

struct ModelReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Every vertex assigned, coordinates in range, each branch set non-empty and
// connected, and grid-adjacent branch sets joined by at least one edge.
ModelReport validate_model(const Graph& g, const MinorModel& mm);

enum class SafetyMode { Safe, SemiSafeCase31, SemiSafeCase33 };

struct SafetyParams {
  int k = 0;
  int d = 0;
  SafetyMode mode = SafetyMode::Safe;
  PortMap ports;       // ignored in Safe mode
  std::vector<int> J;  // Case 3.3 only
};

// Window radius and admissible coordinate range of a mode:
// Safe / Case 3.1: radius 2k+2, rows and columns 2k+3 .. m-2k-2;
// Case 3.3: radius 4k+2, rows and columns 4k+3 .. m-4k-2.
struct SafetyWindow {
  int radius;
  int lo;
  int hi;
};
SafetyWindow safety_window(const SafetyParams& sp, int m);
// Smallest m for which the admissible range is non-empty.
int min_side(const SafetyParams& sp);

// A cell blocks safety when it holds a vertex of degree >= d+1 in g, or (by
// mode) a vertex carrying a port (Case 3.1) or a port outside J (Case 3.3).
std::vector<std::vector<char>> blocked_cells(const Graph& g, const MinorModel& mm, const SafetyParams& sp);

// Row-major first cell meeting the mode's condition. Assumes a valid model;
// throws InputError when m < min_side(sp).
std::optional<Cell> find_safe_branch_set(const Graph& g, const MinorModel& mm, const SafetyParams& sp);

// Merge row r+1 into row r and column c+1 into column c (1-based); the
// result has side m-1.
MinorModel merge_grid(const MinorModel& mm, int r, int c);

struct GridMerge {
  int row = 0;
  int col = 0;
};

struct ProvidedModel {
  MinorModel model;
  std::vector<GridMerge> merges;  // applied since the previous query
};

// Called with the current graph after each deletion; returns a model that
// subsumes all its vertices, or nullopt.
using ModelProvider = std::function<std::optional<ProvidedModel>(const Graph&)>;

// Provider for instances with a known model: drops deleted vertices, and
// when a branch set is damaged, merges its row and column with a
// neighbouring row and column (side shrinks by one). Returns nullopt when no
// repair yields a valid model.
class ShrinkingModelProvider {
 public:
  explicit ShrinkingModelProvider(MinorModel initial) : current_(std::move(initial)) {}
  std::optional<ProvidedModel> operator()(const Graph& g);
  const MinorModel& current() const { return current_; }

 private:
  MinorModel current_;
  bool failed_ = false;
};

ModelProvider no_model_provider();

struct ReductionStep {
  int m = 0;  // side of the model the cell was found in
  Cell cell;
  VertexId vertex = 0;
  std::vector<GridMerge> merges;  // repairs applied before this step's scan
};

struct ReductionResult {
  Graph graph;
  std::vector<ReductionStep> steps;
  bool case1 = false;  // stopped on the high-degree count
  std::vector<VertexId> case1_component;
  std::string stop_reason;
};

long long case1_threshold(int k, int d);     // (k+d)^(2(k+d)), saturated
long long small_degree_side(int k, int d);   // (4k+5)^2 (k+d)^(2(k+d)) + 4k+5, saturated
long long sequence_side(int k, int d, int p);  // ((k+d)^(2(k+d)) + p k^2)(8k+5)^2, saturated

// First connected component with more than case1_threshold(k,d) vertices of
// degree >= d+1; empty when none, or when k+d <= 1 (the count bound does
// not hold there).
std::vector<VertexId> case1_component(const Graph& g, int k, int d);

// Deletes the lowest vertex of the row-major first safe branch set, one at a
// time, re-querying the provider after each deletion, until the provider
// has no model, its side drops below 4k+5, no safe branch set exists, or a
// component exceeds the Case-1 count.
ReductionResult reduce_small_degree(const Graph& g, int k, int d, const ModelProvider& provider);

enum class CellStyle { Single, Brick };

struct Decorations {
  CellStyle style = CellStyle::Single;
  int hubs = 0;
  int hub_degree = -1;  // -1 means k+d+1
  std::vector<Cell> hub_cells;  // explicit placement; random otherwise
  int subdivide = 0;
  int pendants = 0;
};

struct GeneratedInstance {
  Graph graph;
  MinorModel model;
  std::vector<VertexId> hubs;
  std::vector<Cell> hub_cells;
};

// Planar instance on an m x m grid of branch sets. Single: one vertex per
// cell, the plain grid. Brick: two adjacent vertices per cell wired as a
// honeycomb, maximum degree 3. Hubs hang hub_degree-1 leaves plus one edge
// to the cell's first vertex; subdivisions split inter-cell edges; pendants
// attach leaves. Deterministic in seed. Throws InputError on contradictory
// decorations.
GeneratedInstance generate_decorated_grid(int m, int k, int d, const Decorations& dec, unsigned seed);

// Text form: `m <side>` then `v row col` lines.
MinorModel parse_model(std::istream& in);
MinorModel read_model(const std::string& path);
void write_model(std::ostream& out, const MinorModel& mm);

}  // namespace elimdeg
