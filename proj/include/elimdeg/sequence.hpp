#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "elimdeg/graph.hpp"

namespace elimdeg {

// Partition of {1..p}. Block numbers are normalised: blocks are numbered in
// order of their smallest element.
class Partition {
 public:
  Partition() = default;
  // Every element of 1..p must appear in exactly one block.
  Partition(int p, const std::vector<std::vector<int>>& blocks);
  static Partition discrete(int p);
  static Partition single(int p);  // one block (empty partition when p == 0)
  static Partition from_labels(const std::vector<int>& label);  // label[j-1] for j = 1..p

  int ground() const { return static_cast<int>(block_.size()); }
  int block_of(int j) const { return block_[j - 1]; }
  int num_blocks() const { return num_blocks_; }
  std::vector<std::vector<int>> blocks() const;
  bool grouped(int a, int b) const { return block_of(a) == block_of(b); }
  bool isolated(int j) const;

  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const { return block_ < o.block_; }

 private:
  std::vector<int> block_;
  int num_blocks_ = 0;
};

// Every block of a lies inside a block of b. Throws InputError when the
// ground sets differ.
bool refines(const Partition& a, const Partition& b);
// Finest common coarsening.
Partition join(const Partition& a, const Partition& b);

// All partitions of {1..p} in lexicographic order of their normalised
// block labels.
std::vector<Partition> all_partitions(int p);

struct SequenceLevel {
  Partition P;
  Partition L;
  std::vector<int> D;  // ascending

  bool deleted(int j) const;
  bool operator==(const SequenceLevel&) const = default;
};

// (P_i, L_i, D_i) for i = 1..length(). Level i is levels[i-1].
struct KdSequence {
  int p = 0;
  std::vector<SequenceLevel> levels;

  int length() const { return static_cast<int>(levels.size()); }
  const SequenceLevel& level(int i) const { return levels[i - 1]; }
  bool operator==(const KdSequence&) const = default;
};

struct SequenceReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Length at most k, refinement chains for P and L, D monotone, every
// j in D_i isolated in L_i, all indices inside 1..p. A negative k skips the
// length bound.
SequenceReport validate_sequence(const KdSequence& s, int k);

// Port indices per vertex (the unary predicates C_1..C_p).
using PortMap = std::map<VertexId, std::vector<int>>;

struct PortedComponent {
  Graph graph;
  PortMap ports;
  int p = 0;

  std::vector<int> ports_of(VertexId v) const;
};

// Builds the ported component of quotient node c: ports are numbered 1..p
// in ascending red id, as stored in the node.
PortedComponent ported_component(const Graph& g, const ComponentNode& node);

// Extended adjacency at level i (1 <= i <= length): graph edges, a shared
// C_j with j not in D_i, or C_j, C_j' with j != j' grouped in L_i. Level 0
// means plain adjacency. Returns whether y is reachable from x in
// graph - deleted. Throws InputError on a bad level or vertex.
bool conn_extended(const PortedComponent& pc, const KdSequence& s, int i, VertexId x, VertexId y,
                   const std::vector<VertexId>& deleted);

// Extended components of graph[within] at level i, in local indices.
std::vector<VertexSet> extended_components(const PortedComponent& pc, const KdSequence& s, int i,
                                           const VertexSet& within);

// Text form, one level per line: `P=1,2|3 L=1,2,3 D=3`. p is taken as the
// largest index mentioned unless given.
KdSequence parse_sequence(std::istream& in, int p = -1);
KdSequence read_sequence(const std::string& path, int p = -1);
std::string format_partition(const Partition& x);
void write_sequence(std::ostream& out, const KdSequence& s);

// Ports file: `v j1,j2,...` per line.
PortMap parse_ports(std::istream& in);
PortMap read_ports(const std::string& path);
int max_port(const PortMap& ports);

}  // namespace elimdeg
