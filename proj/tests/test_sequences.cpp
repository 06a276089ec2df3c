#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "elimdeg/errors.hpp"
#include "elimdeg/oracle.hpp"
#include "elimdeg/satisfaction.hpp"
#include "elimdeg/sequence.hpp"
#include "support.hpp"

using namespace elimdeg;

namespace {

const OracleConfig kLarge{1 << 20, 4000000, true};

KdSequence seq(const std::string& text, int p = -1) {
  std::istringstream in(text);
  return parse_sequence(in, p);
}

PortedComponent fig2() {
  return {read_edge_list(ts::data("fig2_h.txt")), read_ports(ts::data("fig2_h.ports")), 3};
}

std::vector<VertexId> all_but(const Graph& g, std::vector<VertexId> keep) {
  std::vector<VertexId> out;
  for (VertexId v : g.ids())
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) out.push_back(v);
  return out;
}

// Random valid level for ports 1..p: random P and L, D a random subset of
// the ports isolated in L.
SequenceLevel random_level(std::mt19937& rng, int p) {
  auto parts = all_partitions(p);
  SequenceLevel lv{parts[rng() % parts.size()], parts[rng() % parts.size()], {}};
  for (int j = 1; j <= p; ++j)
    if (lv.L.isolated(j) && rng() % 2) lv.D.push_back(j);
  return lv;
}

// Grid with ports: port 1 on the given vertices, port 2 on the others.
PortedComponent ported_grid(int m, const std::vector<VertexId>& one, const std::vector<VertexId>& two) {
  PortedComponent pc{ts::grid(m), {}, 2};
  for (VertexId v : one) pc.ports[v].push_back(1);
  for (VertexId v : two) pc.ports[v].push_back(2);
  return pc;
}

}  // namespace

TEST_CASE("partitions") {
  Partition a = Partition::from_labels({7, 3, 7});
  CHECK(a.num_blocks() == 2);
  CHECK(a.block_of(1) == 0);
  CHECK(a.grouped(1, 3));
  CHECK(a.blocks() == std::vector<std::vector<int>>{{1, 3}, {2}});
  CHECK(Partition(3, {{2}, {3, 1}}) == a);
  CHECK_THROWS_AS(Partition(3, {{1, 2}}), InputError);
  CHECK_THROWS_AS(Partition(3, {{1, 2}, {2, 3}}), InputError);
  CHECK_THROWS_AS(Partition(2, {{1, 3}}), InputError);

  CHECK(refines(Partition::discrete(4), Partition::single(4)));
  CHECK_FALSE(refines(Partition::single(4), Partition::discrete(4)));
  CHECK(refines(a, a));
  CHECK_THROWS_AS(refines(Partition::single(2), Partition::single(3)), InputError);
  CHECK(join(Partition(4, {{1, 2}, {3}, {4}}), Partition(4, {{1}, {2, 3}, {4}})) == Partition(4, {{1, 2, 3}, {4}}));

  // Bell numbers.
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (int p = 0; p <= 5; ++p) CHECK(all_partitions(p).size() == bell[p]);
  for (const auto& x : all_partitions(4)) {
    CHECK(refines(Partition::discrete(4), x));
    CHECK(refines(x, Partition::single(4)));
  }
}

TEST_CASE("validate_sequence") {
  KdSequence s1 = read_sequence(ts::data("fig2_s1.seq"));
  CHECK(validate_sequence(s1, 4).valid);
  CHECK_FALSE(validate_sequence(s1, 3).valid);
  CHECK(validate_sequence(s1, -1).valid);
  CHECK(validate_sequence(read_sequence(ts::data("fig2_s3.seq")), 3).valid);
  CHECK(validate_sequence(KdSequence{}, 0).valid);

  CHECK_FALSE(validate_sequence(seq("P=1,2,3 L=1,2,3 D=3\n"), 1).valid);            // 3 grouped in L
  CHECK_FALSE(validate_sequence(seq("P=1|2|3 L=1,2,3 D=\nP=1,2|3 L=1,2,3 D=\n"), 2).valid);  // P coarsens
  CHECK_FALSE(validate_sequence(seq("P=1,2,3 L=1|2,3 D=\nP=1,2,3 L=1,2|3 D=\n"), 2).valid);  // L not refining
  CHECK_FALSE(validate_sequence(seq("P=1|2|3 L=1,2|3 D=3\nP=1|2|3 L=1,2|3 D=\n"), 2).valid);  // D drops 3
  CHECK_FALSE(validate_sequence(seq("P=1|2 L=1|2 D=5\n", 2), 1).valid);
  auto rep = validate_sequence(seq("P=1,2,3 L=1,2,3 D=3\nP=1|2|3 L=1,2|3 D=\n"), 1);
  CHECK(rep.violations.size() >= 2);
}

TEST_CASE("ported component of a contracted node") {
  Graph g = read_edge_list(ts::data("fig2_full.txt"));
  auto gq = contract(g, 5, 2);
  const ComponentNode* big = nullptr;
  for (const auto& node : gq.nodes)
    if (node.ports.size() == 3) big = &node;
  REQUIRE(big != nullptr);
  PortedComponent pc = ported_component(g, *big);
  CHECK(pc.p == 3);
  CHECK(pc.ports == read_ports(ts::data("fig2_h.ports")));
  CHECK(pc.graph.edges() == read_edge_list(ts::data("fig2_h.txt")).edges());
  CHECK(pc.ports_of(2).empty());
}

TEST_CASE("extended connectivity") {
  PortedComponent pc = fig2();
  KdSequence s2 = read_sequence(ts::data("fig2_s2.seq"));
  KdSequence s3 = read_sequence(ts::data("fig2_s3.seq"));
  // 7 carries port 2 and 10 port 3; everything else is gone.
  auto rest = all_but(pc.graph, {7, 10});
  CHECK(conn_extended(pc, s2, 3, 7, 10, rest));   // 2 and 3 grouped in L_3
  CHECK_FALSE(conn_extended(pc, s3, 3, 7, 10, rest));
  CHECK_FALSE(conn_extended(pc, s2, 0, 7, 10, rest));  // plain adjacency
  // A shared port joins unless it is deleted.
  CHECK(conn_extended(pc, s3, 3, 7, 8, all_but(pc.graph, {7, 8})));
  CHECK(conn_extended(pc, s3, 2, 10, 11, all_but(pc.graph, {10, 11})));
  CHECK_FALSE(conn_extended(pc, s3, 3, 10, 11, all_but(pc.graph, {10, 11})));
  CHECK(conn_extended(pc, s3, 0, 4, 6, {}));
  CHECK_FALSE(conn_extended(pc, s3, 0, 4, 6, {5, 0, 1}));

  CHECK_THROWS_AS(conn_extended(pc, s3, 4, 7, 8, {}), InputError);
  CHECK_THROWS_AS(conn_extended(pc, s3, 1, 7, 99, {}), InputError);
}

TEST_CASE("extended connectivity without ports is plain connectivity") {
  std::mt19937 rng(21);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + static_cast<int>(rng() % 8);
    Graph g = ts::random_graph(rng, n, 0.3);
    PortedComponent pc{g, {}, 2};
    KdSequence s{2, {random_level(rng, 2)}};
    std::vector<VertexId> del;
    for (int v = 2; v < n; ++v)
      if (rng() % 4 == 0) del.push_back(v);
    bool together = false;
    for (const auto& c : components(delete_vertices(g, del)))
      if (std::count(c.begin(), c.end(), 0) && std::count(c.begin(), c.end(), 1)) together = true;
    CHECK(conn_extended(pc, s, 1, 0, 1, del) == together);
    CHECK(conn_extended(pc, s, 0, 0, 1, del) == together);
  }
}

TEST_CASE("coarser L and smaller D only add connections") {
  std::mt19937 rng(22);
  for (int it = 0; it < 300; ++it) {
    int n = 3 + static_cast<int>(rng() % 7);
    const int p = 3;
    Graph g = ts::random_graph(rng, n, 0.2);
    PortedComponent pc{g, {}, p};
    for (int v = 0; v < n; ++v)
      for (int j = 1; j <= p; ++j)
        if (rng() % 4 == 0) pc.ports[v].push_back(j);
    for (auto it2 = pc.ports.begin(); it2 != pc.ports.end();)
      it2 = it2->second.empty() ? pc.ports.erase(it2) : std::next(it2);
    SequenceLevel fine = random_level(rng, p);
    // Coarsen L by merging everything not deleted into one block.
    SequenceLevel coarse = fine;
    std::vector<int> label(p);
    for (int j = 1; j <= p; ++j) label[j - 1] = fine.deleted(j) ? j : 0;
    coarse.L = Partition::from_labels(label);
    SequenceLevel undeleted = fine;
    undeleted.D.clear();
    KdSequence a{p, {fine}}, b{p, {coarse}}, c{p, {undeleted}};
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        bool base = conn_extended(pc, a, 1, x, y, {});
        if (base) {
          CHECK(conn_extended(pc, b, 1, x, y, {}));
          CHECK(conn_extended(pc, c, 1, x, y, {}));
        }
      }
  }
}

TEST_CASE("satisfies on the worked example") {
  PortedComponent pc = fig2();
  CHECK(satisfies(pc, read_sequence(ts::data("fig2_s1.seq")), 5, 2));
  CHECK_FALSE(satisfies(pc, read_sequence(ts::data("fig2_s2.seq")), 5, 2));
  CHECK(satisfies(pc, read_sequence(ts::data("fig2_s3.seq")), 5, 2));
  CHECK_THROWS_AS(satisfies(pc, read_sequence(ts::data("fig2_s1.seq")), 3, 2), InputError);

  MinorModel broken = ts::identity_model(3);
  CHECK_THROWS_AS(satisfies(pc, read_sequence(ts::data("fig2_s3.seq")), 5, 2, broken), InputError);
}

TEST_CASE("case_split") {
  SUBCASE("too many high-degree vertices") {
    PortedComponent pc{ts::cycle(20), {}, 0};
    KdSequence s = seq("P= L= D=\n", 0);
    auto split = case_split(pc, nullptr, s, 1, 1);
    CHECK(split.kind == CaseKind::TooManyHighDegree);
    auto res = satisfies_traced(pc, s, 1, 1);
    CHECK_FALSE(res.satisfies);
    CHECK(res.decided_by == CaseKind::TooManyHighDegree);
    CHECK_FALSE(sequence_satisfies_exact(pc.graph, pc.ports, s, 1));
  }
  SUBCASE("no model") {
    PortedComponent pc = fig2();
    CHECK(case_split(pc, nullptr, read_sequence(ts::data("fig2_s3.seq")), 5, 2).kind == CaseKind::SmallEnough);
  }
  SUBCASE("rare ports") {
    PortedComponent pc = ported_grid(9, {0}, {8});
    MinorModel mm = ts::identity_model(9);
    CHECK(case_split(pc, &mm, seq("P=1|2 L=1|2 D=\n"), 1, 4).kind == CaseKind::Case31);
  }
  SUBCASE("frequent ports split in the last P") {
    PortedComponent pc = ported_grid(9, {0, 1}, {7, 8});
    MinorModel mm = ts::identity_model(9);
    KdSequence s = seq("P=1|2 L=1|2 D=\n");
    auto split = case_split(pc, &mm, s, 1, 4);
    CHECK(split.kind == CaseKind::Case32);
    CHECK(split.j1 == 1);
    CHECK(split.j2 == 2);
    auto res = satisfies_traced(pc, s, 1, 4, mm, kLarge);
    CHECK_FALSE(res.satisfies);
    CHECK(res.decided_by == CaseKind::Case32);
    // One deletion cannot separate the two port regions of the grid.
    CHECK_FALSE(sequence_satisfies_exact(pc.graph, pc.ports, s, 4, kLarge));
  }
  SUBCASE("frequent ports kept together") {
    PortedComponent pc = ported_grid(13, {0, 1}, {11, 12});
    MinorModel mm = ts::identity_model(13);
    auto split = case_split(pc, &mm, seq("P=1,2 L=1,2 D=\n"), 1, 4);
    CHECK(split.kind == CaseKind::Case33);
    CHECK(split.J == std::vector<int>{1, 2});
    PortedComponent small = ported_grid(9, {0, 1}, {7, 8});
    MinorModel mm9 = ts::identity_model(9);
    CHECK(case_split(small, &mm9, seq("P=1,2 L=1,2 D=\n"), 1, 4).kind == CaseKind::SmallEnough);
  }
}

TEST_CASE("satisfies with a model matches the exact search") {
  // Grids of side 10 with one port in each top corner and a hub in the top
  // rows: every port lies in one branch set, so the windows around (6,6)
  // allow semi-safe deletions, which must not change the answer.
  std::mt19937 rng(31);
  int with_deletions = 0;
  for (int it = 0; it < 6; ++it) {
    const int m = 10;
    auto inst = generate_decorated_grid(m, 1, 4, Decorations{CellStyle::Single, 1, 5, {{1, 3 + it}}, 0, 0}, rng());
    PortedComponent pc{inst.graph, {{0, {1}}, {m - 1, {2}}}, 2};
    for (int t = 0; t < 3; ++t) {
      KdSequence s{2, {random_level(rng, 2)}};
      auto traced = satisfies_traced(pc, s, 1, 4, inst.model, kLarge);
      if (!traced.deleted.empty()) ++with_deletions;
      CHECK(traced.satisfies == sequence_satisfies_exact(pc.graph, pc.ports, s, 4, kLarge));
    }
  }
  CHECK(with_deletions > 0);
}

TEST_CASE("sequence text format") {
  KdSequence s3 = read_sequence(ts::data("fig2_s3.seq"));
  CHECK(s3.p == 3);
  CHECK(s3.length() == 3);
  CHECK(s3.level(3).D == std::vector<int>{3});
  CHECK(format_partition(s3.level(3).L) == "1,2|3");
  std::ostringstream out;
  write_sequence(out, s3);
  CHECK(seq(out.str()) == s3);
  CHECK(seq("P=1,2 L=1|2 D=\n", 2).p == 2);
  CHECK(seq("", 3).p == 3);
  CHECK_THROWS_AS(seq("P=1 L=1 D=\n", 4), InputError);  // a level must cover 1..p

  CHECK_THROWS_AS(seq("P=1,2 L=1 D=\n"), InputError);
  CHECK_THROWS_AS(seq("P=1,2 D=\n"), InputError);
  CHECK_THROWS_AS(seq("P=1,x L=1,2 D=\n"), InputError);
  CHECK_THROWS_AS(read_sequence("/nonexistent.seq"), InputError);

  std::istringstream ports("4 1,2\n5 3\n");
  PortMap pm = parse_ports(ports);
  CHECK(pm.at(4) == std::vector<int>{1, 2});
  CHECK(max_port(pm) == 3);
  std::istringstream bad("4 0\n");
  CHECK_THROWS_AS(parse_ports(bad), InputError);
}
