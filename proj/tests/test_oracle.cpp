#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "elimdeg/errors.hpp"
#include "elimdeg/oracle.hpp"
#include "support.hpp"

using namespace elimdeg;

TEST_CASE("elimination distance examples") {
  CHECK(elim_distance_exact(ts::edgeless(5), 0) == 0);
  CHECK(elim_distance_exact(ts::complete(4), 2) == ts::naive_ed(ts::complete(4), 2));
  CHECK(elim_distance_exact(ts::complete(4), 2) == 1);
  CHECK(elim_distance_exact(ts::path(7), 0) == ts::naive_ed(ts::path(7), 0));
  CHECK(elim_distance_exact(ts::path(7), 0) == 2);
  CHECK(treedepth_exact(ts::path(7)) == ts::vertex_counting_treedepth(ts::path(7)) - 1);
}

TEST_CASE("membership examples") {
  CHECK(member_exact(ts::cycle(6), 0, 2));
  CHECK_FALSE(member_exact(ts::complete(4), 0, 2));
  CHECK_THROWS_AS(member_exact(ts::path(3), -1, 0), InputError);
}

TEST_CASE("agreement with the literal recursion and the treedepth DP") {
  std::mt19937 rng(3);
  for (int it = 0; it < 400; ++it) {
    int n = 1 + static_cast<int>(rng() % 9);
    Graph g = ts::random_graph(rng, n, 0.1 + 0.1 * (it % 6));
    for (int d = 0; d <= 3; ++d) CHECK(elim_distance_exact(g, d) == ts::naive_ed(g, d));
    int td = ts::vertex_counting_treedepth(g) - 1;
    for (int k = 0; k <= 4; ++k) CHECK(member_exact(g, k, 0) == (td <= k));
  }
}

TEST_CASE("ed drops by at most one per deletion, on all graphs up to 6 vertices") {
  auto classes = ts::enumerate_graphs(6, false);
  const std::vector<std::size_t> expected{0, 1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) CHECK(classes[n].size() == expected[n]);
  for (int n = 1; n <= 6; ++n)
    for (const auto& s : classes[n]) {
      Graph g = s.graph();
      for (int d = 0; d <= 2; ++d) {
        int ed = elim_distance_exact(g, d);
        for (VertexId v : g.ids()) CHECK(elim_distance_exact(delete_vertices(g, {v}), d) >= ed - 1);
      }
    }
}

TEST_CASE("monotone in k and d, and order synthesis agrees") {
  auto classes = ts::enumerate_graphs(6, true);
  for (int n = 1; n <= 6; ++n)
    for (const auto& s : classes[n]) {
      Graph g = s.graph();
      for (int k = 0; k <= 2; ++k)
        for (int d = 0; d <= 2; ++d) {
          bool m = member_exact(g, k, d);
          if (m) {
            CHECK(member_exact(g, k + 1, d));
            CHECK(member_exact(g, k, d + 1));
          }
          auto o = synthesize_order(g, k, d);
          CHECK(o.has_value() == m);
          if (o) {
            auto rep = check_elimination_to_degree(g, *o, d);
            CHECK(rep.valid);
            CHECK(rep.depth <= k);
          }
        }
    }
}

TEST_CASE("members have no path through 2^k red vertices") {
  auto classes = ts::enumerate_graphs(7, false);
  long long members = 0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& s : classes[n]) {
      Graph g = s.graph();
      for (int k = 0; k <= 2; ++k)
        for (int d = 0; d <= 2; ++d) {
          if (!member_exact(g, k, d)) continue;
          ++members;
          CHECK(ts::max_reds_on_path(g, k, d) < (1 << k));
        }
    }
  CHECK(members > 0);
}

TEST_CASE("sequence satisfaction on the worked example") {
  Graph h = read_edge_list(ts::data("fig2_h.txt"));
  PortMap ports = read_ports(ts::data("fig2_h.ports"));
  KdSequence s1 = read_sequence(ts::data("fig2_s1.seq"));
  KdSequence s2 = read_sequence(ts::data("fig2_s2.seq"));
  KdSequence s3 = read_sequence(ts::data("fig2_s3.seq"));
  CHECK(sequence_satisfies_exact(h, ports, s1, 2));
  CHECK_FALSE(sequence_satisfies_exact(h, ports, s2, 2));
  CHECK(sequence_satisfies_exact(h, ports, s3, 2));

  auto w = sequence_witness(h, ports, s3, 2);
  REQUIRE(w.has_value());
  auto rep = check_elimination_to_degree(h, *w, 2);
  CHECK(rep.valid);
  CHECK(rep.depth <= 3);
  CHECK_FALSE(sequence_witness(h, ports, s2, 2).has_value());
}

TEST_CASE("sequence satisfaction rejects malformed input") {
  Graph h = read_edge_list(ts::data("fig2_h.txt"));
  PortMap ports = read_ports(ts::data("fig2_h.ports"));
  // 3 deleted but still grouped in L.
  std::istringstream in("P=1|2|3 L=1,2,3 D=3\n");
  KdSequence bad = parse_sequence(in);
  CHECK_THROWS_AS(sequence_satisfies_exact(h, ports, bad, 2), InputError);
  // Port index beyond p.
  std::istringstream small("P=1|2 L=1|2 D=\n");
  CHECK_THROWS_AS(sequence_satisfies_exact(h, ports, parse_sequence(small), 2), InputError);
}

TEST_CASE("guards") {
  OracleConfig tiny;
  tiny.max_vertices = 5;
  CHECK_THROWS_AS(elim_distance_exact(ts::path(7), 0, tiny), ResourceError);
  OracleConfig few;
  few.max_states = 3;
  CHECK_THROWS_AS(elim_distance_exact(ts::complete(6), 0, few), ResourceError);
}
