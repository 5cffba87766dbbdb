#include <doctest.h>

#include <set>

#include "hembed/errors.hpp"
#include "hembed/graph.hpp"
#include "test_util.hpp"

using namespace hembed;
using namespace hembed_test;

TEST_CASE("parse keeps labels and builds the right metric") {
  Graph g = Graph::parse("10 20\n20 30 # comment\n# full comment line\n30 10\n");
  CHECK(g.n() == 3);
  CHECK(g.m() == 3);
  CHECK(g.label(0) == 10);
  CHECK(g.label(2) == 30);
  CHECK(g.index_of_label(20) == 1);
  CHECK(!g.index_of_label(99));
  CHECK(g.dist(0, 2) == 1);
  CHECK(g.diameter() == 1);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(Graph::parse(""), ParseError);
  CHECK_THROWS_AS(Graph::parse("1\n"), ParseError);
  CHECK_THROWS_AS(Graph::parse("1 1\n"), ParseError);
  CHECK_THROWS_AS(Graph::parse("1 2 3\n"), ParseError);
  CHECK_THROWS_AS(Graph::parse("-1 2\n"), ParseError);
}

TEST_CASE("duplicate edges are merged") {
  Graph g = Graph::parse("0 1\n1 0\n0 1\n");
  CHECK(g.m() == 1);
}

TEST_CASE("distances, layers and balls on a path") {
  Graph g = path_graph(6);
  CHECK(g.dist(0, 5) == 5);
  CHECK(g.eccentricity(2) == 3);
  CHECK(g.diameter() == 5);
  auto layers = g.bfs_layers(2);
  CHECK(layers.size() == 4);
  CHECK(layers[1] == std::vector<int>{1, 3});
  CHECK(g.ball(2, 1) == std::vector<int>{1, 2, 3});
  CHECK(g.ball_size(0, 2) == 3);
}

TEST_CASE("components of an induced subgraph") {
  Graph g = cycle_graph(6);
  auto comps = g.components({0, 1, 3, 4});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{3, 4});
}

TEST_CASE("multi source distances") {
  Graph g = path_graph(7);
  auto d = g.multi_source_distances({0, 6});
  CHECK(d[3] == 3);
  CHECK(d[1] == 1);
  CHECK(d[5] == 1);
}

TEST_CASE("connectivity check") {
  Graph g(4, {{0, 1}, {2, 3}});
  CHECK(!g.connected());
  CHECK(path_graph(4).connected());
}

TEST_CASE("density screen accepts paths and rejects dense balls") {
  CHECK(!local_density_reject(path_graph(50), 1, 1));
  // K5 at c=1 with a single pattern edge: a radius-1 ball holds 5 > 4.
  auto w = local_density_reject(clique_graph(5), 1, 1);
  REQUIRE(w.has_value());
  CHECK(w->r == 1);
  CHECK(w->ball == 5);
  CHECK(w->bound == 4);
  // Same graph passes at c=2.
  CHECK(!local_density_reject(clique_graph(5), 1, 2));
}

TEST_CASE("line density screen is tighter than the general one") {
  // Star with 3 leaves: ball(center, 1) = 4 > 2*1*1 + 1 = 3, yet within the
  // general bound 4*1*1*1 = 4.
  auto w = line_density_reject(star_graph(3), 1);
  REQUIRE(w.has_value());
  CHECK(w->v == 0);
  CHECK(w->bound == 3);
  CHECK(!local_density_reject(star_graph(3), 1, 1));
}

TEST_CASE("dot output mentions every edge once") {
  Graph g = path_graph(3);
  auto dot = g.to_dot();
  CHECK(dot.find("0 -- 1") != std::string::npos);
  CHECK(dot.find("1 -- 2") != std::string::npos);
}
