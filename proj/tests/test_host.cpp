#include <doctest.h>

#include "hembed/errors.hpp"
#include "hembed/host.hpp"
#include "test_util.hpp"

using namespace hembed;
using namespace hembed_test;

TEST_CASE("rational round trip") {
  CHECK(rat_to_string(rat_of(6, 4)) == "3/2");
  CHECK(rat_to_string(rat_of(-3, 6)) == "-1/2");
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string("-14/4") == rat_of(-7, 2));
  CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/-2"), ParseError);
  CHECK_THROWS_AS(rat_from_string(""), ParseError);
}

TEST_CASE("subdivision validation") {
  PatternGraph k2 = PatternGraph::single_edge();
  CHECK_THROWS_AS(WeightedSubdivision(k2, {Rat(0)}, {{}}), ModelError);
  CHECK_THROWS_AS(WeightedSubdivision(k2, {Rat(2)}, {{Rat(2)}}), ModelError);
  CHECK_THROWS_AS(WeightedSubdivision(k2, {Rat(2)}, {{Rat(1), Rat(1)}}), ModelError);
  CHECK_THROWS_AS(WeightedSubdivision(PatternGraph(3, {{0, 1}}), {Rat(1)}, {{}}),
                  ModelError);
  WeightedSubdivision ok(k2, {Rat(2)}, {{Rat(1), rat_of(3, 2)}});
  CHECK(ok.interior_count(0) == 2);
  CHECK(ok.total_points() == 4);
}

TEST_CASE("distances on a subdivided triangle") {
  // Side lengths 3, 4, 5 with one marker on the long side.
  WeightedSubdivision host(PatternGraph::triangle(), {Rat(3), Rat(4), Rat(5)},
                           {{}, {}, {Rat(1)}});
  CHECK(host.vertex_distance(0, 1) == 3);
  CHECK(host.vertex_distance(1, 2) == 4);
  // Vertex 2 to vertex 0: direct edge 5 beats 3+4.
  CHECK(host.vertex_distance(2, 0) == 5);
  HostPoint m = HostPoint::interior(2, 0);  // 1 from vertex 2 toward 0
  CHECK(host.host_distance(m, HostPoint::at_vertex(2)) == 1);
  CHECK(host.host_distance(m, HostPoint::at_vertex(0)) == 4);
  CHECK(host.host_distance(m, HostPoint::at_vertex(1)) == 5);
}

TEST_CASE("same edge points may be closer around the pattern") {
  // Two parallel edges of lengths 10 and 1; points near opposite ends of the
  // long edge are closer through the short edge.
  PatternGraph two(2, {{0, 1}, {0, 1}});
  WeightedSubdivision host(two, {Rat(10), Rat(1)}, {{Rat(1), Rat(9)}, {}});
  HostPoint a = HostPoint::interior(0, 0);
  HostPoint b = HostPoint::interior(0, 1);
  CHECK(host.host_distance(a, b) == 3);  // 1 back + 1 across + 1 in
}

TEST_CASE("loop geometry") {
  // A loop of circumference 4 at vertex 0 with markers at 1 and 3.
  PatternGraph loop(1, {{0, 0}});
  WeightedSubdivision host(loop, {Rat(4)}, {{Rat(1), Rat(3)}});
  HostPoint a = HostPoint::interior(0, 0);
  HostPoint b = HostPoint::interior(0, 1);
  // Around the near side of the loop: 1 + 1 = 2 beats |3-1| = 2; equal here.
  CHECK(host.host_distance(a, b) == 2);
  CHECK(host.host_distance(a, HostPoint::at_vertex(0)) == 1);
  CHECK(host.host_distance(b, HostPoint::at_vertex(0)) == 1);
}

TEST_CASE("host distances agree with an expanded weighted graph") {
  // Haphazard host: triangle plus pendant edge, fractional lengths.
  PatternGraph pat(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  WeightedSubdivision host(
      pat, {rat_of(7, 2), rat_of(5, 3), Rat(2), rat_of(9, 4)},
      {{Rat(1), Rat(3)}, {rat_of(1, 3)}, {}, {rat_of(3, 4), rat_of(3, 2)}});
  ExpandedHost ex(host);
  std::vector<HostPoint> pts;
  for (int v = 0; v < pat.k(); ++v) pts.push_back(HostPoint::at_vertex(v));
  for (int e = 0; e < pat.h(); ++e)
    for (int i = 0; i < host.interior_count(e); ++i)
      pts.push_back(HostPoint::interior(e, i));
  for (const auto& a : pts)
    for (const auto& b : pts)
      CHECK(host.host_distance(a, b) == ex.dist(a, b));
}
