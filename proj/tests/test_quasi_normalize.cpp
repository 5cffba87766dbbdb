#include <doctest.h>

#include "hembed/errors.hpp"
#include "hembed/json_io.hpp"
#include "hembed/normalize.hpp"
#include "hembed/quasi.hpp"
#include "hembed/rng.hpp"
#include "test_util.hpp"

using namespace hembed;
using namespace hembed_test;

TEST_CASE("quasi shapes of a single edge") {
  auto qs = enumerate_quasi_subgraphs(PatternGraph::single_edge());
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].graph.h() == 1);
  CHECK(qs[1].graph.k() == 1);
  CHECK(qs[1].graph.h() == 0);
}

TEST_CASE("quasi shapes of a triangle") {
  auto qs = enumerate_quasi_subgraphs(PatternGraph::triangle());
  // Triangle, the four paths P5..P2 (splits open the cycle), and the vertex.
  REQUIRE(qs.size() == 6);
  bool has_triangle = false, has_p5 = false;
  for (const auto& q : qs) {
    if (patterns_isomorphic(q.graph, PatternGraph::triangle())) has_triangle = true;
    if (patterns_isomorphic(q.graph, PatternGraph::path(5))) {
      has_p5 = true;
      CHECK(q.split_edges.size() == 1);
    }
  }
  CHECK(has_triangle);
  CHECK(has_p5);
  CHECK(qs.back().graph.k() == 1);
  // Shape count stays under the coarse 2^(5h) ceiling.
  CHECK(qs.size() <= (1u << (5 * 3)));
}

TEST_CASE("quasi enumeration refuses oversized bases") {
  PatternGraph big(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}});
  CHECK_THROWS_AS(enumerate_quasi_subgraphs(big), SizeError);
}

namespace {

Embedding c4_pushed_line() {
  Graph g = cycle_graph(4);
  WeightedSubdivision host(PatternGraph::single_edge(), {Rat(3)},
                           {{Rat(1), Rat(2)}});
  return Embedding(g, host,
                   {HostPoint::at_vertex(0), HostPoint::interior(0, 0),
                    HostPoint::interior(0, 1), HostPoint::at_vertex(1)});
}

}  // namespace

TEST_CASE("normalization leaves a proper pushing embedding alone") {
  auto res = normalize_to_proper_pushing(c4_pushed_line());
  CHECK(res.rounds == 0);
  CHECK(res.report.distortion == 3);
  CHECK(embedding_to_string(res.embedding) == embedding_to_string(c4_pushed_line()));
}

TEST_CASE("gap shrinking restores pushing") {
  Graph g = path_graph(3);
  WeightedSubdivision host(PatternGraph::single_edge(), {Rat(4)},
                           {{Rat(2)}});
  Embedding emb(g, host,
                {HostPoint::at_vertex(0), HostPoint::interior(0, 0),
                 HostPoint::at_vertex(1)});
  auto res = normalize_to_proper_pushing(emb);
  CHECK(res.rounds == 1);
  CHECK(is_pushing(res.embedding));
  CHECK(res.report.distortion == 1);
  CHECK(res.embedding.host().length(0) == 2);
}

TEST_CASE("dangling tail is amputated") {
  Graph g = path_graph(2);
  WeightedSubdivision host(PatternGraph::single_edge(), {Rat(5)}, {{Rat(1)}});
  Embedding emb(g, host,
                {HostPoint::at_vertex(0), HostPoint::interior(0, 0)});
  auto res = normalize_to_proper_pushing(emb);
  CHECK(res.embedding.host().length(0) == 1);
  CHECK(res.report.distortion == 1);
  CHECK(is_proper(res.embedding));
  CHECK(is_pushing(res.embedding));
}

TEST_CASE("unused host branch is removed") {
  Graph g = path_graph(3);
  WeightedSubdivision host(PatternGraph::star(3), {Rat(1), Rat(1), Rat(5)},
                           {{}, {}, {}});
  // Center and the first two leaves are occupied; the long third leg is not.
  Embedding emb(g, host,
                {HostPoint::at_vertex(1), HostPoint::at_vertex(0),
                 HostPoint::at_vertex(2)});
  auto res = normalize_to_proper_pushing(emb);
  CHECK(res.embedding.host().pattern().k() == 3);
  CHECK(res.embedding.host().pattern().h() == 2);
  CHECK(res.report.distortion == 1);
}

TEST_CASE("bypassed parallel edge disappears") {
  Graph g = path_graph(2);
  PatternGraph two(2, {{0, 1}, {0, 1}});
  WeightedSubdivision host(two, {Rat(1), Rat(10)}, {{}, {}});
  Embedding emb(g, host, {HostPoint::at_vertex(0), HostPoint::at_vertex(1)});
  auto res = normalize_to_proper_pushing(emb);
  CHECK(res.embedding.host().pattern().h() == 1);
  CHECK(res.embedding.host().length(0) == 1);
  CHECK(res.report.distortion == 1);
}

TEST_CASE("contracting input is refused") {
  Graph g = cycle_graph(4);
  WeightedSubdivision host(PatternGraph::single_edge(), {Rat(3)},
                           {{Rat(1), Rat(2)}});
  Embedding emb(g, host,
                {HostPoint::at_vertex(0), HostPoint::interior(0, 0),
                 HostPoint::at_vertex(1), HostPoint::interior(0, 1)});
  CHECK_THROWS_AS(normalize_to_proper_pushing(emb), ContractError);
}

TEST_CASE("single vertex flattens to the trivial host") {
  Graph g(1, {});
  WeightedSubdivision host(PatternGraph::single_edge(), {Rat(3)}, {{Rat(1)}});
  Embedding emb(g, host, {HostPoint::interior(0, 0)});
  auto res = normalize_to_proper_pushing(emb);
  CHECK(res.embedding.host().pattern().k() == 1);
  CHECK(res.embedding.host().pattern().h() == 0);
}

TEST_CASE("normalization is idempotent on perturbed inputs") {
  SplitMix64 rng(0xbead5);
  for (int trial = 0; trial < 25; ++trial) {
    // A pushed path embedding with inflated gaps and a dangling tail.
    int n = 3 + static_cast<int>(rng.next_below(4));
    Graph g = path_graph(n);
    std::vector<Rat> pos{Rat(0)};
    for (int i = 1; i < n; ++i) {
      Rat gap = Rat(1 + static_cast<long long>(rng.next_below(3)));
      pos.push_back(pos.back() + gap);
    }
    Rat tail = Rat(static_cast<long long>(rng.next_below(4)));
    std::vector<Rat> offsets(pos.begin() + 1, pos.end());
    WeightedSubdivision host(PatternGraph::single_edge(),
                             {pos.back() + tail + 1}, {offsets});
    std::vector<HostPoint> img{HostPoint::at_vertex(0)};
    for (int i = 1; i < n; ++i) img.push_back(HostPoint::interior(0, i - 1));
    Embedding emb(g, host, img);
    auto rep_in = distortion(emb);
    auto res = normalize_to_proper_pushing(emb);
    CHECK(is_proper(res.embedding));
    CHECK(is_pushing(res.embedding));
    CHECK(res.report.distortion <= rep_in.distortion);
    auto res2 = normalize_to_proper_pushing(res.embedding);
    CHECK(res2.rounds == 0);
    CHECK(embedding_to_string(res2.embedding) ==
          embedding_to_string(res.embedding));
  }
}
