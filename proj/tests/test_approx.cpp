#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "hembed/approx.hpp"
#include "hembed/embedding.hpp"
#include "hembed/errors.hpp"
#include "hembed/line.hpp"
#include "test_util.hpp"

using namespace hembed;
using namespace hembed_test;

namespace {

// Two junctions 0 and 1 joined by three vertex-disjoint paths of equal length.
Graph theta_graph(int len) {
  std::vector<std::pair<int, int>> es;
  int next = 2;
  for (int p = 0; p < 3; ++p) {
    int prev = 0;
    for (int i = 0; i < len - 1; ++i) {
      es.push_back({prev, next});
      prev = next++;
    }
    es.push_back({prev, 1});
  }
  return Graph(next, es);
}

// Centers 0 and 1 joined by a bridge path, two dangling legs on each center.
Graph h_shape(int leg, int bridge) {
  std::vector<std::pair<int, int>> es;
  int next = 2;
  int prev = 0;
  for (int i = 0; i < bridge - 1; ++i) {
    es.push_back({prev, next});
    prev = next++;
  }
  es.push_back({prev, 1});
  for (int center : {0, 0, 1, 1}) {
    prev = center;
    for (int i = 0; i < leg; ++i) {
      es.push_back({prev, next});
      prev = next++;
    }
  }
  return Graph(next, es);
}

// Every recorded non-final layer must be split exactly into the two sides.
void require_partition(const SearchTrace& t, std::size_t upto) {
  for (std::size_t k = 0; k < upto && k < t.layers.size(); ++k) {
    const SearchLayer& lay = t.layers[k];
    std::vector<int> merged = lay.xl;
    merged.insert(merged.end(), lay.xr.begin(), lay.xr.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == lay.x);
  }
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<std::pair<int, int>> es;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1u) es.push_back(all[i]);
    Graph g(n, es);
    if (g.connected()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("parameter bundle is exact") {
  ApproxParams p = ApproxParams::make(1, 1);
  CHECK(p.ell == 20);
  CHECK(p.r == 100);
  CHECK(p.c_alg == Int("32768000000"));

  ApproxParams q = ApproxParams::make(1, 3);
  CHECK(q.ell == 20);
  CHECK(q.r == 300);
  CHECK(q.c_alg == Int(64000000) * ipow(Int(4), 9));

  ApproxParams w = ApproxParams::make(2, 3);
  CHECK(w.ell == 160);
  CHECK(w.r == 2400);
  CHECK(w.c_alg == Int("281474976710656000000"));

  CHECK_THROWS_AS(ApproxParams::make(0, 1), ParamError);
  CHECK_THROWS_AS(ApproxParams::make(1, 0), ParamError);
}

TEST_CASE("guided probe exhausts a path") {
  Graph g = path_graph(200);
  SearchTrace t = search(g, ApproxParams::make(1, 1), {}, 100);
  CHECK(t.outcome == SearchOutcome::FailExhausted);
  CHECK(t.u_hat == -1);
  CHECK(t.v_l == 98);
  CHECK(t.v_r == 102);
  CHECK(t.halt_layer == 101);
  REQUIRE(t.layers.size() == 99);
  require_partition(t, t.layers.size());
  for (int k = 0; k < 98; ++k) {
    const SearchLayer& lay = t.layers[k];
    CHECK(lay.i == 2 + k);
    CHECK(lay.xl == std::vector<int>{100 - lay.i});
    CHECK(lay.xr == std::vector<int>{100 + lay.i});
  }
  CHECK(t.layers.back().i == 100);
  CHECK(t.layers.back().xl == std::vector<int>{0});
  CHECK(t.layers.back().xr.empty());
}

TEST_CASE("guided probe classifies branch directions on a spider") {
  Graph g = spider_graph(3, 500);
  SearchTrace t = search(g, ApproxParams::make(1, 3), {}, 100);
  REQUIRE(t.outcome == SearchOutcome::Success);
  CHECK(t.v_l == 98);
  CHECK(t.v_r == 102);
  CHECK(t.halt_layer == 102);
  CHECK(t.u_hat == 502);
  REQUIRE(t.layers.size() == 101);
  require_partition(t, t.layers.size());
  for (int k = 0; k <= 98; ++k) {
    const SearchLayer& lay = t.layers[k];
    CHECK(lay.i == 2 + k);
    CHECK(lay.xl == std::vector<int>{100 - lay.i});
    CHECK(lay.xr == std::vector<int>{100 + lay.i});
  }
  CHECK(t.layers[99].i == 101);
  CHECK(t.layers[99].xl == std::vector<int>{501, 1001});
  CHECK(t.layers[99].xr == std::vector<int>{201});
  CHECK(t.layers[100].i == 102);
  CHECK(t.layers[100].xl == std::vector<int>{502, 1002});
  CHECK(t.layers[100].xr == std::vector<int>{202});
  CHECK(g.dist(t.u_hat, 0) <= 2 * 20 * 3);
}

TEST_CASE("guided probe halts at the protected zone") {
  Graph g = spider_graph(3, 500);
  ApproxParams p = ApproxParams::make(1, 3);
  SearchTrace t = search(g, p, {0}, 450);
  CHECK(t.outcome == SearchOutcome::FailNearF);
  CHECK(t.halt_layer == 150);
  CHECK(t.u_hat == -1);

  CHECK_THROWS_AS(search(g, p, {0}, 100), ParamError);
  CHECK_THROWS_AS(search(g, p, {0, 9999}, 450), ParamError);
}

TEST_CASE("guided probe splits two junction directions") {
  Graph g = theta_graph(60);
  SearchTrace t = search(g, ApproxParams::make(1, 1), {}, 31);
  REQUIRE(t.outcome == SearchOutcome::Success);
  CHECK(t.v_l == 29);
  CHECK(t.v_r == 33);
  CHECK(t.halt_layer == 32);
  CHECK(t.u_hat == 62);
  require_partition(t, t.layers.size());
  const SearchLayer& mid30 = t.layers[28];
  CHECK(mid30.i == 30);
  CHECK(mid30.xl == std::vector<int>{0});
  CHECK(mid30.xr == std::vector<int>{1});
  const SearchLayer& mid31 = t.layers[29];
  CHECK(mid31.i == 31);
  CHECK(mid31.xl == std::vector<int>{61, 120});
  CHECK(mid31.xr == std::vector<int>{119, 178});
}

TEST_CASE("cover emits the empty set on a path") {
  Graph g = path_graph(200);
  auto fam = cover(g, ApproxParams::make(1, 1));
  REQUIRE(fam.size() == 1);
  CHECK(fam[0].empty());
}

TEST_CASE("cover pins the hub of a spider") {
  Graph g = spider_graph(3, 500);
  ApproxParams p = ApproxParams::make(1, 3);
  auto fam = cover(g, p);
  REQUIRE(fam.size() == 1);
  CHECK(fam[0] == std::vector<int>{0});
}

TEST_CASE("cover collects far apart junctions") {
  Graph g = h_shape(500, 500);
  ApproxParams p = ApproxParams::make(1, 3);
  auto fam = cover(g, p);
  REQUIRE(fam.size() == 1);
  CHECK(fam[0] == std::vector<int>{0, 1});
  CHECK(fam.size() <= (1u << p.h));
  for (const auto& f : fam) {
    CHECK((int)f.size() <= p.h);
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = a + 1; b < f.size(); ++b)
        CHECK(g.dist(f[a], f[b]) > p.r);
  }
}

TEST_CASE("stitch lays a path on one edge") {
  Graph g = path_graph(200);
  auto emb = stitch(g, ApproxParams::make(1, 1), {});
  REQUIRE(emb.has_value());
  CHECK(emb->host().pattern().k() == 2);
  CHECK(emb->host().pattern().h() == 1);
  DistortionReport rep = distortion(*emb);
  CHECK(rep.non_contracting);
  CHECK(rep.distortion == rat_of(1));
  CHECK(is_pushing(*emb));
  CHECK(is_proper(*emb));
}

TEST_CASE("stitch keeps junction loops and trims dead ends") {
  Graph g = spider_graph(3, 600);
  auto emb = stitch(g, ApproxParams::make(1, 1), {0});
  REQUIRE(emb.has_value());
  const PatternGraph& pat = emb->host().pattern();
  CHECK(pat.k() == 3);
  CHECK(pat.h() == 3);
  int loops = 0;
  for (int e = 0; e < pat.h(); ++e)
    if (pat.is_loop(e)) ++loops;
  CHECK(loops == 1);
  DistortionReport rep = distortion(*emb);
  CHECK(rep.non_contracting);
  CHECK(rep.distortion == rat_of(2001));
  CHECK(is_pushing(*emb));
  CHECK(is_proper(*emb));
}

TEST_CASE("stitch bridges two junction balls") {
  Graph g = h_shape(50, 2000);
  auto emb = stitch(g, ApproxParams::make(1, 1), {0, 1});
  REQUIRE(emb.has_value());
  const PatternGraph& pat = emb->host().pattern();
  CHECK(pat.k() == 2);
  CHECK(pat.h() == 1);
  CHECK_FALSE(pat.is_loop(0));
  DistortionReport rep = distortion(*emb);
  CHECK(rep.non_contracting);
  CHECK(rep.distortion == rat_of(1001));
  CHECK(is_pushing(*emb));
  CHECK(is_proper(*emb));
}

TEST_CASE("stitch refuses scattered leg bundles") {
  Graph g = spider_graph(3, 100);
  auto emb = stitch(g, ApproxParams::make(1, 3), {0});
  CHECK_FALSE(emb.has_value());
}

TEST_CASE("stitch rejects bad input") {
  Graph split(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(stitch(split, ApproxParams::make(1, 1), {}), ModelError);
  CHECK_THROWS_AS(cover(split, ApproxParams::make(1, 1)), ModelError);
  Graph p4 = path_graph(4);
  CHECK_THROWS_AS(stitch(p4, ApproxParams::make(1, 1), {0, 7}), ParamError);
}

TEST_CASE("pattern check maps shapes into small targets") {
  PatternGraph tri = PatternGraph::triangle();
  PatternGraph k2 = PatternGraph::single_edge();

  CHECK(topological_subgraph_check(PatternGraph::single_vertex(), tri)
            .has_value());
  CHECK(topological_subgraph_check(k2, tri).has_value());
  CHECK(topological_subgraph_check(PatternGraph::path(5), k2).has_value());
  CHECK(topological_subgraph_check(PatternGraph::cycle(5), tri).has_value());
  CHECK_FALSE(topological_subgraph_check(PatternGraph::cycle(5), k2)
                  .has_value());

  PatternGraph loop(1, {{0, 0}});
  CHECK(topological_subgraph_check(loop, loop).has_value());
  CHECK_FALSE(topological_subgraph_check(loop, tri).has_value());

  PatternGraph star3 = PatternGraph::star(3);
  CHECK(topological_subgraph_check(star3, star3).has_value());
  CHECK_FALSE(topological_subgraph_check(star3, tri).has_value());
  CHECK_FALSE(topological_subgraph_check(PatternGraph::star(4), star3)
                  .has_value());

  // K4 with every edge subdivided once, against K4 itself and against K3.
  std::vector<std::pair<int, int>> sub;
  int next = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      sub.push_back({u, next});
      sub.push_back({next, v});
      ++next;
    }
  PatternGraph k4sub(next, sub);
  std::vector<std::pair<int, int>> k4es;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4es.push_back({u, v});
  PatternGraph k4(4, k4es);
  CHECK(topological_subgraph_check(k4sub, k4).has_value());
  CHECK_FALSE(topological_subgraph_check(k4sub, tri).has_value());

  // A mapping, when produced, must be injective on branch vertices and
  // leave suppressed degree two vertices unset.
  auto phi = topological_subgraph_check(k4sub, k4);
  REQUIRE(phi.has_value());
  std::set<int> img;
  int unset = 0;
  for (int v = 0; v < k4sub.k(); ++v) {
    if ((*phi)[v] < 0)
      ++unset;
    else
      img.insert((*phi)[v]);
  }
  CHECK(unset == 6);
  CHECK(img.size() == 4);
}

TEST_CASE("pattern check rejects oversized targets") {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < 11; ++i) es.push_back({i, i + 1});
  PatternGraph big(11, es);
  CHECK_THROWS_AS(
      topological_subgraph_check(PatternGraph::single_edge(), big), SizeError);
}

TEST_CASE("approximation driver embeds easy paths") {
  ApproxOutcome out = approx_embed(path_graph(10), PatternGraph::single_edge(), 1);
  REQUIRE(out.embedding.has_value());
  CHECK(out.distortion == rat_of(1));
  CHECK(out.c_alg == Int("32768000000"));

  ApproxOutcome one = approx_embed(Graph(1, {}), PatternGraph::triangle(), 1);
  REQUIRE(one.embedding.has_value());
  CHECK(one.distortion == rat_of(1));

  ApproxOutcome none =
      approx_embed(path_graph(3), PatternGraph::single_vertex(), 1);
  CHECK_FALSE(none.embedding.has_value());
}

TEST_CASE("approximation driver rejects dense graphs") {
  ApproxOutcome out = approx_embed(clique_graph(5), PatternGraph::single_edge(), 1);
  CHECK_FALSE(out.embedding.has_value());
}

TEST_CASE("approximation driver rings a long cycle") {
  Graph g = cycle_graph(100);
  ApproxOutcome out = approx_embed(g, PatternGraph::triangle(), 1);
  REQUIRE(out.embedding.has_value());
  const Rat cap = Rat(out.c_alg);
  CHECK(out.distortion <= cap);
  DistortionReport rep = distortion(*out.embedding);
  CHECK(rep.non_contracting);
  CHECK(rep.distortion == out.distortion);
  CHECK(is_pushing(*out.embedding));
  CHECK(is_proper(*out.embedding));
}

TEST_CASE("approximation driver never refutes small line instances") {
  PatternGraph k2 = PatternGraph::single_edge();
  for (int n = 2; n <= 5; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      LineEmbedding best = min_line_distortion_oracle(g);
      for (int c : {1, 3}) {
        if (best.distortion > rat_of(c)) continue;
        ApproxOutcome out = approx_embed(g, k2, c);
        REQUIRE(out.embedding.has_value());
        const Rat cap = Rat(out.c_alg);
        CHECK(out.distortion <= cap);
      }
    }
  }
}

TEST_CASE("approximation driver gives up on short legged spiders") {
  // Junction balls swallow short legs, so every branch degenerates to a
  // single-line layout and the scatter refutation kills it. The output
  // guarantee only binds once legs outstrip the ball radius.
  ApproxOutcome out = approx_embed(spider_graph(3, 8), PatternGraph::star(3), 1);
  CHECK_FALSE(out.embedding.has_value());
}
