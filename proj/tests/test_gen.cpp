#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hembed/bench.hpp"
#include "hembed/errors.hpp"
#include "hembed/gen.hpp"
#include "hembed/line.hpp"
#include "test_util.hpp"

using namespace hembed;

TEST_CASE("generation is deterministic in the spec") {
  InstanceSpec s;
  s.family = Family::RandomTree;
  s.size = 9;
  s.seed = 77;
  Instance a = generate(s);
  Instance b = generate(s);
  CHECK(a.id == b.id);
  CHECK(a.g.to_edge_list() == b.g.to_edge_list());
  s.family = Family::Caterpillar;
  s.size = 6;
  s.pendant_rate = 0.5;
  CHECK(generate(s).g.to_edge_list() == generate(s).g.to_edge_list());
}

TEST_CASE("cycle instances pair with the triangle") {
  InstanceSpec s;
  s.family = Family::Cycle;
  s.size = 8;
  Instance inst = generate(s);
  CHECK(inst.g.n() == 8);
  CHECK(inst.g.m() == 8);
  for (int v = 0; v < 8; ++v)
    CHECK(inst.g.neighbors(v).size() == 2);
  CHECK(inst.pattern.k() == 3);
  CHECK(inst.pattern.is_cycle_shape());
  CHECK(inst.id == "cycle-n8");
}

TEST_CASE("subdivided star without pendants is an exact subdivision") {
  InstanceSpec s;
  s.family = Family::SubdividedH;
  s.pattern = PatternGraph::star(3);
  s.subdiv = 5;
  Instance inst = generate(s);
  CHECK(inst.g.n() == 16);
  CHECK(inst.g.m() == 15);
  std::vector<int> degs;
  for (int v = 0; v < inst.g.n(); ++v)
    degs.push_back(static_cast<int>(inst.g.neighbors(v).size()));
  CHECK(std::count(degs.begin(), degs.end(), 3) == 1);
  CHECK(std::count(degs.begin(), degs.end(), 1) == 3);
  CHECK(std::count(degs.begin(), degs.end(), 2) == 12);
  CHECK(inst.g.diameter() == 10);
}

TEST_CASE("pendant rate one hangs a leaf on every spine vertex") {
  InstanceSpec s;
  s.family = Family::Caterpillar;
  s.size = 4;
  s.pendant_rate = 1.0;
  CHECK(generate(s).g.n() == 8);
  s.pendant_rate = 0.0;
  CHECK(generate(s).g.n() == 4);
}

TEST_CASE("random trees are connected trees") {
  for (int n : {1, 2, 5, 9})
    for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      InstanceSpec s;
      s.family = Family::RandomTree;
      s.size = n;
      s.seed = seed;
      Instance inst = generate(s);
      CHECK(inst.g.n() == n);
      CHECK(inst.g.m() == n - 1);
      CHECK(inst.g.connected());
    }
}

TEST_CASE("the clique instance refuses distortion one") {
  InstanceSpec s;
  s.family = Family::Clique;
  s.size = 8;
  Instance inst = generate(s);
  CHECK(inst.pattern.h() == 1);
  CHECK(min_line_distortion_oracle(inst.g).distortion > Rat(1));
}

TEST_CASE("generator parameter checks") {
  InstanceSpec s;
  s.family = Family::Cycle;
  s.size = 2;
  CHECK_THROWS_AS(generate(s), ParamError);
  s.family = Family::Spider;
  s.size = 3;
  s.legs = 0;
  CHECK_THROWS_AS(generate(s), ParamError);
  s.family = Family::SubdividedH;
  s.legs = 3;
  s.subdiv = 0;
  CHECK_THROWS_AS(generate(s), ParamError);
  s.subdiv = 1;
  s.pattern = PatternGraph(1, {{0, 0}});
  CHECK_THROWS_AS(generate(s), ParamError);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::SubdividedH, Family::Cycle, Family::Spider,
                   Family::Caterpillar, Family::RandomTree, Family::Clique})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK(!family_from_name("grid"));
}

TEST_CASE("benchmark corpus has the announced shape") {
  auto corpus = make_benchmark_corpus();
  CHECK(corpus.size() == 200);
  int gadget = 0;
  std::set<std::string> ids;
  for (const auto& entry : corpus) {
    CHECK(entry.inst.g.n() <= 7);
    CHECK(entry.inst.g.connected());
    bool edge_pat = entry.inst.pattern.h() == 1;
    bool tri_pat =
        entry.inst.pattern.k() == 3 && entry.inst.pattern.is_cycle_shape();
    CHECK((edge_pat || tri_pat));
    CHECK(entry.c >= 1);
    CHECK(entry.c <= 3);
    if (entry.gadget) {
      ++gadget;
      // composite hosts stay small under these combinations only
      CHECK((entry.c == 1 || (entry.c == 2 && edge_pat)));
    }
    ids.insert(entry.inst.id);
  }
  CHECK(gadget >= 20);
  CHECK(ids.size() == corpus.size());
}

TEST_CASE("bench rows cross check against the oracle") {
  auto corpus = make_benchmark_corpus();
  corpus.resize(15);
  auto rows = run_bench(corpus, {"oracle", "fpt", "approx"}, 500'000, 2);
  CHECK(rows.size() == 45);
  for (const auto& r : rows) {
    CHECK((r.verdict == "YES" || r.verdict == "NO"));
    CHECK(!r.oracle_opt.empty());
    CHECK((r.verdict == "YES") == !r.distortion.empty());
    if (!r.distortion.empty())
      CHECK(rat_from_string(r.distortion) >= rat_from_string(r.oracle_opt));
    if (r.algo == "fpt" || r.algo == "oracle") {
      bool yes = rat_from_string(r.oracle_opt) <= Rat(r.c);
      CHECK((r.verdict == "YES") == yes);
    }
  }
}

TEST_CASE("bench output is stable apart from timing") {
  auto corpus = make_benchmark_corpus();
  corpus.resize(6);
  auto a = run_bench(corpus, {"oracle", "fpt"}, 500'000, 3);
  auto b = run_bench(corpus, {"oracle", "fpt"}, 500'000, 1);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].algo == b[i].algo);
    CHECK(a[i].verdict == b[i].verdict);
    CHECK(a[i].distortion == b[i].distortion);
    CHECK(a[i].oracle_opt == b[i].oracle_opt);
  }
  std::string csv = bench_csv(a);
  CHECK(csv.rfind("id,family,n,h,c,algo,verdict,distortion,oracle_opt,micros",
                  0) == 0);
}
