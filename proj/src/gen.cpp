#include "hembed/gen.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "hembed/errors.hpp"
#include "hembed/rng.hpp"

namespace hembed {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

void add_pendants(EdgeList& e, int& n, int base_n, double rate,
                  SplitMix64& rng) {
  if (rate <= 0.0) return;
  for (int v = 0; v < base_n; ++v)
    if (rng.next_unit() < rate) e.push_back({v, n++});
}

int pct(double rate) { return static_cast<int>(std::lround(rate * 100.0)); }

std::string pattern_slug(const PatternGraph& p) {
  if (p.k() == 2 && p.h() == 1) return "k2";
  if (p.k() == 3 && p.h() == 3 && p.is_cycle_shape()) return "k3";
  if (p.k() >= 2 && p.h() == p.k() - 1 && p.degree(0) == p.k() - 1)
    return "star" + std::to_string(p.k() - 1);
  return "v" + std::to_string(p.k()) + "e" + std::to_string(p.h());
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::SubdividedH: return "subdivided-h";
    case Family::Cycle: return "cycle";
    case Family::Spider: return "spider";
    case Family::Caterpillar: return "caterpillar";
    case Family::RandomTree: return "random-tree";
    case Family::Clique: return "clique";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::SubdividedH, Family::Cycle, Family::Spider,
                   Family::Caterpillar, Family::RandomTree, Family::Clique})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

Instance generate(const InstanceSpec& spec) {
  SplitMix64 rng(spec.seed);
  EdgeList e;
  int n = 0;
  PatternGraph pat = spec.pattern;
  std::string id = family_name(spec.family);

  switch (spec.family) {
    case Family::Cycle: {
      if (spec.size < 3) throw ParamError("cycle needs size >= 3");
      n = spec.size;
      for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
      if (pat.k() == 0) pat = PatternGraph::triangle();
      id += "-n" + std::to_string(n);
      break;
    }
    case Family::Clique: {
      if (spec.size < 1) throw ParamError("clique needs size >= 1");
      n = spec.size;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
      if (pat.k() == 0) pat = PatternGraph::single_edge();
      id += "-k" + std::to_string(n);
      break;
    }
    case Family::Spider: {
      if (spec.legs < 1 || spec.size < 1)
        throw ParamError("spider needs legs >= 1 and size >= 1");
      n = 1;
      for (int l = 0; l < spec.legs; ++l) {
        int prev = 0;
        for (int i = 0; i < spec.size; ++i) {
          e.push_back({prev, n});
          prev = n++;
        }
      }
      if (pat.k() == 0) pat = PatternGraph::star(spec.legs);
      id += "-l" + std::to_string(spec.legs) + "x" + std::to_string(spec.size);
      break;
    }
    case Family::Caterpillar: {
      if (spec.size < 2) throw ParamError("caterpillar needs size >= 2");
      n = spec.size;
      for (int i = 0; i + 1 < spec.size; ++i) e.push_back({i, i + 1});
      add_pendants(e, n, spec.size, spec.pendant_rate, rng);
      if (pat.k() == 0) pat = PatternGraph::single_edge();
      id += "-s" + std::to_string(spec.size) + "-p" +
            std::to_string(pct(spec.pendant_rate)) + "-r" +
            std::to_string(spec.seed);
      break;
    }
    case Family::RandomTree: {
      if (spec.size < 1) throw ParamError("random tree needs size >= 1");
      n = spec.size;
      for (int i = 1; i < n; ++i)
        e.push_back({static_cast<int>(rng.next_below(i)), i});
      if (pat.k() == 0) pat = PatternGraph::single_edge();
      id += "-n" + std::to_string(n) + "-r" + std::to_string(spec.seed);
      break;
    }
    case Family::SubdividedH: {
      if (pat.k() == 0) pat = PatternGraph::star(3);
      if (!pat.simple() || !pat.connected() || pat.h() < 1)
        throw ParamError("subdivision base must be simple and connected");
      if (spec.subdiv < 1) throw ParamError("subdiv needs >= 1");
      n = pat.k();
      for (int ed = 0; ed < pat.h(); ++ed) {
        auto [u, v] = pat.edge(ed);
        int prev = u;
        for (int i = 1; i < spec.subdiv; ++i) {
          e.push_back({prev, n});
          prev = n++;
        }
        e.push_back({prev, v});
      }
      add_pendants(e, n, n, spec.pendant_rate, rng);
      id += "-" + pattern_slug(pat) + "-d" + std::to_string(spec.subdiv) +
            "-p" + std::to_string(pct(spec.pendant_rate)) + "-r" +
            std::to_string(spec.seed);
      break;
    }
  }

  Graph g(n, e);
  InstanceSpec stored = spec;
  stored.pattern = pat;
  return Instance{std::move(id), std::move(stored), std::move(g),
                  std::move(pat)};
}

std::vector<CorpusEntry> make_benchmark_corpus() {
  std::vector<CorpusEntry> out;
  PatternGraph k2 = PatternGraph::single_edge();
  PatternGraph k3 = PatternGraph::triangle();

  auto push = [&](InstanceSpec spec, int c, bool gadget) {
    Instance inst = generate(spec);
    if (inst.g.n() > 7) throw ModelError("corpus instance too large");
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03d-", static_cast<int>(out.size()));
    inst.id = buf + inst.id;
    out.push_back(CorpusEntry{std::move(inst), c, gadget});
  };

  // Paths P2..P7 as subdivisions of the single edge. The c = 1 rows and a
  // few c = 2 rows double as cheap gadget composites.
  for (int d = 1; d <= 6; ++d)
    for (int c = 1; c <= 3; ++c) {
      InstanceSpec s;
      s.family = Family::SubdividedH;
      s.pattern = k2;
      s.subdiv = d;
      push(s, c, c == 1 || (c == 2 && d <= 3));
    }

  // Subdivided triangles C3 and C6 against K3.
  for (int d = 1; d <= 2; ++d)
    for (int c = 1; c <= 3; ++c) {
      InstanceSpec s;
      s.family = Family::SubdividedH;
      s.pattern = k3;
      s.subdiv = d;
      push(s, c, c == 1);
    }

  // Cycles against both patterns; against K2 they fold flat at n - 1.
  for (int nn = 3; nn <= 7; ++nn)
    for (int c = 1; c <= 3; ++c) {
      InstanceSpec s;
      s.family = Family::Cycle;
      s.size = nn;
      push(s, c, c == 1);
      s.pattern = k2;
      push(s, c, false);
    }

  // Cliques on the single edge: K4 folds at 3, the rest are refusals.
  for (int kk = 4; kk <= 7; ++kk)
    for (int c = 1; c <= 3; ++c) {
      InstanceSpec s;
      s.family = Family::Clique;
      s.size = kk;
      push(s, c, false);
    }

  // Small spiders on both patterns.
  for (int len = 1; len <= 2; ++len)
    for (int c = 1; c <= 3; ++c) {
      InstanceSpec s;
      s.family = Family::Spider;
      s.legs = 3;
      s.size = len;
      s.pattern = k2;
      push(s, c, false);
      s.pattern = k3;
      push(s, c, false);
    }

  // Caterpillars; reseed until the pendant draw stays within seven vertices.
  for (int sp = 3; sp <= 4; ++sp)
    for (double rate : {0.4, 0.8})
      for (uint64_t sd = 1; sd <= 2; ++sd)
        for (int c = 1; c <= 3; ++c) {
          InstanceSpec s;
          s.family = Family::Caterpillar;
          s.size = sp;
          s.pendant_rate = rate;
          s.seed = 10 * sd + sp;
          while (generate(s).g.n() > 7) ++s.seed;
          push(s, c, c == 1);
        }

  // Random trees; pad with further seeds to exactly 200 entries.
  for (int nn = 5; nn <= 7; ++nn)
    for (uint64_t sd = 1; sd <= 3; ++sd)
      for (int c = 1; c <= 3; ++c) {
        InstanceSpec s;
        s.family = Family::RandomTree;
        s.size = nn;
        s.seed = sd;
        push(s, c, false);
      }
  uint64_t sd = 100;
  int c = 1;
  while (out.size() < 200) {
    InstanceSpec s;
    s.family = Family::RandomTree;
    s.size = 7;
    s.seed = sd++;
    push(s, c, false);
    c = c % 3 + 1;
  }
  return out;
}

}  // namespace hembed
