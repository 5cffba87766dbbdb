#include "hembed/quasi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hembed/errors.hpp"

namespace hembed {

namespace {

struct Candidate {
  PatternGraph graph;
  std::vector<int> split_edges;
  int base_edges_kept;
  std::vector<int> degree_seq;
};

// Splitting edge e = {u,v} yields two pendant half edges (u,u') and (v,v')
// with fresh leaf vertices. Afterwards any subset of the resulting edge pool
// may be kept; dropped vertices are exactly those left isolated, which
// subsumes explicit vertex deletion.
void collect(const PatternGraph& base, int split_mask,
             std::vector<Candidate>& out) {
  int k = base.k();
  int h = base.h();
  struct PoolEdge {
    int u, v;
    int origin;  // base edge id
    bool half;
  };
  std::vector<PoolEdge> pool;
  int extra = k;
  for (int e = 0; e < h; ++e) {
    auto [u, v] = base.edge(e);
    if (split_mask >> e & 1) {
      pool.push_back({u, extra++, e, true});
      pool.push_back({v, extra++, e, true});
    } else {
      pool.push_back({u, v, e, false});
    }
  }
  int pn = static_cast<int>(pool.size());
  for (int keep = 1; keep < (1 << pn); ++keep) {
    // Collect the vertices actually used and compress them.
    std::vector<int> used(extra, -1);
    int nv = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> splits;
    int base_kept = 0;
    for (int i = 0; i < pn; ++i) {
      if (!(keep >> i & 1)) continue;
      const PoolEdge& pe = pool[i];
      if (used[pe.u] < 0) used[pe.u] = nv++;
      if (used[pe.v] < 0) used[pe.v] = nv++;
      edges.push_back({used[pe.u], used[pe.v]});
      if (pe.half)
        splits.push_back(pe.origin);
      else
        ++base_kept;
    }
    PatternGraph g(nv, edges);
    if (!g.connected()) continue;
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    std::vector<int> deg;
    for (int v = 0; v < nv; ++v) deg.push_back(g.degree(v));
    std::sort(deg.begin(), deg.end(), std::greater<>());
    out.push_back({std::move(g), std::move(splits), base_kept, std::move(deg)});
  }
}

}  // namespace

std::vector<QuasiSubgraph> enumerate_quasi_subgraphs(const PatternGraph& base) {
  if (base.h() > 6)
    throw SizeError("quasi subgraph enumeration capped at 6 base edges");
  std::vector<Candidate> cands;
  for (int split_mask = 0; split_mask < (1 << base.h()); ++split_mask)
    collect(base, split_mask, cands);

  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.graph.h() != b.graph.h()) return a.graph.h() > b.graph.h();
                     if (a.graph.k() != b.graph.k()) return a.graph.k() > b.graph.k();
                     return a.degree_seq > b.degree_seq;
                   });

  std::vector<QuasiSubgraph> out;
  std::vector<const Candidate*> kept;
  for (const auto& c : cands) {
    bool dup = false;
    for (const Candidate* p : kept) {
      if (p->graph.h() != c.graph.h() || p->graph.k() != c.graph.k() ||
          p->degree_seq != c.degree_seq)
        continue;
      if (patterns_isomorphic(p->graph, c.graph)) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    kept.push_back(&c);
    out.push_back({c.graph, c.split_edges, c.base_edges_kept});
  }
  // Deleting everything except one vertex is always allowed.
  out.push_back({PatternGraph::single_vertex(), {}, 0});
  return out;
}

namespace {

struct RealizeState {
  const PatternGraph* shape;
  const PatternGraph* base;
  std::vector<int> vmap;        // shape vertex -> base vertex, -1 open, -2 pendant
  std::vector<char> base_taken; // base vertex already an image
  std::vector<char> whole_used; // base edge used whole
  std::vector<char> half_used;  // 2 flags per base edge
  std::vector<int> emap;
  std::vector<int> ehalf;
};

bool realize_edges(RealizeState& st, int se) {
  const PatternGraph& shape = *st.shape;
  const PatternGraph& base = *st.base;
  if (se == shape.h()) return true;
  auto [x, y] = shape.edge(se);

  auto try_vertex = [&](int sv, int bv, auto&& cont) {
    if (st.vmap[sv] == bv) return cont();
    if (st.vmap[sv] != -1 || st.base_taken[bv]) return false;
    st.vmap[sv] = bv;
    st.base_taken[bv] = 1;
    bool ok = cont();
    if (!ok) {
      st.vmap[sv] = -1;
      st.base_taken[bv] = 0;
    }
    return ok;
  };
  auto try_pendant = [&](int sv, auto&& cont) {
    // A pendant tip is a fresh split vertex: degree one, mapped nowhere.
    if (st.vmap[sv] == -2) return false;  // one tip cannot serve two edges
    if (st.vmap[sv] != -1 || shape.degree(sv) != 1) return false;
    st.vmap[sv] = -2;
    bool ok = cont();
    if (!ok) st.vmap[sv] = -1;
    return ok;
  };

  for (int be = 0; be < base.h(); ++be) {
    auto [u, v] = base.edge(be);
    if (!st.whole_used[be] && !st.half_used[2 * be] && !st.half_used[2 * be + 1]) {
      for (int flip = 0; flip < (u == v ? 1 : 2); ++flip) {
        int a = flip ? v : u, b = flip ? u : v;
        st.whole_used[be] = 1;
        st.emap[se] = be;
        st.ehalf[se] = 0;
        bool ok = try_vertex(x, a, [&] {
          return try_vertex(y, b, [&] { return realize_edges(st, se + 1); });
        });
        st.whole_used[be] = 0;
        if (ok) return true;
      }
    }
    if (!st.whole_used[be]) {
      for (int side = 0; side < 2; ++side) {
        if (st.half_used[2 * be + side]) continue;
        int anchor = side == 0 ? u : v;
        for (int flip = 0; flip < 2; ++flip) {
          int av = flip ? y : x, pv = flip ? x : y;
          if (av == pv) continue;  // a half edge is never a loop
          st.half_used[2 * be + side] = 1;
          st.emap[se] = be;
          st.ehalf[se] = side + 1;
          bool ok = try_vertex(av, anchor, [&] {
            return try_pendant(pv, [&] { return realize_edges(st, se + 1); });
          });
          st.half_used[2 * be + side] = 0;
          if (ok) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

std::optional<QuasiRealization> realize_quasi(const PatternGraph& shape,
                                              const PatternGraph& base) {
  RealizeState st;
  st.shape = &shape;
  st.base = &base;
  st.vmap.assign(shape.k(), -1);
  st.base_taken.assign(base.k(), 0);
  st.whole_used.assign(base.h(), 0);
  st.half_used.assign(2 * base.h(), 0);
  st.emap.assign(shape.h(), -1);
  st.ehalf.assign(shape.h(), -1);
  if (shape.h() == 0) {
    if (shape.k() != 1 || base.k() < 1) return std::nullopt;
    QuasiRealization r;
    r.vertex_to_base = {0};
    return r;
  }
  if (!realize_edges(st, 0)) return std::nullopt;
  QuasiRealization r;
  for (int v : st.vmap) r.vertex_to_base.push_back(v == -2 ? -1 : v);
  r.edge_to_base = st.emap;
  r.edge_half = st.ehalf;
  return r;
}

}  // namespace hembed
