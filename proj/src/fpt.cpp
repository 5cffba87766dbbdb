#include "hembed/fpt.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "hembed/errors.hpp"
#include "hembed/oracles.hpp"

namespace hembed {

FptParams FptParams::make(int c, const PatternGraph& shape, int base_edges) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (base_edges < 1) throw ParamError("base pattern needs an edge");
  FptParams p;
  p.c = c;
  long long c2 = 1LL * c * c;
  p.short_limit = 16 * c2 * c2;
  p.delta = shape.hop_diameter() + static_cast<int>(8 * c2 * c2);
  p.interesting_cap = 8LL * c * p.delta * base_edges;
  p.piece_cap = (4LL * c * base_edges) * (4LL * c * base_edges);
  p.window = static_cast<int>(4 * c2) + 1;
  return p;
}

bool is_alpha_interesting(const Graph& g, int v, int alpha, int c,
                          long long budget) {
  if (alpha < 0) throw ParamError("radius must be nonnegative");
  std::vector<int> ball = g.ball(v, alpha);
  const int m = static_cast<int>(ball.size());
  std::vector<std::vector<Rat>> d(m, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Rat dij(static_cast<long long>(g.dist(ball[i], ball[j])));
      d[i][j] = dij;
      d[j][i] = dij;
    }
  return !line_embed_exact_metric(d, c, budget).has_value();
}

DeltaInteresting delta_interesting_set(const Graph& g,
                                       const PatternGraph& shape, int c,
                                       int base_edges, long long budget) {
  FptParams p = FptParams::make(c, shape, base_edges);
  DeltaInteresting out;
  for (int v = 0; v < g.n(); ++v) {
    if (!is_alpha_interesting(g, v, p.delta, c, budget)) continue;
    out.verts.push_back(v);
    if (static_cast<long long>(out.verts.size()) > p.interesting_cap) {
      out.too_many = true;
      return out;
    }
  }
  return out;
}

namespace {

// A cluster configuration costs a simplex solve where a walk state costs a
// handful of distance lookups; one shared budget needs a conversion rate.
constexpr long long kClusterStepWeight = 100;

long long graph_dist_ll(const Graph& g, int a, int b) {
  return static_cast<long long>(g.dist(a, b));
}

// Corridor walking. A window is the trailing 4c^2+2 slots of the walk; it
// must be pushed with small gaps and tight pairwise spans, enclose the
// middle vertex's ball, and leave no component of the remaining eligible
// set touching both of its halves.
struct Corridor {
  const Graph* g = nullptr;
  int c = 1, window = 0, delta = 0;
  std::vector<int> zset;            // eligible and walkable, sorted
  std::vector<char> must_consume;   // W members, by vertex
  std::vector<char> handover_pool;  // W or T member, any density
  const std::vector<int>* T = nullptr;
  const std::vector<PathStop>* stops = nullptr;
  long long budget = 0;
  PathStats* st = nullptr;
  std::vector<char> consumed;
  std::vector<int> walk;
  std::vector<ClusterSolution> stopsols;
  std::set<std::vector<int>> seen;
  std::optional<PathFragment> found;

  long long used() const {
    return st->states + kClusterStepWeight * st->cluster_configs;
  }

  bool in_z(int v) const {
    return std::binary_search(zset.begin(), zset.end(), v);
  }

  // dropped == -1 when no slot fell off the back yet.
  bool feasible(const std::vector<int>& w, int dropped) const {
    const Graph& gr = *g;
    const int slots = window + 1;
    std::vector<long long> pos(slots, 0);
    for (int i = 0; i + 1 < slots; ++i) {
      int d = gr.dist(w[i], w[i + 1]);
      if (d < 1 || d > c) return false;
      pos[i + 1] = pos[i] + d;
    }
    for (int i = 0; i < slots; ++i)
      for (int j = i + 2; j < slots; ++j) {
        long long span = pos[j] - pos[i];
        long long d = gr.dist(w[i], w[j]);
        if (d < 1) return false;
        if (span < d || span > 1LL * c * d) return false;
      }
    std::set<int> inw(w.begin(), w.end());
    if (static_cast<int>(inw.size()) != slots) return false;
    int mid = 2 * c * c;
    for (int u : gr.ball(w[mid], c))
      if (!inw.count(u)) return false;

    std::vector<int> rest;
    for (int v : zset)
      if (!inw.count(v)) rest.push_back(v);
    if (rest.empty()) return true;
    auto comps = gr.components(rest);
    int half = 2 * c * c;
    std::vector<char> sideL(comps.size(), 0), sideR(comps.size(), 0);
    for (size_t ci = 0; ci < comps.size(); ++ci)
      for (int v : comps[ci])
        for (int s = 0; s < slots; ++s) {
          if (!gr.has_edge(v, w[s])) continue;
          if (s <= half) sideL[ci] = 1;
          if (s > half) sideR[ci] = 1;
        }
    // One ring of closure: a component within c of a sided one joins that
    // side.
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<int> src;
      for (size_t ci = 0; ci < comps.size(); ++ci)
        if (pass == 0 ? sideL[ci] : sideR[ci])
          for (int v : comps[ci]) src.push_back(v);
      if (src.empty()) continue;
      std::vector<int> dist = gr.multi_source_distances(src);
      for (size_t ci = 0; ci < comps.size(); ++ci)
        for (int v : comps[ci])
          if (dist[v] >= 0 && dist[v] <= c) (pass == 0 ? sideL : sideR)[ci] = 1;
    }
    for (size_t ci = 0; ci < comps.size(); ++ci)
      if (sideL[ci] && sideR[ci]) return false;
    if (dropped >= 0) {
      // The vertex that just left the window lives behind it; its component
      // may not sit cleanly ahead.
      for (size_t ci = 0; ci < comps.size(); ++ci)
        if (sideR[ci] && !sideL[ci] &&
            std::binary_search(comps[ci].begin(), comps[ci].end(), dropped))
          return false;
    }
    return true;
  }

  bool terminal(size_t stop_at) const {
    if (stop_at < stops->size()) return false;
    for (size_t v = 0; v < consumed.size(); ++v)
      if (must_consume[v] && !consumed[v]) return false;
    if (!T->empty()) {
      if (static_cast<int>(walk.size()) < window) return false;
      for (int i = 0; i < window; ++i)
        if (walk[walk.size() - window + i] != (*T)[i]) return false;
      return true;
    }
    for (int v : zset)
      if (!consumed[v]) return false;
    return true;
  }

  bool dfs(size_t stop_at) {
    if (terminal(stop_at)) {
      found = PathFragment{walk, stopsols};
      return true;
    }
    const int slots = window + 1;
    for (int x : zset) {
      if (consumed[x]) continue;
      ++st->states;
      if (used() > budget) throw BudgetError("corridor walk budget exhausted");
      std::vector<int> w;
      int take = std::min<int>(static_cast<int>(walk.size()), slots - 1);
      w.insert(w.end(), walk.end() - take, walk.end());
      w.push_back(x);
      if (static_cast<int>(w.size()) < slots) continue;
      int dropped = -1;
      if (static_cast<int>(walk.size()) >= slots)
        dropped = walk[walk.size() - slots];
      if (!feasible(w, dropped)) continue;
      if (seen.insert(w).second) ++st->distinct_windows;
      walk.push_back(x);
      consumed[x] = 1;
      bool ok = dfs(stop_at);
      consumed[x] = 0;
      walk.pop_back();
      if (ok) return true;
    }
    if (stop_at < stops->size() && static_cast<int>(walk.size()) >= slots) {
      if (engage_stop(stop_at)) return true;
    }
    return false;
  }

  // Hand the neighborhood of the current window to the cluster solver on
  // the stop's bundle; its first edge must come in on the current window,
  // its last edge seeds the continuation.
  bool engage_stop(size_t si) {
    const PathStop& stop = (*stops)[si];
    const int slots = window + 1;
    std::vector<int> A(walk.end() - slots, walk.end());
    std::vector<int> reach = g->multi_source_distances(A);
    std::vector<char> inA(consumed.size(), 0);
    for (int v : A) inA[v] = 1;
    std::vector<int> Sx;
    for (int v = 0; v < static_cast<int>(consumed.size()); ++v) {
      bool member = inA[v] || (handover_pool[v] && !consumed[v]);
      if (!member) continue;
      if (reach[v] < 0 || reach[v] > delta) continue;
      Sx.push_back(v);
    }
    long long slice = (budget - used()) / kClusterStepWeight;
    if (slice < 1) throw BudgetError("corridor handover budget exhausted");
    ClusterStats cs;
    long long base_configs = st->cluster_configs;
    bool got = false;
    const Graph& gr = *g;
    try {
      cluster_solutions_visit(
          Sx, stop.bundle,
          [&gr](int a, int b) { return graph_dist_ll(gr, a, b); }, c, slice,
          [&](const ClusterSolution& sol) {
            st->cluster_configs = base_configs + cs.configurations;
            const auto& in = sol.layout.front().order;
            if (static_cast<int>(in.size()) < slots) return true;
            if (!std::equal(A.begin(), A.end(), in.end() - slots)) return true;
            const auto& outl = sol.layout.back().order;
            if (static_cast<int>(outl.size()) < slots) return true;
            std::vector<int> newly;
            for (int v : Sx)
              if (!consumed[v]) {
                consumed[v] = 1;
                newly.push_back(v);
              }
            size_t base_len = walk.size();
            for (int i = 0; i < slots; ++i) walk.push_back(outl[i]);
            stopsols.push_back(sol);
            bool ok = dfs(si + 1);
            if (!ok) {
              stopsols.pop_back();
              walk.resize(base_len);
              for (int v : newly) consumed[v] = 0;
            }
            got = ok;
            return !ok;
          },
          &cs);
    } catch (const BudgetError&) {
      st->cluster_configs = base_configs + cs.configurations;
      throw;
    }
    st->cluster_configs = base_configs + cs.configurations;
    return got;
  }
};

}  // namespace

std::optional<PathFragment> path_embed(const Graph& g,
                                       const std::vector<int>& W,
                                       const std::vector<int>& S,
                                       const std::vector<int>& T,
                                       const std::vector<PathStop>& stops,
                                       int c, int delta, long long budget,
                                       PathStats* stats) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (budget < 1) throw ParamError("budget must be positive");
  int window = 4 * c * c + 1;
  if (static_cast<int>(S.size()) != window)
    throw ParamError("seed must hold exactly 4c^2+1 vertices");
  if (!T.empty() && static_cast<int>(T.size()) != window)
    throw ParamError("terminal must be empty or hold exactly 4c^2+1 vertices");
  PathStats local;
  PathStats* st = stats ? stats : &local;

  Corridor cor;
  cor.g = &g;
  cor.c = c;
  cor.window = window;
  cor.delta = delta;
  cor.T = &T;
  cor.stops = &stops;
  cor.budget = budget;
  cor.st = st;
  cor.consumed.assign(g.n(), 0);
  cor.must_consume.assign(g.n(), 0);
  cor.handover_pool.assign(g.n(), 0);

  std::set<int> pool;
  for (int v : W) {
    pool.insert(v);
    cor.must_consume[v] = 1;
    cor.handover_pool[v] = 1;
  }
  for (int v : S) pool.insert(v);
  for (int v : T) {
    pool.insert(v);
    cor.handover_pool[v] = 1;
  }
  // Inside a corridor the ball of radius r holds at most 2rc+1 vertices.
  int rad = window * c;
  long long cap = 2LL * rad * c + 1;
  for (int v : pool)
    if (g.ball_size(v, rad) <= cap) cor.zset.push_back(v);
  std::sort(cor.zset.begin(), cor.zset.end());

  for (int v : S) {
    if (!cor.in_z(v)) return std::nullopt;  // seed blocked by density
    cor.consumed[v] = 1;
    cor.walk.push_back(v);
  }
  if (cor.terminal(0)) return PathFragment{cor.walk, {}};
  if (cor.dfs(0)) return cor.found;
  return std::nullopt;
}

namespace {

// Walks a path or cycle shaped pattern from a starting vertex, returning
// the edge sequence and the vertex sequence.
void shape_walk(const PatternGraph& shape, int start, std::vector<int>* eseq,
                std::vector<int>* vseq) {
  vseq->push_back(start);
  std::vector<char> used(shape.h(), 0);
  int cur = start;
  for (int step = 0; step < shape.h(); ++step) {
    for (auto [e, far] : shape.incident(cur)) {
      if (used[e]) continue;
      used[e] = 1;
      eseq->push_back(e);
      vseq->push_back(far);
      cur = far;
      break;
    }
  }
}

// Spreads (position, graph vertex) pairs over consecutive edges of a walk,
// cutting the span [0, total] into equal stretches. Points landing exactly
// on a cut sit at the pattern vertex there.
Embedding spread_along_walk(const Graph& g, const PatternGraph& shape,
                            const std::vector<int>& eseq,
                            const std::vector<int>& vseq, const Rat& total,
                            const std::vector<std::pair<Rat, int>>& pts) {
  const int m = static_cast<int>(eseq.size());
  Rat piece = total / Rat(m);
  std::vector<Rat> lengths(shape.h(), piece);
  std::vector<std::vector<Rat>> offs(shape.h());
  std::vector<std::vector<std::pair<Rat, int>>> per_edge(m);
  std::vector<HostPoint> image(g.n());
  for (const auto& [p, gv] : pts) {
    Rat idx_r = p / piece;
    Int seg_i = numerator(idx_r) / denominator(idx_r);
    int seg = static_cast<int>(seg_i);
    Rat local = p - piece * Rat(seg);
    if (local == 0) {
      // Cut points include both walk endpoints; vseq has m+1 entries.
      image[gv] = HostPoint::at_vertex(vseq[seg]);
      continue;
    }
    auto [u, v] = shape.edge(eseq[seg]);
    bool fwd = (u == vseq[seg]);
    if (u == v) fwd = true;
    Rat off = fwd ? local : Rat(piece - local);
    per_edge[seg].push_back({off, gv});
  }
  for (int s = 0; s < m; ++s) {
    auto& lst = per_edge[s];
    std::sort(lst.begin(), lst.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int e = eseq[s];
    for (const auto& [off, gv] : lst) {
      image[gv] = HostPoint::interior(e, static_cast<int>(offs[e].size()));
      offs[e].push_back(off);
    }
  }
  WeightedSubdivision host(shape, lengths, offs);
  return Embedding(g, host, image);
}

Embedding path_shape_embedding(const Graph& g, const PatternGraph& shape,
                               const LineEmbedding& le) {
  int start = 0;
  for (int v = 0; v < shape.k(); ++v)
    if (shape.degree(v) == 1) {
      start = v;
      break;
    }
  std::vector<int> eseq, vseq;
  shape_walk(shape, start, &eseq, &vseq);
  const int n = g.n();
  std::vector<std::pair<Rat, int>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({le.positions[i], le.order[i]});
  Rat total = le.positions.back();
  return spread_along_walk(g, shape, eseq, vseq, total, pts);
}

Embedding cycle_shape_embedding(const Graph& g, const PatternGraph& shape,
                                const CycleOrderResult& co) {
  const int n = g.n();
  std::vector<int> eseq, vseq;
  shape_walk(shape, 0, &eseq, &vseq);
  std::vector<long long> pos(n, 0);
  for (int i = 1; i < n; ++i)
    pos[i] = pos[i - 1] + g.dist(co.order[i - 1], co.order[i]);
  long long closing = g.dist(co.order[n - 1], co.order[0]);
  Rat total(pos[n - 1] + closing);
  std::vector<std::pair<Rat, int>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({Rat(pos[i]), co.order[i]});
  return spread_along_walk(g, shape, eseq, vseq, total, pts);
}

struct PieceDesc {
  std::vector<int> pat_verts;
  std::vector<int> short_edges;
  std::vector<int> long_out;  // incident long edges leaving the piece
  std::vector<int> long_in;   // long edges with both endpoints inside
  int ends = 0;
  bool interesting = false;
  PatternGraph piece{1, {}};
  std::vector<int> lv_to_shape;
  std::vector<int> le_to_shape;
  std::vector<char> le_leaving;
};

struct ChainDesc {
  std::vector<int> edges;      // shape long edge ids in walk order
  std::vector<int> junctions;  // bare junction shape vertices between them
  int start_piece = -1;
  int end_piece = -1;  // -1 for a dead end
  bool supported = true;
};

std::vector<PieceDesc> build_pieces(const PatternGraph& shape,
                                    unsigned long smask) {
  std::vector<int> comp(shape.k());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (int e = 0; e < shape.h(); ++e) {
    if (smask >> e & 1) continue;
    auto [u, v] = shape.edge(e);
    comp[find(u)] = find(v);
  }
  std::map<int, int> root_to_piece;
  std::vector<PieceDesc> pieces;
  for (int v = 0; v < shape.k(); ++v) {
    int r = find(v);
    if (!root_to_piece.count(r)) {
      root_to_piece[r] = static_cast<int>(pieces.size());
      pieces.push_back({});
    }
    pieces[root_to_piece[r]].pat_verts.push_back(v);
  }
  for (int e = 0; e < shape.h(); ++e) {
    auto [u, v] = shape.edge(e);
    int pu = root_to_piece[find(u)], pv = root_to_piece[find(v)];
    if (!(smask >> e & 1)) {
      pieces[pu].short_edges.push_back(e);
      continue;
    }
    if (pu == pv) {
      pieces[pu].long_in.push_back(e);
      pieces[pu].ends += 2;
    } else {
      pieces[pu].long_out.push_back(e);
      pieces[pv].long_out.push_back(e);
      pieces[pu].ends += 1;
      pieces[pv].ends += 1;
    }
  }
  for (auto& p : pieces) {
    p.interesting = p.ends >= 3;
    std::map<int, int> local;
    for (int v : p.pat_verts) {
      local[v] = static_cast<int>(p.lv_to_shape.size());
      p.lv_to_shape.push_back(v);
    }
    std::vector<std::pair<int, int>> ledges;
    auto add_edge = [&](int shape_e, int a, int b, bool leaving) {
      ledges.push_back({a, b});
      p.le_to_shape.push_back(shape_e);
      p.le_leaving.push_back(leaving);
    };
    for (int e : p.short_edges) {
      auto [u, v] = shape.edge(e);
      add_edge(e, local[u], local[v], false);
    }
    for (int e : p.long_in) {
      auto [u, v] = shape.edge(e);
      add_edge(e, local[u], local[v], false);
    }
    // Each leaving edge dangles toward its own fresh far vertex so no pin
    // path can cross between two leaving edges outside the piece.
    for (int e : p.long_out) {
      auto [u, v] = shape.edge(e);
      int inside = local.count(u) ? u : v;
      int far_id = static_cast<int>(p.lv_to_shape.size());
      p.lv_to_shape.push_back(inside == u ? v : u);
      add_edge(e, local[inside], far_id, true);
    }
    p.piece = PatternGraph(static_cast<int>(p.lv_to_shape.size()), ledges);
  }
  return pieces;
}

// Chains: maximal runs of long edges between interesting anchors. A run may
// pass through a boring piece only when that piece is a bare degree-two
// junction; anything thicker is beyond the assembler.
std::vector<ChainDesc> build_chains(const PatternGraph& shape,
                                    const std::vector<PieceDesc>& pieces,
                                    bool* all_covered) {
  std::vector<int> piece_of(shape.k());
  for (size_t pi = 0; pi < pieces.size(); ++pi)
    for (int v : pieces[pi].pat_verts) piece_of[v] = static_cast<int>(pi);
  std::vector<char> edge_done(shape.h(), 0);
  std::vector<ChainDesc> chains;
  for (size_t pi = 0; pi < pieces.size(); ++pi) {
    if (!pieces[pi].interesting) continue;
    for (int e0 : pieces[pi].long_out) {
      if (edge_done[e0]) continue;
      ChainDesc ch;
      ch.start_piece = static_cast<int>(pi);
      int cur_piece = static_cast<int>(pi);
      int e = e0;
      while (true) {
        edge_done[e] = 1;
        ch.edges.push_back(e);
        auto [u, v] = shape.edge(e);
        int pu = piece_of[u], pv = piece_of[v];
        int next_piece = pu == cur_piece ? pv : pu;
        const PieceDesc& np = pieces[next_piece];
        if (np.interesting) {
          ch.end_piece = next_piece;
          break;
        }
        if (np.ends == 1) {
          if (!np.short_edges.empty() || np.pat_verts.size() != 1)
            ch.supported = false;
          ch.end_piece = -1;
          break;
        }
        if (np.ends != 2 || !np.short_edges.empty() ||
            np.pat_verts.size() != 1 || !np.long_in.empty()) {
          ch.supported = false;
          ch.end_piece = -1;
          break;
        }
        ch.junctions.push_back(np.pat_verts[0]);
        int e2 = np.long_out[0] == e ? np.long_out[1] : np.long_out[0];
        if (edge_done[e2]) {  // closed ring of bare junctions
          ch.supported = false;
          ch.end_piece = -1;
          break;
        }
        cur_piece = next_piece;
        e = e2;
      }
      chains.push_back(std::move(ch));
    }
  }
  *all_covered = true;
  for (size_t pi = 0; pi < pieces.size(); ++pi)
    for (int e : pieces[pi].long_out)
      if (!edge_done[e]) *all_covered = false;
  return chains;
}

// Offsets of a cluster layout along one of its edges, measured from the
// stored first endpoint, rebuilt from the pushed gaps.
struct EdgeTrace {
  std::vector<int> order;
  std::vector<Rat> off;
  Rat alpha{0}, beta{0};
};

EdgeTrace trace_layout(const ClusterSolution& sol, int local_edge,
                       const Graph& g) {
  EdgeTrace t;
  const EdgeLayout& lay = sol.layout[local_edge];
  t.order = lay.order;
  t.alpha = lay.alpha;
  t.beta = lay.beta;
  Rat cur = lay.alpha;
  for (size_t i = 0; i < lay.order.size(); ++i) {
    if (i > 0) cur += Rat(graph_dist_ll(g, lay.order[i - 1], lay.order[i]));
    t.off.push_back(cur);
  }
  return t;
}

struct Placement {
  std::vector<Rat> lengths;
  std::vector<std::vector<std::pair<Rat, int>>> on_edge;  // offset, vertex
  std::vector<int> at_vertex;  // shape vertex -> graph vertex or -1
  bool ok = true;

  explicit Placement(const PatternGraph& shape)
      : lengths(shape.h(), Rat(0)),
        on_edge(shape.h()),
        at_vertex(shape.k(), -1) {}

  void put_vertex(int pat_v, int graph_v) {
    if (at_vertex[pat_v] != -1 && at_vertex[pat_v] != graph_v) ok = false;
    at_vertex[pat_v] = graph_v;
  }
  void put_interior(int e, const Rat& off, int graph_v) {
    on_edge[e].push_back({off, graph_v});
  }
};

std::optional<FptOutcome> finish_placement(const Graph& g,
                                           const PatternGraph& shape,
                                           Placement& pl, int c) {
  if (!pl.ok) return std::nullopt;
  std::vector<std::vector<Rat>> offs(shape.h());
  std::vector<HostPoint> image(g.n());
  std::vector<char> placed(g.n(), 0);
  for (int v = 0; v < shape.k(); ++v) {
    if (pl.at_vertex[v] < 0) continue;
    int gv = pl.at_vertex[v];
    if (placed[gv]) return std::nullopt;
    placed[gv] = 1;
    image[gv] = HostPoint::at_vertex(v);
  }
  for (int e = 0; e < shape.h(); ++e) {
    if (pl.lengths[e] <= 0) return std::nullopt;
    auto& pts = pl.on_edge[e];
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i > 0 && pts[i].first == pts[i - 1].first) return std::nullopt;
      if (pts[i].first <= 0 || pts[i].first >= pl.lengths[e])
        return std::nullopt;
      int gv = pts[i].second;
      if (placed[gv]) return std::nullopt;
      placed[gv] = 1;
      offs[e].push_back(pts[i].first);
      image[gv] = HostPoint::interior(e, static_cast<int>(i));
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (!placed[v]) return std::nullopt;
  try {
    WeightedSubdivision host(shape, pl.lengths, offs);
    Embedding emb(g, host, image);
    DistortionReport rep = distortion(emb);
    Rat bound(c);
    if (!rep.non_contracting || rep.distortion > bound) return std::nullopt;
    return FptOutcome{std::move(emb), rep.distortion};
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Merge one chain's geometry into the placement: the start anchor's trace,
// the walked corridor, then the far anchor's trace backwards. Junction cuts
// split the merged line into the chain's pattern edges.
bool merge_chain(const Graph& g, const PatternGraph& shape,
                 const ChainDesc& ch, const EdgeTrace& start_tr,
                 const EdgeTrace* end_tr, const std::vector<int>& walk,
                 int window, int start_anchor_vertex, Placement& pl) {
  if (static_cast<int>(start_tr.order.size()) < window) return false;
  if (static_cast<int>(walk.size()) < window) return false;
  for (int i = 0; i < window; ++i)
    if (walk[i] != start_tr.order[start_tr.order.size() - window + i])
      return false;
  std::vector<int> seq = start_tr.order;
  seq.insert(seq.end(), walk.begin() + window, walk.end());
  if (end_tr) {
    if (static_cast<int>(end_tr->order.size()) < window) return false;
    size_t far_tail = end_tr->order.size() - window;
    for (size_t i = far_tail; i-- > 0;) seq.push_back(end_tr->order[i]);
  }
  std::vector<Rat> pos(seq.size(), Rat(0));
  for (size_t i = 0; i < start_tr.off.size(); ++i) pos[i] = start_tr.off[i];
  for (size_t i = start_tr.off.size(); i < seq.size(); ++i) {
    Rat step(graph_dist_ll(g, seq[i - 1], seq[i]));
    pos[i] = pos[i - 1] + step;
  }
  Rat total;
  if (end_tr) {
    if (end_tr->off.empty()) return false;
    if (seq.back() != end_tr->order[0]) return false;
    total = pos.back() + end_tr->off[0];
  } else {
    total = pos.back() + 1;
  }
  int m = static_cast<int>(ch.edges.size());
  std::vector<Rat> cuts;
  if (m >= 2) {
    // Bare junctions are metrically transparent; their cut points share the
    // gap right after the start trace (or the open tail of a dead end).
    size_t cut_gap = start_tr.order.size() - 1;
    Rat g0 = pos[cut_gap];
    Rat g1 = cut_gap + 1 < seq.size() ? pos[cut_gap + 1] : total;
    if (g1 <= g0) return false;
    for (int t = 1; t < m; ++t) {
      Rat frac = (g1 - g0) * Rat(t) / Rat(m);
      Rat cut = g0 + frac;
      cuts.push_back(cut);
    }
  }
  cuts.push_back(total);
  Rat prev(0);
  size_t at = 0;
  for (int ei = 0; ei < m; ++ei) {
    int e = ch.edges[ei];
    Rat seg_len = cuts[ei] - prev;
    if (seg_len <= 0) return false;
    pl.lengths[e] = seg_len;
    int enter = ei == 0 ? start_anchor_vertex : ch.junctions[ei - 1];
    auto [u, v] = shape.edge(e);
    bool fwd = (u == enter);
    if (!fwd && v != enter) return false;
    while (at < seq.size() && pos[at] <= cuts[ei]) {
      if (pos[at] == cuts[ei] && ei + 1 < m) break;  // junction point ahead
      Rat local = pos[at] - prev;
      Rat off = fwd ? local : Rat(seg_len - local);
      if (local == 0) {
        pl.put_vertex(enter, seq[at]);
      } else if (off == 0 || off == seg_len) {
        if (!end_tr && at + 1 == seq.size()) return false;  // open end
        int pat = off == 0 ? (fwd ? u : v) : (fwd ? v : u);
        pl.put_vertex(pat, seq[at]);
      } else {
        pl.put_interior(e, off, seq[at]);
      }
      ++at;
    }
    prev = cuts[ei];
    if (ei + 1 < m && pl.at_vertex[ch.junctions[ei]] != -1) return false;
  }
  return at == seq.size();
}

struct VariantLayout {
  PatternGraph pat{1, {}};
  std::vector<int> whole_edge;
  std::vector<std::array<int, 2>> split_pair;
  std::vector<int> sub_vertex;
  std::vector<int> clique_vertex;
  std::vector<int> attach_edge;  // per element of the sorted triple
  std::vector<int> elements;
};

VariantLayout build_variant(const PatternGraph& h, std::vector<int> triple,
                            int k) {
  std::sort(triple.begin(), triple.end());
  VariantLayout vl;
  vl.elements = triple;
  int kh = h.k();
  vl.whole_edge.assign(h.h(), -1);
  vl.split_pair.assign(h.h(), {-1, -1});
  vl.sub_vertex.assign(h.h(), -1);
  int next_v = kh;
  for (int el : triple)
    if (el >= kh) vl.sub_vertex[el - kh] = next_v++;
  vl.clique_vertex.resize(k);
  for (int j = 0; j < k; ++j) vl.clique_vertex[j] = next_v++;
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < h.h(); ++e) {
    auto [u, v] = h.edge(e);
    if (vl.sub_vertex[e] >= 0) {
      vl.split_pair[e] = {static_cast<int>(edges.size()),
                          static_cast<int>(edges.size()) + 1};
      edges.push_back({u, vl.sub_vertex[e]});
      edges.push_back({vl.sub_vertex[e], v});
    } else {
      vl.whole_edge[e] = static_cast<int>(edges.size());
      edges.push_back({u, v});
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      edges.push_back({vl.clique_vertex[i], vl.clique_vertex[j]});
  int hub = vl.clique_vertex[0];
  for (int el : triple) {
    vl.attach_edge.push_back(static_cast<int>(edges.size()));
    int point = el < kh ? el : vl.sub_vertex[el - kh];
    edges.push_back({hub, point});
  }
  vl.pat = PatternGraph(next_v, edges);
  return vl;
}

// Re-express an embedding over a shape as one over the base pattern,
// spanning unused and split stretches with a filler length too long for any
// image distance to route through.
Embedding extend_to_base(const Embedding& emb, const PatternGraph& base,
                         const QuasiRealization& real, const Rat& filler) {
  const WeightedSubdivision& hs = emb.host();
  const PatternGraph& shape = hs.pattern();
  const Graph& g = emb.graph();
  std::vector<int> whole_of(base.h(), -1);
  std::vector<std::array<int, 2>> half_of(base.h(), {-1, -1});
  for (int se = 0; se < shape.h(); ++se) {
    int be = real.edge_to_base[se];
    if (real.edge_half[se] == 0)
      whole_of[be] = se;
    else
      half_of[be][real.edge_half[se] - 1] = se;
  }

  std::vector<Rat> lengths(base.h(), filler);
  std::vector<std::vector<Rat>> offs(base.h());
  std::map<std::pair<int, int>, std::pair<int, int>> interior_map;
  std::map<int, std::pair<int, int>> tip_map;  // shape tip vertex -> point

  // Offsets of a half edge measured from its anchored base endpoint.
  auto half_oriented = [&](int se, int anchor_base) {
    auto [x, y] = shape.edge(se);
    int anchored = real.vertex_to_base[x] == anchor_base ? x : y;
    bool from_first = (shape.edge(se).first == anchored);
    std::vector<std::pair<Rat, std::pair<int, int>>> res;
    Rat len = hs.length(se);
    for (int i = 0; i < hs.interior_count(se); ++i) {
      Rat o = hs.offsets(se)[i];
      Rat oo = from_first ? o : Rat(len - o);
      res.push_back({oo, {se, i}});
    }
    return res;
  };
  auto tip_of = [&](int se) {
    auto [x, y] = shape.edge(se);
    return real.vertex_to_base[x] < 0 ? x : y;
  };

  for (int be = 0; be < base.h(); ++be) {
    auto [u, v] = base.edge(be);
    std::vector<std::pair<Rat, std::pair<int, int>>> pts;
    if (whole_of[be] >= 0) {
      int se = whole_of[be];
      auto [x, y] = shape.edge(se);
      bool fwd = (real.vertex_to_base[x] == u);
      if (x == y) fwd = true;
      Rat len = hs.length(se);
      lengths[be] = len;
      for (int i = 0; i < hs.interior_count(se); ++i) {
        Rat o = hs.offsets(se)[i];
        Rat oo = fwd ? o : Rat(len - o);
        pts.push_back({oo, {se, i}});
      }
    } else if (half_of[be][0] >= 0 || half_of[be][1] >= 0) {
      int s1 = half_of[be][0], s2 = half_of[be][1];
      Rat lu = s1 >= 0 ? hs.length(s1) : Rat(0);
      Rat lv = s2 >= 0 ? hs.length(s2) : Rat(0);
      Rat len = lu + filler + lv;
      lengths[be] = len;
      if (s1 >= 0) {
        for (auto& [o, key] : half_oriented(s1, u)) pts.push_back({o, key});
        pts.push_back({lu, {-1 - tip_of(s1), -1}});
      }
      if (s2 >= 0) {
        for (auto& [o, key] : half_oriented(s2, v))
          pts.push_back({Rat(len - o), key});
        pts.push_back({Rat(len - lv), {-1 - tip_of(s2), -1}});
      }
    } else {
      continue;  // bare filler edge
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [o, key] : pts) {
      int idx = static_cast<int>(offs[be].size());
      offs[be].push_back(o);
      if (key.second >= 0)
        interior_map[key] = {be, idx};
      else
        tip_map[-1 - key.first] = {be, idx};
    }
  }

  std::vector<HostPoint> image(g.n());
  for (int gv = 0; gv < g.n(); ++gv) {
    HostPoint p = emb.image(gv);
    if (p.is_vertex()) {
      int bx = real.vertex_to_base[p.vertex];
      if (bx >= 0) {
        image[gv] = HostPoint::at_vertex(bx);
      } else {
        auto [be, idx] = tip_map.at(p.vertex);
        image[gv] = HostPoint::interior(be, idx);
      }
    } else {
      auto [be, idx] = interior_map.at({p.edge, p.index});
      image[gv] = HostPoint::interior(be, idx);
    }
  }
  WeightedSubdivision host(base, lengths, offs);
  return Embedding(g, host, image);
}

}  // namespace

std::optional<FptOutcome> fpt_embed(const Graph& g, const PatternGraph& h,
                                    int c, long long budget, FptStats* stats) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (budget < 1) throw ParamError("budget must be positive");
  if (!g.connected()) throw ModelError("graph must be connected");
  FptStats local;
  FptStats* st = stats ? stats : &local;

  const int n = g.n();
  if (n == 1) {
    WeightedSubdivision host(PatternGraph::single_vertex(), {}, {});
    Embedding emb(g, host, {HostPoint::at_vertex(0)});
    return FptOutcome{std::move(emb), Rat(1)};
  }
  if (h.h() == 0) return std::nullopt;  // a single point cannot hold two
  if (local_density_reject(g, h.h(), c)) return std::nullopt;

  std::vector<QuasiSubgraph> shapes = enumerate_quasi_subgraphs(h);
  long long spent = 0;
  bool tripped = false;
  std::string first_trip;
  auto record_trip = [&](const std::string& where) {
    ++st->trips;
    if (!tripped) {
      tripped = true;
      first_trip = where;
    }
  };
  auto remaining = [&]() { return budget - spent; };
  auto dist_fn = [&g](int a, int b) { return graph_dist_ll(g, a, b); };
  Rat bound(c);

  // The line and cycle decisions do not depend on which shape asked.
  bool line_done = false, line_tripped = false;
  std::optional<LineEmbedding> line_res;
  auto ensure_line = [&]() {
    if (line_done) return;
    line_done = true;
    LineSearchStats ls;
    try {
      line_res =
          line_embed_exact(g, c, std::max<long long>(1, remaining()), &ls);
      spent += ls.states;
    } catch (const BudgetError&) {
      spent = budget;
      line_tripped = true;
    }
  };
  bool cycle_done = false, cycle_capped = false;
  std::optional<CycleOrderResult> cycle_res;
  auto ensure_cycle = [&]() {
    if (cycle_done) return;
    cycle_done = true;
    if (n > kCycleOracleCap) {
      cycle_capped = true;
      return;
    }
    cycle_res = best_cycle_order(g);
  };

  // Path and cycle shaped quasi subgraphs have exact engines; run them
  // before anything branchier.
  for (size_t qi = 0; qi < shapes.size(); ++qi) {
    const PatternGraph& shp = shapes[qi].graph;
    if (shp.h() == 0) continue;
    if (shp.is_path_shape()) {
      ++st->branches;
      ensure_line();
      if (line_tripped) {
        record_trip("shape " + std::to_string(qi) + " line search");
        continue;
      }
      if (!line_res) continue;
      Embedding emb = path_shape_embedding(g, shp, *line_res);
      DistortionReport rep = distortion(emb);
      if (rep.non_contracting && rep.distortion <= bound) {
        st->budget_spent = spent;
        return FptOutcome{std::move(emb), rep.distortion};
      }
    } else if (shp.is_cycle_shape()) {
      ++st->branches;
      ensure_cycle();
      if (cycle_capped) {
        record_trip("shape " + std::to_string(qi) + " cycle oracle cap");
        continue;
      }
      if (cycle_res->distortion > bound) continue;
      Embedding emb = cycle_shape_embedding(g, shp, *cycle_res);
      DistortionReport rep = distortion(emb);
      if (rep.non_contracting && rep.distortion <= bound) {
        st->budget_spent = spent;
        return FptOutcome{std::move(emb), rep.distortion};
      }
    }
  }

  for (size_t qi = 0; qi < shapes.size(); ++qi) {
    const PatternGraph& shp = shapes[qi].graph;
    if (shp.h() == 0 || shp.is_path_shape() || shp.is_cycle_shape()) continue;
    std::string tag = "shape " + std::to_string(qi);

    // Whole graph as one cluster, every pattern edge short.
    ++st->branches;
    if (remaining() < 1) {
      record_trip(tag + " starved");
      break;
    }
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::optional<FptOutcome> found;
    try {
      ClusterStats cs;
      long long slice =
          std::max<long long>(1, remaining() / kClusterStepWeight);
      cluster_solutions_visit(
          all, shp, dist_fn, c, slice,
          [&](const ClusterSolution& sol) {
            try {
              Embedding emb(g, sol.host, sol.image);
              DistortionReport rep = distortion(emb);
              if (rep.non_contracting && rep.distortion <= bound) {
                found = FptOutcome{std::move(emb), rep.distortion};
                return false;
              }
            } catch (const Error&) {
            }
            return true;
          },
          &cs);
      spent += cs.configurations * kClusterStepWeight;
    } catch (const BudgetError&) {
      spent = budget;
      record_trip(tag + " all-short sweep");
    }
    if (found) {
      st->budget_spent = spent;
      return found;
    }

    // Long edge subsets, small first.
    std::vector<unsigned long> masks;
    for (unsigned long msk = 1; msk < (1UL << shp.h()); ++msk)
      masks.push_back(msk);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned long a, unsigned long b) {
                       return __builtin_popcountl(a) < __builtin_popcountl(b);
                     });
    for (unsigned long smask : masks) {
      ++st->branches;
      if (remaining() < 1) {
        record_trip(tag + " starved");
        break;
      }
      std::string stag = tag + " long set " + std::to_string(smask);
      std::vector<PieceDesc> pieces = build_pieces(shp, smask);
      std::vector<int> interesting;
      for (size_t pi = 0; pi < pieces.size(); ++pi)
        if (pieces[pi].interesting) interesting.push_back(static_cast<int>(pi));
      if (interesting.empty()) {
        record_trip(stag + " no anchor");
        continue;
      }
      bool covered = false;
      std::vector<ChainDesc> chains = build_chains(shp, pieces, &covered);
      bool chains_ok = covered;
      for (const auto& ch : chains)
        if (!ch.supported) chains_ok = false;
      if (!chains_ok) {
        record_trip(stag + " corridor structure");
        continue;
      }

      FptParams params = FptParams::make(c, shp, h.h());
      DeltaInteresting di;
      try {
        di = delta_interesting_set(g, shp, c, h.h(),
                                   std::max<long long>(1, remaining()));
      } catch (const BudgetError&) {
        spent = budget;
        record_trip(stag + " interesting set");
        continue;
      }
      if (di.too_many) continue;
      if (di.verts.empty()) continue;

      const int ni = static_cast<int>(di.verts.size());
      const int kint = static_cast<int>(interesting.size());
      bool branch_broken = false;
      for (int t = ni; t >= 1 && !branch_broken; --t) {
        std::vector<int> pick(t);
        std::iota(pick.begin(), pick.end(), 0);
        while (!branch_broken) {
          ++spent;
          if (remaining() < 1) {
            record_trip(stag + " subset sweep");
            branch_broken = true;
            break;
          }
          std::vector<int> I(t);
          for (int i = 0; i < t; ++i) I[i] = di.verts[pick[i]];
          std::vector<char> inI(n, 0);
          for (int v : I) inI[v] = 1;
          std::vector<int> outside;
          for (int v = 0; v < n; ++v)
            if (!inI[v]) outside.push_back(v);
          std::vector<std::vector<int>> tpieces = g.components(outside);
          bool skip_I =
              static_cast<long long>(tpieces.size()) > params.piece_cap;

          std::vector<int> asg(t, 0);
          while (!skip_I && !branch_broken) {
            ++spent;
            if (remaining() < 1) {
              record_trip(stag + " anchor split sweep");
              branch_broken = true;
              break;
            }
            bool viable = true;
            std::vector<std::vector<ClusterSolution>> cands(kint);
            for (int a = 0; a < kint && viable; ++a) {
              const PieceDesc& pd = pieces[interesting[a]];
              std::vector<int> U;
              for (int i = 0; i < t; ++i)
                if (asg[i] == a) U.push_back(I[i]);
              std::sort(U.begin(), U.end());
              try {
                ClusterStats cs;
                long long slice =
                    std::max<long long>(1, remaining() / kClusterStepWeight);
                cluster_solutions_visit(
                    U, pd.piece, dist_fn, c, slice,
                    [&](const ClusterSolution& sol) {
                      long long need = 8LL * c * c + 2;
                      for (int le = 0; le < pd.piece.h(); ++le) {
                        bool is_long =
                            pd.le_leaving[le] ||
                            std::count(pd.long_in.begin(), pd.long_in.end(),
                                       pd.le_to_shape[le]) > 0;
                        if (!is_long) continue;
                        auto [lu, lv] = pd.piece.edge(le);
                        long long cnt = 0;
                        for (const auto& p : sol.image) {
                          if (!p.is_vertex() && p.edge == le) ++cnt;
                          if (p.is_vertex() &&
                              (p.vertex == lu || p.vertex == lv))
                            ++cnt;
                        }
                        if (cnt < need) return true;
                      }
                      cands[a].push_back(sol);
                      if (cands[a].size() > 256)
                        throw BudgetError("anchor candidate flood");
                      return true;
                    },
                    &cs);
                spent += cs.configurations * kClusterStepWeight;
              } catch (const BudgetError&) {
                spent = budget;
                record_trip(stag + " anchor cluster");
                branch_broken = true;
                viable = false;
              }
              if (viable && cands[a].empty()) viable = false;
            }
            if (branch_broken) break;
            if (viable) {
              std::vector<size_t> choice(kint, 0);
              bool done_choice = false;
              while (!done_choice && !branch_broken) {
                ++spent;
                if (remaining() < 1) {
                  record_trip(stag + " anchor choice sweep");
                  branch_broken = true;
                  break;
                }
                std::vector<const ClusterSolution*> chosen(pieces.size(),
                                                           nullptr);
                for (int a = 0; a < kint; ++a)
                  chosen[interesting[a]] = &cands[a][choice[a]];

                int nch = static_cast<int>(chains.size());
                std::vector<int> tassign(tpieces.size(), 0);
                bool routable = nch > 0 || tpieces.empty();
                while (routable && !branch_broken) {
                  ++spent;
                  if (remaining() < 1) {
                    record_trip(stag + " piece routing sweep");
                    branch_broken = true;
                    break;
                  }
                  bool all_ok = true;
                  Placement pl(shp);
                  // Anchor geometry: short and internal long edges.
                  for (size_t pi = 0; pi < pieces.size() && all_ok; ++pi) {
                    const ClusterSolution* sol = chosen[pi];
                    const PieceDesc& pd = pieces[pi];
                    if (!sol) continue;
                    for (int le = 0; le < pd.piece.h(); ++le) {
                      if (pd.le_leaving[le]) continue;
                      int se = pd.le_to_shape[le];
                      pl.lengths[se] = sol->host.length(le);
                      EdgeTrace tr = trace_layout(*sol, le, g);
                      auto [lu, lv] = pd.piece.edge(le);
                      for (size_t i = 0; i < tr.order.size(); ++i) {
                        if (tr.off[i] == 0)
                          pl.put_vertex(pd.lv_to_shape[lu], tr.order[i]);
                        else if (tr.off[i] == pl.lengths[se])
                          pl.put_vertex(pd.lv_to_shape[lv], tr.order[i]);
                        else
                          pl.put_interior(se, tr.off[i], tr.order[i]);
                      }
                    }
                  }
                  for (int ci = 0; ci < nch && all_ok; ++ci) {
                    const ChainDesc& ch = chains[ci];
                    std::vector<int> W;
                    for (size_t ti = 0; ti < tpieces.size(); ++ti)
                      if (tassign[ti] == ci)
                        W.insert(W.end(), tpieces[ti].begin(),
                                 tpieces[ti].end());
                    const PieceDesc& spd = pieces[ch.start_piece];
                    int se0 = ch.edges.front();
                    int sle = -1;
                    for (int le = 0; le < spd.piece.h(); ++le)
                      if (spd.le_to_shape[le] == se0 && spd.le_leaving[le])
                        sle = le;
                    if (sle < 0) {
                      all_ok = false;
                      break;
                    }
                    EdgeTrace str =
                        trace_layout(*chosen[ch.start_piece], sle, g);
                    if (static_cast<int>(str.order.size()) < params.window) {
                      all_ok = false;
                      break;
                    }
                    std::vector<int> S(str.order.end() - params.window,
                                       str.order.end());
                    std::vector<int> T;
                    EdgeTrace etr;
                    const EdgeTrace* etr_p = nullptr;
                    if (ch.end_piece >= 0) {
                      const PieceDesc& epd = pieces[ch.end_piece];
                      int see = ch.edges.back();
                      int ele = -1;
                      for (int le = 0; le < epd.piece.h(); ++le)
                        if (epd.le_to_shape[le] == see && epd.le_leaving[le])
                          ele = le;
                      if (ele < 0) {
                        all_ok = false;
                        break;
                      }
                      etr = trace_layout(*chosen[ch.end_piece], ele, g);
                      if (static_cast<int>(etr.order.size()) < params.window) {
                        all_ok = false;
                        break;
                      }
                      etr_p = &etr;
                      for (int i = 0; i < params.window; ++i)
                        T.push_back(etr.order[etr.order.size() - 1 - i]);
                    }
                    PathStats ps;
                    std::optional<PathFragment> frag;
                    try {
                      frag = path_embed(g, W, S, T, {}, c, params.delta,
                                        std::max<long long>(1, remaining()),
                                        &ps);
                      spent +=
                          ps.states + kClusterStepWeight * ps.cluster_configs;
                    } catch (const BudgetError&) {
                      spent = budget;
                      record_trip(stag + " corridor walk");
                      branch_broken = true;
                      all_ok = false;
                      break;
                    }
                    if (!frag) {
                      all_ok = false;
                      break;
                    }
                    int anchor_vertex;
                    {
                      auto [u, v] = shp.edge(se0);
                      bool u_in = std::count(spd.pat_verts.begin(),
                                             spd.pat_verts.end(), u) > 0;
                      anchor_vertex = u_in ? u : v;
                    }
                    if (!merge_chain(g, shp, ch, str, etr_p, frag->walk,
                                     params.window, anchor_vertex, pl))
                      all_ok = false;
                  }
                  if (all_ok) {
                    auto res = finish_placement(g, shp, pl, c);
                    if (res) {
                      st->budget_spent = spent;
                      return res;
                    }
                  }
                  if (tpieces.empty()) break;
                  int i2 = static_cast<int>(tassign.size()) - 1;
                  while (i2 >= 0 && tassign[i2] == nch - 1) tassign[i2--] = 0;
                  if (i2 < 0) break;
                  ++tassign[i2];
                }
                int a2 = kint - 1;
                while (a2 >= 0 && choice[a2] + 1 == cands[a2].size())
                  choice[a2--] = 0;
                if (a2 < 0)
                  done_choice = true;
                else
                  ++choice[a2];
              }
            }
            int i2 = t - 1;
            while (i2 >= 0 && asg[i2] == kint - 1) asg[i2--] = 0;
            if (i2 < 0) break;
            ++asg[i2];
          }
          int i2 = t - 1;
          while (i2 >= 0 && pick[i2] == ni - t + i2) --i2;
          if (i2 < 0) break;
          ++pick[i2];
          for (int j = i2 + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
        }
      }
    }
  }

  st->budget_spent = spent;
  if (tripped)
    throw BudgetError("search budget exhausted; first starved branch: " +
                      first_trip);
  return std::nullopt;
}

GadgetAugmentation augment_with_clique_gadget(const Graph& g,
                                              const PatternGraph& h, int c) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (h.h() < 1) throw ParamError("base pattern needs an edge");
  if (g.n() < 3) throw ParamError("need three vertices to anchor the clique");
  GadgetAugmentation aug;
  aug.k = 8 * c * h.h();
  aug.targets = {0, 1, 2};
  long long c2 = 1LL * c * c;
  int plen = static_cast<int>(16 * c2 * c2) + 1;  // edges per tie path

  const int n = g.n();
  std::vector<std::pair<int, int>> edges = g.edges();
  int next = n;
  for (int i = 0; i < aug.k; ++i) aug.clique_vertices.push_back(next++);
  for (int i = 0; i < aug.k; ++i)
    for (int j = i + 1; j < aug.k; ++j)
      edges.push_back({aug.clique_vertices[i], aug.clique_vertices[j]});
  int hub = aug.clique_vertices[0];
  for (int t : aug.targets) {
    std::vector<int> path{hub};
    int prev = hub;
    for (int s = 0; s < plen - 1; ++s) {
      edges.push_back({prev, next});
      path.push_back(next);
      prev = next++;
    }
    edges.push_back({prev, t});
    path.push_back(t);
    aug.paths.push_back(std::move(path));
  }
  aug.g_prime = Graph(next, edges);

  int total = h.k() + h.h();
  std::vector<int> triple;
  std::function<void(int)> pick = [&](int from) {
    if (triple.size() == 3) {
      VariantLayout vl = build_variant(h, triple, aug.k);
      aug.variants.push_back(vl.pat);
      aug.variant_elements.push_back(vl.elements);
      return;
    }
    for (int el = from; el < total; ++el) {
      triple.push_back(el);
      pick(el + 1);
      triple.pop_back();
    }
  };
  pick(0);
  return aug;
}

FptGadgetOutcome fpt_embed_with_gadget(const Graph& g, const PatternGraph& h,
                                       int c, long long budget,
                                       FptStats* stats) {
  FptGadgetOutcome out;
  out.result = fpt_embed(g, h, c, budget, stats);
  if (!out.result || g.n() < 3) return out;

  GadgetAugmentation aug = augment_with_clique_gadget(g, h, c);
  const Embedding& core = out.result->embedding;
  std::optional<QuasiRealization> real =
      realize_quasi(core.host().pattern(), h);
  if (!real) return out;

  Rat filler(static_cast<long long>(c) * aug.g_prime.diameter() + 1);
  Embedding ext = extend_to_base(core, h, *real, filler);

  std::vector<int> elems;
  for (int t : aug.targets) {
    HostPoint p = ext.image(t);
    elems.push_back(p.is_vertex() ? p.vertex : h.k() + p.edge);
  }
  std::vector<int> sorted_elems = elems;
  std::sort(sorted_elems.begin(), sorted_elems.end());
  if (std::unique(sorted_elems.begin(), sorted_elems.end()) !=
      sorted_elems.end())
    return out;  // two targets share an element; no variant separates them

  int vi = -1;
  for (size_t i = 0; i < aug.variant_elements.size(); ++i)
    if (aug.variant_elements[i] == sorted_elems) vi = static_cast<int>(i);
  if (vi < 0) return out;
  out.variant_used = vi;
  VariantLayout vl = build_variant(h, sorted_elems, aug.k);

  long long c2 = 1LL * c * c;
  int tie_int = static_cast<int>(16 * c2 * c2) + 1;
  Rat tie_len(tie_int);

  // Host over the variant: the extended geometry, with chosen edges split
  // at the target image sitting on them.
  std::vector<Rat> lengths(vl.pat.h(), Rat(1));
  std::vector<std::vector<Rat>> offs(vl.pat.h());
  std::map<std::pair<int, int>, std::pair<int, int>> imap;
  const WeightedSubdivision& ehost = ext.host();
  for (int be = 0; be < h.h(); ++be) {
    Rat len = ehost.length(be);
    if (vl.whole_edge[be] >= 0) {
      int ve = vl.whole_edge[be];
      lengths[ve] = len;
      for (int i = 0; i < ehost.interior_count(be); ++i) {
        imap[{be, i}] = {ve, static_cast<int>(offs[ve].size())};
        offs[ve].push_back(ehost.offsets(be)[i]);
      }
    } else {
      int cut_index = -1;
      for (int t : aug.targets) {
        HostPoint p = ext.image(t);
        if (!p.is_vertex() && p.edge == be) cut_index = p.index;
      }
      if (cut_index < 0) return out;
      Rat cut = ehost.offsets(be)[cut_index];
      auto [e1, e2] = vl.split_pair[be];
      lengths[e1] = cut;
      lengths[e2] = Rat(len - cut);
      for (int i = 0; i < ehost.interior_count(be); ++i) {
        Rat o = ehost.offsets(be)[i];
        if (i == cut_index) continue;  // becomes the subdivision vertex
        if (o < cut) {
          imap[{be, i}] = {e1, static_cast<int>(offs[e1].size())};
          offs[e1].push_back(o);
        } else {
          imap[{be, i}] = {e2, static_cast<int>(offs[e2].size())};
          offs[e2].push_back(Rat(o - cut));
        }
      }
    }
  }
  for (int slot = 0; slot < 3; ++slot) {
    int ve = vl.attach_edge[slot];
    lengths[ve] = tie_len;
    for (int s = 1; s < tie_int; ++s) offs[ve].push_back(Rat(s));
  }

  std::vector<HostPoint> image(aug.g_prime.n());
  for (int gv = 0; gv < g.n(); ++gv) {
    HostPoint p = ext.image(gv);
    if (p.is_vertex()) {
      image[gv] = HostPoint::at_vertex(p.vertex);
    } else if (imap.count({p.edge, p.index})) {
      auto [ve, idx] = imap.at({p.edge, p.index});
      image[gv] = HostPoint::interior(ve, idx);
    } else {
      image[gv] = HostPoint::at_vertex(vl.sub_vertex[p.edge]);
    }
  }
  for (int i = 0; i < aug.k; ++i)
    image[aug.clique_vertices[i]] = HostPoint::at_vertex(vl.clique_vertex[i]);
  for (int pi = 0; pi < 3; ++pi) {
    int el = elems[pi];
    int slot = -1;
    for (int j = 0; j < 3; ++j)
      if (sorted_elems[j] == el) slot = j;
    int ve = vl.attach_edge[slot];
    const std::vector<int>& path = aug.paths[pi];
    for (size_t s = 1; s + 1 < path.size(); ++s)
      image[path[s]] = HostPoint::interior(ve, static_cast<int>(s) - 1);
  }

  try {
    WeightedSubdivision chost(vl.pat, lengths, offs);
    Embedding comp(aug.g_prime, chost, image);
    DistortionReport rep = distortion(comp);
    out.composite_distortion = rep.distortion;
    out.composite_verified = rep.non_contracting && rep.distortion <= Rat(c);
  } catch (const Error&) {
    out.composite_verified = false;
  }
  return out;
}

}  // namespace hembed
