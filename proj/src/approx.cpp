#include "hembed/approx.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "hembed/errors.hpp"
#include "hembed/line.hpp"
#include "hembed/normalize.hpp"

namespace hembed {

namespace {

void check_f_set(const Graph& g, const std::vector<int>& f_set) {
  for (int v : f_set)
    if (v < 0 || v >= g.n()) throw ParamError("guard vertex out of range");
}

bool side_triggers(const Graph& g, const std::vector<int>& side, int c) {
  if (static_cast<int>(side.size()) > 2 * c * c) return true;
  for (std::size_t a = 0; a < side.size(); ++a)
    for (std::size_t b = a + 1; b < side.size(); ++b)
      if (g.dist(side[a], side[b]) >= 2 * c + 1) return true;
  return false;
}

}  // namespace

ApproxParams ApproxParams::make(int c, int h) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (h < 1) throw ParamError("pattern needs at least one edge");
  ApproxParams p;
  p.c = c;
  p.h = h;
  p.ell = 20LL * c * c * c;
  p.r = 5 * p.ell * h;
  p.c_alg = Int(64000000) * ipow(Int(c), 24) * ipow(Int(h) + 1, 9);
  return p;
}

SearchTrace search(const Graph& g, const ApproxParams& params,
                   const std::vector<int>& f_set, int v) {
  if (v < 0 || v >= g.n()) throw ParamError("search start out of range");
  check_f_set(g, f_set);
  if (!g.connected()) throw ModelError("search expects a connected graph");
  const int c = params.c;
  const int mid = 2 * c * c;
  std::vector<int> df;
  if (!f_set.empty()) {
    df = g.multi_source_distances(f_set);
    if (df[v] <= params.r)
      throw ParamError("search start inside the protected zone");
  }
  SearchTrace t;
  const auto layers = g.bfs_layers(v);
  const int nl = static_cast<int>(layers.size());
  std::vector<char> prev_l(g.n(), 0), prev_r(g.n(), 0);
  std::vector<int> prev_marked;
  for (int i = mid;; ++i) {
    if (i >= nl) {
      t.outcome = SearchOutcome::FailExhausted;
      t.halt_layer = nl;
      return t;
    }
    SearchLayer rec;
    rec.i = i;
    rec.x = layers[i];
    std::sort(rec.x.begin(), rec.x.end());
    if (i == mid) {
      const int vl = rec.x.front();
      const auto& dvl = g.dist_row(vl);
      int vr = -1;
      for (int y : rec.x)
        if (dvl[y] >= 2 * c + 1) {
          vr = y;
          break;
        }
      t.v_l = vl;
      t.v_r = vr;
      for (int y : rec.x) {
        const bool inl = dvl[y] <= 2 * c;
        const bool inr = vr >= 0 && g.dist(vr, y) <= 2 * c;
        if (inl == inr) {
          t.outcome = SearchOutcome::Success;
          t.u_hat = v;
          t.halt_layer = i;
          t.layers.push_back(std::move(rec));
          return t;
        }
        (inl ? rec.xl : rec.xr).push_back(y);
      }
    } else {
      if (!df.empty()) {
        for (int y : rec.x) {
          if (df[y] <= params.r) {
            t.outcome = SearchOutcome::FailNearF;
            t.halt_layer = i;
            t.layers.push_back(std::move(rec));
            return t;
          }
        }
      }
      for (int y : rec.x) {
        bool inl = false, inr = false;
        for (int w : g.neighbors(y)) {
          if (prev_l[w]) inl = true;
          if (prev_r[w]) inr = true;
        }
        if (inl && inr) {
          t.outcome = SearchOutcome::Success;
          t.u_hat = y;
          t.halt_layer = i;
          t.layers.push_back(std::move(rec));
          return t;
        }
        if (!inl && !inr)
          throw ModelError("layer vertex with no labeled predecessor");
        (inl ? rec.xl : rec.xr).push_back(y);
      }
      for (int s = 0; s < 2; ++s) {
        const auto& side = s == 0 ? rec.xl : rec.xr;
        if (side_triggers(g, side, c)) {
          t.outcome = SearchOutcome::Success;
          t.u_hat = side.front();
          t.halt_layer = i;
          t.layers.push_back(std::move(rec));
          return t;
        }
      }
    }
    for (int y : prev_marked) prev_l[y] = prev_r[y] = 0;
    for (int y : rec.xl) prev_l[y] = 1;
    for (int y : rec.xr) prev_r[y] = 1;
    prev_marked = rec.x;
    t.layers.push_back(std::move(rec));
  }
}

std::vector<std::vector<int>> cover(const Graph& g,
                                    const ApproxParams& params) {
  if (g.n() == 0) throw ModelError("cover expects a nonempty graph");
  if (!g.connected()) throw ModelError("cover expects a connected graph");
  std::set<std::vector<int>> family;
  auto rec = [&](auto&& self, const std::vector<int>& f_cur) -> void {
    if (static_cast<int>(f_cur.size()) == params.h) return;
    std::vector<int> df;
    if (!f_cur.empty()) df = g.multi_source_distances(f_cur);
    for (int v = 0; v < g.n(); ++v) {
      if (!df.empty() && df[v] <= params.r) continue;
      SearchTrace t = search(g, params, f_cur, v);
      if (t.outcome != SearchOutcome::Success) continue;
      auto grown = [&](int w) {
        std::vector<int> nf = f_cur;
        nf.push_back(w);
        std::sort(nf.begin(), nf.end());
        self(self, nf);
      };
      grown(v);
      if (t.u_hat != v) grown(t.u_hat);
      return;
    }
    family.insert(f_cur);
  };
  rec(rec, {});
  return std::vector<std::vector<int>>(family.begin(), family.end());
}

namespace {

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    for (int w : g.neighbors(verts[a])) {
      if (w <= verts[a]) continue;
      auto it = std::lower_bound(verts.begin(), verts.end(), w);
      if (it != verts.end() && *it == w)
        es.emplace_back(static_cast<int>(a),
                        static_cast<int>(it - verts.begin()));
    }
  }
  return Graph(static_cast<int>(verts.size()), es);
}

// Whole-graph fallback: one subdivided edge carrying the line order.
std::optional<Embedding> line_branch(const Graph& g, int c) {
  LineApproxResult la = line_embed_approx(g, c);
  const auto* le = std::get_if<LineEmbedding>(&la);
  if (le == nullptr) return std::nullopt;
  Embedding emb = line_to_embedding(g, *le);
  DistortionReport rep = distortion(emb);
  if (!rep.non_contracting) return std::nullopt;
  return emb;
}

}  // namespace

std::optional<Embedding> stitch(const Graph& g, const ApproxParams& params,
                                const std::vector<int>& f_raw) {
  if (g.n() == 0) throw ModelError("stitch expects a nonempty graph");
  if (!g.connected()) throw ModelError("stitch expects a connected graph");
  check_f_set(g, f_raw);
  std::vector<int> f_set = f_raw;
  std::sort(f_set.begin(), f_set.end());
  f_set.erase(std::unique(f_set.begin(), f_set.end()), f_set.end());
  const int c = params.c;
  const long long delta = 4 * params.r;

  long long big_r = delta;
  if (f_set.size() >= 2) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t a = 0; a < f_set.size() && !grew; ++a) {
        for (std::size_t b = a + 1; b < f_set.size() && !grew; ++b) {
          const long long d = g.dist(f_set[a], f_set[b]);
          if (2 * big_r <= d && d <= 2 * big_r + delta) {
            big_r += delta;
            grew = true;
          }
        }
      }
    }
  }

  std::vector<int> bverts;
  std::vector<int> df;
  if (!f_set.empty()) {
    df = g.multi_source_distances(f_set);
    for (int v = 0; v < g.n(); ++v)
      if (df[v] <= big_r) bverts.push_back(v);
  }
  const auto bcomps = g.components(bverts);

  std::vector<int> rest;
  {
    std::vector<char> inb(g.n(), 0);
    for (int v : bverts) inb[v] = 1;
    for (int v = 0; v < g.n(); ++v)
      if (!inb[v]) rest.push_back(v);
  }
  const auto outside = g.components(rest);

  std::vector<int> comp_of_b(g.n(), -1);
  for (std::size_t i = 0; i < bcomps.size(); ++i)
    for (int v : bcomps[i]) comp_of_b[v] = static_cast<int>(i);

  std::vector<int> db;
  if (!bverts.empty()) db = g.multi_source_distances(bverts);

  std::vector<std::vector<int>> deeps;
  std::vector<std::vector<int>> bstar(bcomps.size());
  for (std::size_t i = 0; i < bcomps.size(); ++i) bstar[i] = bcomps[i];
  for (const auto& comp : outside) {
    bool deep = bverts.empty();
    if (!deep)
      for (int v : comp)
        if (db[v] >= delta / 2) {
          deep = true;
          break;
        }
    std::set<int> attach;
    for (int v : comp)
      for (int w : g.neighbors(v))
        if (comp_of_b[w] >= 0) attach.insert(comp_of_b[w]);
    if (deep) {
      deeps.push_back(comp);
    } else {
      if (attach.size() != 1)
        throw ModelError("shallow component without a unique ball component");
      auto& tgt = bstar[*attach.begin()];
      tgt.insert(tgt.end(), comp.begin(), comp.end());
    }
  }

  if (bcomps.empty() || deeps.empty()) {
    if (bcomps.size() > 1)
      throw ModelError("ball components with nothing joining them");
    return line_branch(g, c);
  }

  struct DeepEdge {
    int tail = -1;
    int head = -1;
    std::vector<int> order;
  };
  std::vector<DeepEdge> dedges(deeps.size());
  for (std::size_t t = 0; t < deeps.size(); ++t) {
    const auto& z = deeps[t];
    std::set<int> attach;
    for (int v : z)
      for (int w : g.neighbors(v))
        if (comp_of_b[w] >= 0) attach.insert(comp_of_b[w]);
    if (attach.empty())
      throw ModelError("deep component detached from the ball");
    if (attach.size() > 2) return std::nullopt;
    dedges[t].tail = *attach.begin();
    dedges[t].head = *attach.rbegin();

    Graph zg = induced_subgraph(g, z);
    LineApproxResult la = line_embed_approx(zg, c);
    const auto* le = std::get_if<LineEmbedding>(&la);
    if (le == nullptr) return std::nullopt;
    std::vector<int> order(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) order[j] = z[le->order[j]];
    if (dedges[t].tail != dedges[t].head) {
      auto first_attacher = [&](int bcomp) {
        for (std::size_t j = 0; j < order.size(); ++j)
          for (int w : g.neighbors(order[j]))
            if (comp_of_b[w] == bcomp) return j;
        return order.size();
      };
      if (first_attacher(dedges[t].tail) > first_attacher(dedges[t].head))
        std::reverse(order.begin(), order.end());
    }
    dedges[t].order = std::move(order);
  }

  std::vector<std::pair<int, int>> pedges;
  for (const auto& de : dedges) pedges.emplace_back(de.tail, de.head);
  PatternGraph hp(static_cast<int>(bcomps.size()), pedges);

  std::vector<int> home(bcomps.size(), -1);
  for (std::size_t t = 0; t < dedges.size(); ++t) {
    for (int end : {dedges[t].tail, dedges[t].head})
      if (home[end] < 0) home[end] = static_cast<int>(t);
  }
  for (int hm : home)
    if (hm < 0) throw ModelError("ball component without an incident edge");

  for (auto& bs : bstar) std::sort(bs.begin(), bs.end());

  std::vector<HostPoint> image(g.n());
  std::vector<char> seen(g.n(), 0);
  auto place = [&](int v, HostPoint p) {
    if (seen[v]) throw ModelError("vertex placed twice during assembly");
    seen[v] = 1;
    image[v] = p;
  };
  for (std::size_t i = 0; i < bstar.size(); ++i)
    place(bstar[i].front(), HostPoint::at_vertex(static_cast<int>(i)));

  std::vector<Rat> lengths(dedges.size());
  std::vector<std::vector<Rat>> offsets(dedges.size());
  for (std::size_t t = 0; t < dedges.size(); ++t) {
    const auto& de = dedges[t];
    std::vector<int> chain;
    chain.push_back(bstar[de.tail].front());
    if (home[de.tail] == static_cast<int>(t))
      chain.insert(chain.end(), bstar[de.tail].begin() + 1,
                   bstar[de.tail].end());
    chain.insert(chain.end(), de.order.begin(), de.order.end());
    if (de.head != de.tail && home[de.head] == static_cast<int>(t)) {
      for (std::size_t j = bstar[de.head].size(); j-- > 1;)
        chain.push_back(bstar[de.head][j]);
    }
    chain.push_back(bstar[de.head].front());

    Rat along{0};
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      Rat gap = rat_of(g.dist(chain[j], chain[j + 1]));
      along += gap;
      if (j + 2 < chain.size()) {
        offsets[t].push_back(along);
        place(chain[j + 1],
              HostPoint::interior(static_cast<int>(t),
                                  static_cast<int>(offsets[t].size()) - 1));
      }
    }
    lengths[t] = along;
  }
  for (int v = 0; v < g.n(); ++v)
    if (!seen[v]) throw ModelError("vertex missed during assembly");

  WeightedSubdivision host(hp, lengths, offsets);
  Embedding emb(g, host, image);
  DistortionReport rep = distortion(emb);
  if (!rep.non_contracting) return std::nullopt;
  if (!is_pushing(emb))
    throw ModelError("assembled chains lost the pushing property");
  NormalizeResult norm = normalize_to_proper_pushing(emb);
  return norm.embedding;
}

namespace {

struct Chain {
  int a = -1;
  int b = -1;
  int internal = 0;
};

bool route_chains(const PatternGraph& h, const std::vector<Chain>& chains,
                  std::size_t ci, std::vector<char>& vused,
                  std::vector<char>& eused, const std::vector<int>& phi) {
  if (ci == chains.size()) return true;
  const Chain& ch = chains[ci];
  const int src = phi[ch.a];
  const int dst = phi[ch.b];
  const int maxlen = ch.internal + 1;
  auto go = [&](auto&& self, int cur, int used) -> bool {
    if (used == maxlen) return false;
    for (auto [e, far] : h.incident(cur)) {
      if (eused[e]) continue;
      if (far == dst) {
        eused[e] = 1;
        if (route_chains(h, chains, ci + 1, vused, eused, phi)) return true;
        eused[e] = 0;
      } else if (!vused[far]) {
        eused[e] = 1;
        vused[far] = 1;
        if (self(self, far, used + 1)) return true;
        vused[far] = 0;
        eused[e] = 0;
      }
    }
    return false;
  };
  return go(go, src, 0);
}

}  // namespace

std::optional<std::vector<int>> topological_subgraph_check(
    const PatternGraph& hp, const PatternGraph& h) {
  if (h.k() > 10)
    throw SizeError("target pattern too large for the subdivision check");
  if (hp.k() < 1 || h.k() < 1) throw ParamError("patterns must be nonempty");
  if (!hp.connected()) throw ModelError("candidate pattern must be connected");

  std::vector<int> phi(hp.k(), -1);
  if (hp.k() == 1 && hp.h() == 0) {
    phi[0] = 0;
    return phi;
  }

  std::vector<int> branch;
  for (int v = 0; v < hp.k(); ++v)
    if (hp.degree(v) != 2) branch.push_back(v);

  if (branch.empty()) {
    // hp is a single cycle; it fits along any cycle of h with few enough
    // edges, every hp vertex becoming a subdivision point
    const int cap = hp.k();
    for (int s = 0; s < h.k(); ++s) {
      std::vector<char> vu(h.k(), 0), eu(h.h(), 0);
      auto go = [&](auto&& self, int cur, int used) -> bool {
        for (auto [e, far] : h.incident(cur)) {
          if (eu[e]) continue;
          if (far == s && used + 1 <= cap) return true;
          if (far != s && !vu[far] && used + 1 < cap) {
            eu[e] = 1;
            vu[far] = 1;
            if (self(self, far, used + 1)) return true;
            vu[far] = 0;
            eu[e] = 0;
          }
        }
        return false;
      };
      vu[s] = 1;
      if (go(go, s, 0)) return phi;
    }
    return std::nullopt;
  }

  std::vector<Chain> chains;
  std::vector<char> edge_done(hp.h(), 0);
  int covered = 0;
  for (int v : branch) {
    for (auto [e, far] : hp.incident(v)) {
      if (edge_done[e]) continue;
      edge_done[e] = 1;
      ++covered;
      if (hp.is_loop(e)) {
        chains.push_back({v, v, 0});
        continue;
      }
      int internal = 0;
      int prev_edge = e;
      int cur = far;
      while (hp.degree(cur) == 2) {
        ++internal;
        int nxt_e = -1, nxt_far = -1;
        for (auto [e2, f2] : hp.incident(cur)) {
          if (e2 != prev_edge) {
            nxt_e = e2;
            nxt_far = f2;
            break;
          }
        }
        if (nxt_e < 0)
          throw ModelError("degree two vertex without a continuation");
        edge_done[nxt_e] = 1;
        ++covered;
        prev_edge = nxt_e;
        cur = nxt_far;
      }
      chains.push_back({v, cur, internal});
    }
  }
  if (covered != hp.h())
    throw ModelError("candidate pattern has a stray cycle component");
  if (static_cast<int>(chains.size()) > h.h()) return std::nullopt;

  std::vector<char> vused(h.k(), 0), eused(h.h(), 0);
  auto assign = [&](auto&& self, std::size_t bi) -> bool {
    if (bi == branch.size())
      return route_chains(h, chains, 0, vused, eused, phi);
    for (int w = 0; w < h.k(); ++w) {
      if (vused[w] || h.degree(w) < hp.degree(branch[bi])) continue;
      vused[w] = 1;
      phi[branch[bi]] = w;
      if (self(self, bi + 1)) return true;
      phi[branch[bi]] = -1;
      vused[w] = 0;
    }
    return false;
  };
  if (assign(assign, 0)) return phi;
  return std::nullopt;
}

namespace {

// Marked interior points are legitimate subdivision spots, so for the
// compatibility test each host edge reappears with its points promoted to
// pattern vertices, capped at what any image path could use.
PatternGraph refine_host_pattern(const WeightedSubdivision& host,
                                 int budget) {
  const PatternGraph& pat = host.pattern();
  int k = pat.k();
  std::vector<std::pair<int, int>> es;
  for (int e = 0; e < pat.h(); ++e) {
    auto [u, v] = pat.edge(e);
    const int extra = std::min(host.interior_count(e), budget);
    int prev = u;
    for (int j = 0; j < extra; ++j) {
      es.emplace_back(prev, k);
      prev = k++;
    }
    es.emplace_back(prev, v);
  }
  return PatternGraph(k, es);
}

}  // namespace

ApproxOutcome approx_embed(const Graph& g, const PatternGraph& hpat, int c) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (hpat.k() < 1) throw ParamError("pattern must be nonempty");
  if (g.n() == 0) throw ModelError("graph must be nonempty");
  if (!g.connected()) throw ModelError("graph must be connected");

  ApproxOutcome out;
  out.c_alg =
      Int(64000000) * ipow(Int(c), 24) * ipow(Int(hpat.h()) + 1, 9);

  if (g.n() == 1) {
    WeightedSubdivision host(PatternGraph::single_vertex(), {}, {});
    out.embedding = Embedding(g, host, {HostPoint::at_vertex(0)});
    out.distortion = rat_of(1);
    return out;
  }
  if (hpat.h() == 0) return out;
  if (local_density_reject(g, hpat.h(), c)) return out;

  const Rat cap = Rat(out.c_alg);
  for (int hs = 1; hs <= hpat.h(); ++hs) {
    const ApproxParams params = ApproxParams::make(c, hs);
    for (const auto& f_set : cover(g, params)) {
      auto cand = stitch(g, params, f_set);
      if (!cand) continue;
      const PatternGraph refined = refine_host_pattern(cand->host(), hpat.h());
      if (!topological_subgraph_check(refined, hpat)) continue;
      DistortionReport rep = distortion(*cand);
      if (!rep.non_contracting) continue;
      const Rat d = rep.distortion;
      if (d > cap) continue;
      if (!out.embedding || d < out.distortion) {
        out.embedding = std::move(*cand);
        out.distortion = d;
      }
    }
  }
  return out;
}

}  // namespace hembed
