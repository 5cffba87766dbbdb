#include "hembed/embedding.hpp"

#include <algorithm>

#include "hembed/errors.hpp"

namespace hembed {

Embedding::Embedding(Graph g, WeightedSubdivision host, std::vector<HostPoint> image)
    : g_(std::move(g)), host_(std::move(host)), image_(std::move(image)) {
  if (static_cast<int>(image_.size()) != g_.n())
    throw ModelError("image list does not match vertex count");
  interior_occ_.resize(host_.pattern().h());
  for (int e = 0; e < host_.pattern().h(); ++e)
    interior_occ_[e].assign(host_.interior_count(e), -1);
  vertex_occ_.assign(host_.pattern().k(), -1);
  for (int v = 0; v < g_.n(); ++v) {
    const HostPoint& p = image_[v];
    if (!host_.valid_point(p)) throw ModelError("image point outside the host");
    int& slot = p.is_vertex() ? vertex_occ_[p.vertex]
                              : interior_occ_[p.edge][p.index];
    if (slot >= 0)
      throw DegenerateError("two vertices share one host point");
    slot = v;
  }
}

const HostPoint& Embedding::image(int v) const {
  if (v < 0 || v >= g_.n()) throw ParamError("vertex out of range");
  return image_[v];
}

int Embedding::occupant_interior(int e, int i) const {
  if (e < 0 || e >= host_.pattern().h()) throw ParamError("edge out of range");
  if (i < 0 || i >= host_.interior_count(e)) throw ParamError("interior index out of range");
  return interior_occ_[e][i];
}

int Embedding::occupant_vertex(int pattern_vertex) const {
  if (pattern_vertex < 0 || pattern_vertex >= host_.pattern().k())
    throw ParamError("pattern vertex out of range");
  return vertex_occ_[pattern_vertex];
}

int Embedding::occupant(const HostPoint& p) const {
  return p.is_vertex() ? occupant_vertex(p.vertex)
                       : occupant_interior(p.edge, p.index);
}

Rat Embedding::host_dist(int u, int v) const {
  return host_.host_distance(image(u), image(v));
}

DistortionReport distortion(const Embedding& emb) {
  DistortionReport rep;
  const Graph& g = emb.graph();
  if (g.n() == 1) return rep;
  if (!g.connected()) throw ModelError("distortion needs a connected graph");
  const auto& host = emb.host();

  // Anchor routes are hoisted per vertex so the pair loop combines cached
  // (pattern vertex, approach cost) entries instead of recomputing them.
  std::vector<std::vector<std::pair<int, Rat>>> anch(g.n());
  std::vector<int> on_edge(g.n());
  std::vector<Rat> at_off(g.n());
  for (int v = 0; v < g.n(); ++v) {
    const HostPoint& p = emb.image(v);
    anch[v] = host.anchors(p);
    on_edge[v] = p.edge;
    if (!p.is_vertex()) at_off[v] = host.offsets(p.edge)[p.index];
  }

  bool first = true;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      Rat hd;
      bool have = false;
      if (on_edge[u] >= 0 && on_edge[u] == on_edge[v]) {
        Rat direct = at_off[u] - at_off[v];
        if (direct < 0) direct = -direct;
        hd = direct;
        have = true;
      }
      for (const auto& [pa, ca] : anch[u])
        for (const auto& [pb, cb] : anch[v]) {
          Rat cand = ca + host.vertex_distance(pa, pb) + cb;
          if (!have || cand < hd) {
            hd = cand;
            have = true;
          }
        }
      if (hd == 0) throw DegenerateError("two vertices at host distance zero");
      Rat dg = g.dist(u, v);
      Rat exp = hd / dg;
      Rat con = dg / hd;
      if (first || exp > rep.expansion) {
        rep.expansion = exp;
        rep.expansion_witness = {u, v, exp};
      }
      if (first || con > rep.contraction) {
        rep.contraction = con;
        rep.contraction_witness = {u, v, con};
      }
      first = false;
    }
  rep.distortion = rep.expansion * rep.contraction;
  rep.non_contracting = rep.contraction <= 1;
  return rep;
}

namespace {

struct ChainEntry {
  Rat pos;
  HostPoint point;
  int occupant;  // -1 for a free marker or an unoccupied pattern vertex
};

// All addressable locations of edge e in offset order, endpoints included.
// For a loop both entries of the single endpoint vertex appear, at offset 0
// and at the full length.
std::vector<ChainEntry> edge_chain(const Embedding& emb, int e) {
  const auto& host = emb.host();
  auto [u, v] = host.pattern().edge(e);
  std::vector<ChainEntry> chain;
  chain.push_back({Rat(0), HostPoint::at_vertex(u), emb.occupant_vertex(u)});
  const auto& off = host.offsets(e);
  for (int i = 0; i < static_cast<int>(off.size()); ++i)
    chain.push_back({off[i], HostPoint::interior(e, i), emb.occupant_interior(e, i)});
  chain.push_back({host.length(e), HostPoint::at_vertex(v), emb.occupant_vertex(v)});
  return chain;
}

}  // namespace

bool is_pushing(const Embedding& emb, PushingViolation* out) {
  const Graph& g = emb.graph();
  if (g.n() <= 1) return true;
  for (int e = 0; e < emb.host().pattern().h(); ++e) {
    auto chain = edge_chain(emb, e);
    int prev = -1;
    Rat prev_pos;
    for (const auto& entry : chain) {
      if (entry.occupant < 0) continue;
      if (prev >= 0 && !(prev == entry.occupant && entry.point.is_vertex())) {
        Rat along = entry.pos - prev_pos;
        int dg = g.dist(prev, entry.occupant);
        if (along != Rat(dg)) {
          if (out) *out = {e, prev, entry.occupant, along, dg};
          return false;
        }
      }
      prev = entry.occupant;
      prev_pos = entry.pos;
    }
  }
  return true;
}

namespace {

// Covered subset of [0, S] for one graph edge, as closed intervals.
// Walking the segment from its left end, the distance to a fixed image is
// min(t + A, S - t + B) where A and B are the distances from the two segment
// ends; the coverage indicator asks whether the two such terms sum to exactly
// the image pair's distance. Each min is piecewise linear with one breakpoint,
// so coverage is decided piece by piece.
std::vector<std::pair<Rat, Rat>> covered_intervals(const Rat& S, const Rat& Au,
                                                   const Rat& Bu, const Rat& Av,
                                                   const Rat& Bv, const Rat& D) {
  auto eval = [&](const Rat& t) {
    Rat left_u = t + Au, right_u = S - t + Bu;
    Rat left_v = t + Av, right_v = S - t + Bv;
    Rat du = std::min(left_u, right_u);
    Rat dv = std::min(left_v, right_v);
    Rat sum = du + dv;
    return sum;
  };
  Rat break_u = (S + Bu - Au) / 2;
  Rat break_v = (S + Bv - Av) / 2;
  std::vector<Rat> cuts{Rat(0), S};
  for (const Rat& b : {break_u, break_v})
    if (b > 0 && b < S) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<Rat, Rat>> covered;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rat& x = cuts[i];
    const Rat& y = cuts[i + 1];
    Rat fx = eval(x), fy = eval(y);
    // The geodesic test reads "sum equals D"; since both min-terms are lower
    // bounded by actual distances, sum < D cannot occur, so test with <=.
    bool cx = fx <= D, cy = fy <= D;
    if (cx && cy) {
      covered.push_back({x, y});
    } else if (cx || cy) {
      Rat t = x + (y - x) * (D - fx) / (fy - fx);
      if (cx)
        covered.push_back({x, t});
      else
        covered.push_back({t, y});
    }
  }
  return covered;
}

// Remove a closed interval from a list of disjoint open intervals.
void subtract_closed(std::vector<std::pair<Rat, Rat>>& open, const Rat& a,
                     const Rat& b) {
  std::vector<std::pair<Rat, Rat>> out;
  for (auto& [lo, hi] : open) {
    if (b <= lo || a >= hi) {
      out.push_back({lo, hi});
      continue;
    }
    if (a > lo) out.push_back({lo, std::min(a, hi)});
    if (b < hi) out.push_back({std::max(b, lo), hi});
  }
  open = std::move(out);
}

}  // namespace

bool is_proper(const Embedding& emb, ProperWitness* out) {
  const Graph& g = emb.graph();
  const auto& host = emb.host();
  auto edges = g.edges();
  if (g.n() == 1) {
    // A lone image cannot cover anything beyond its own point.
    if (host.total_points() == 1 && host.pattern().h() == 0) return true;
    if (out) *out = {false, HostPoint::at_vertex(0), -1, Rat(0), Rat(0)};
    return false;
  }

  std::vector<Rat> edge_dist;
  edge_dist.reserve(edges.size());
  for (auto [u, v] : edges) edge_dist.push_back(emb.host_dist(u, v));

  auto point_covered = [&](const HostPoint& z) {
    // An occupied point sits at distance zero from its own image, so any
    // incident graph edge covers it.
    int occ = emb.occupant(z);
    if (occ >= 0 && !g.neighbors(occ).empty()) return true;
    for (size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      Rat du = host.host_distance(z, emb.image(u));
      Rat dv = host.host_distance(z, emb.image(v));
      if (du + dv == edge_dist[i]) return true;
    }
    return false;
  };

  for (int pv = 0; pv < host.pattern().k(); ++pv) {
    HostPoint z = HostPoint::at_vertex(pv);
    if (!point_covered(z)) {
      if (out) *out = {false, z, -1, Rat(0), Rat(0)};
      return false;
    }
  }
  for (int e = 0; e < host.pattern().h(); ++e)
    for (int i = 0; i < host.interior_count(e); ++i) {
      HostPoint z = HostPoint::interior(e, i);
      if (!point_covered(z)) {
        if (out) *out = {false, z, -1, Rat(0), Rat(0)};
        return false;
      }
    }

  std::vector<std::vector<int>> touching(g.n());
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    touching[edges[ei].first].push_back(static_cast<int>(ei));
    touching[edges[ei].second].push_back(static_cast<int>(ei));
  }

  for (int e = 0; e < host.pattern().h(); ++e) {
    auto chain = edge_chain(emb, e);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      Rat S = chain[i + 1].pos - chain[i].pos;
      if (S == 0) continue;
      std::vector<std::pair<Rat, Rat>> uncovered{{Rat(0), S}};
      auto apply = [&](size_t ei) {
        auto [u, v] = edges[ei];
        Rat Au = host.host_distance(chain[i].point, emb.image(u));
        Rat Bu = host.host_distance(chain[i + 1].point, emb.image(u));
        Rat Av = host.host_distance(chain[i].point, emb.image(v));
        Rat Bv = host.host_distance(chain[i + 1].point, emb.image(v));
        for (auto& [a, b] : covered_intervals(S, Au, Bu, Av, Bv, edge_dist[ei]))
          subtract_closed(uncovered, a, b);
      };
      // Graph edges at the segment's boundary occupants usually cover it
      // outright, so they go first; the full sweep only runs on leftovers.
      std::vector<char> tried(edges.size(), 0);
      for (const auto& entry : {chain[i], chain[i + 1]}) {
        if (entry.occupant < 0) continue;
        for (int ei : touching[entry.occupant]) {
          if (tried[ei] || uncovered.empty()) continue;
          tried[ei] = 1;
          apply(ei);
        }
      }
      for (size_t ei = 0; ei < edges.size(); ++ei) {
        if (uncovered.empty()) break;
        if (!tried[ei]) apply(ei);
      }
      if (!uncovered.empty()) {
        if (out)
          *out = {true, HostPoint{}, e, chain[i].pos + uncovered[0].first,
                  chain[i].pos + uncovered[0].second};
        return false;
      }
    }
  }
  return true;
}

}  // namespace hembed
