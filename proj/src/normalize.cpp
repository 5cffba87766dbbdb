#include "hembed/normalize.hpp"

#include <algorithm>
#include <map>

#include "hembed/errors.hpp"

namespace hembed {

namespace {

// Working model of the host during surgery. Node ids and edge slots are
// stable; deletions flip alive flags. Interior lists hold occupied points
// only, bare markers carry no metric information and are shed on entry.
struct MutPoint {
  Rat pos;
  int occupant;  // source vertex, always >= 0 here
};

struct MutEdge {
  int a = -1, b = -1;
  Rat len;
  std::vector<MutPoint> pts;  // strictly increasing positions in (0, len)
  bool alive = false;
};

struct MutNode {
  int occupant = -1;
  bool alive = false;
};

struct MutHost {
  std::vector<MutNode> nodes;
  std::vector<MutEdge> edges;

  int add_node(int occupant) {
    nodes.push_back({occupant, true});
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_edge(MutEdge e) {
    e.alive = true;
    edges.push_back(std::move(e));
    return static_cast<int>(edges.size()) - 1;
  }
};

struct Materialized {
  Embedding emb;
  std::vector<int> node_of_pv;  // materialized pattern vertex -> mut node id
  std::vector<int> edge_of_pe;  // materialized edge -> mut edge slot
};

Materialized materialize(const MutHost& mh, const Graph& g) {
  std::vector<int> pv_of_node(mh.nodes.size(), -1);
  std::vector<int> node_of_pv;
  for (size_t i = 0; i < mh.nodes.size(); ++i)
    if (mh.nodes[i].alive) {
      pv_of_node[i] = static_cast<int>(node_of_pv.size());
      node_of_pv.push_back(static_cast<int>(i));
    }
  std::vector<std::pair<int, int>> pedges;
  std::vector<Rat> lengths;
  std::vector<std::vector<Rat>> offsets;
  std::vector<int> edge_of_pe;
  for (size_t e = 0; e < mh.edges.size(); ++e) {
    const MutEdge& me = mh.edges[e];
    if (!me.alive) continue;
    pedges.push_back({pv_of_node[me.a], pv_of_node[me.b]});
    lengths.push_back(me.len);
    std::vector<Rat> off;
    for (const auto& p : me.pts) off.push_back(p.pos);
    offsets.push_back(std::move(off));
    edge_of_pe.push_back(static_cast<int>(e));
  }
  PatternGraph pat(static_cast<int>(node_of_pv.size()), pedges);
  WeightedSubdivision host(pat, lengths, offsets);
  std::vector<HostPoint> image(g.n());
  std::vector<char> seen(g.n(), 0);
  for (size_t i = 0; i < node_of_pv.size(); ++i) {
    int occ = mh.nodes[node_of_pv[i]].occupant;
    if (occ >= 0) {
      image[occ] = HostPoint::at_vertex(static_cast<int>(i));
      seen[occ] = 1;
    }
  }
  for (size_t pe = 0; pe < edge_of_pe.size(); ++pe) {
    const MutEdge& me = mh.edges[edge_of_pe[pe]];
    for (size_t i = 0; i < me.pts.size(); ++i) {
      image[me.pts[i].occupant] =
          HostPoint::interior(static_cast<int>(pe), static_cast<int>(i));
      seen[me.pts[i].occupant] = 1;
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (!seen[v]) throw ModelError("surgery lost an image");
  return {Embedding(g, host, image), std::move(node_of_pv), std::move(edge_of_pe)};
}

// Drop host components carrying no image; all images must stay in one
// component, which holds because improper material lies off the geodesics
// that keep adjacent images connected.
void prune_components(MutHost& mh) {
  size_t nn = mh.nodes.size();
  std::vector<int> comp(nn, -1);
  int nc = 0;
  for (size_t s = 0; s < nn; ++s) {
    if (!mh.nodes[s].alive || comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = nc;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& me : mh.edges) {
        if (!me.alive) continue;
        int other = -1;
        if (me.a == u) other = me.b;
        else if (me.b == u) other = me.a;
        if (other >= 0 && comp[other] < 0) {
          comp[other] = nc;
          stack.push_back(other);
        }
      }
    }
    ++nc;
  }
  int image_comp = -1;
  auto note = [&](int c) {
    if (image_comp < 0) image_comp = c;
    else if (image_comp != c) throw ModelError("images split across host components");
  };
  for (size_t i = 0; i < nn; ++i)
    if (mh.nodes[i].alive && mh.nodes[i].occupant >= 0) note(comp[i]);
  for (const auto& me : mh.edges)
    if (me.alive && !me.pts.empty()) note(comp[me.a]);
  if (image_comp < 0) throw ModelError("no images left on the host");
  for (size_t i = 0; i < nn; ++i)
    if (mh.nodes[i].alive && comp[i] != image_comp) mh.nodes[i].alive = false;
  for (auto& me : mh.edges) {
    if (!me.alive) continue;
    if (comp[me.a] != image_comp) {
      if (!me.pts.empty()) throw ModelError("pruned edge still carries images");
      me.alive = false;
    }
  }
}

// Remove an improper, necessarily unoccupied, pattern vertex. Each incident
// edge is cut back to its occupied point nearest the vertex, which becomes a
// fresh leaf; pointless edges vanish entirely.
void surgery_vertex(MutHost& mh, int z) {
  if (mh.nodes[z].occupant >= 0)
    throw ModelError("improper witness at an occupied vertex");
  for (size_t ei = 0; ei < mh.edges.size(); ++ei) {
    MutEdge& me = mh.edges[ei];
    if (!me.alive || (me.a != z && me.b != z)) continue;
    bool loop = me.a == z && me.b == z;
    if (me.pts.empty()) {
      me.alive = false;
      continue;
    }
    if (loop) {
      if (me.pts.size() == 1) {
        // A lone image on a vanishing loop has nowhere to attach.
        throw ModelError("loop surgery would strand an image");
      }
      MutEdge ne;
      ne.a = mh.add_node(me.pts.front().occupant);
      ne.b = mh.add_node(me.pts.back().occupant);
      Rat base = me.pts.front().pos;
      ne.len = me.pts.back().pos - base;
      for (size_t i = 1; i + 1 < me.pts.size(); ++i)
        ne.pts.push_back({me.pts[i].pos - base, me.pts[i].occupant});
      me.alive = false;
      mh.add_edge(std::move(ne));
      continue;
    }
    MutEdge ne;
    if (me.a == z) {
      int leaf = mh.add_node(me.pts.front().occupant);
      ne.a = leaf;
      ne.b = me.b;
      Rat base = me.pts.front().pos;
      ne.len = me.len - base;
      for (size_t i = 1; i < me.pts.size(); ++i)
        ne.pts.push_back({me.pts[i].pos - base, me.pts[i].occupant});
    } else {
      int leaf = mh.add_node(me.pts.back().occupant);
      ne.a = me.a;
      ne.b = leaf;
      ne.len = me.pts.back().pos;
      for (size_t i = 0; i + 1 < me.pts.size(); ++i)
        ne.pts.push_back({me.pts[i].pos, me.pts[i].occupant});
    }
    me.alive = false;
    mh.add_edge(std::move(ne));
  }
  mh.nodes[z].alive = false;
  prune_components(mh);
}

// Cut the open interval (lo, hi) out of edge slot ei. Boundary landing on an
// occupied point promotes that point to a leaf; a mid-material boundary gets
// a bare leaf which later rounds trim further if it stays improper.
void surgery_segment(MutHost& mh, int ei, const Rat& lo, const Rat& hi) {
  MutEdge me = mh.edges[ei];
  mh.edges[ei].alive = false;
  if (lo > 0) {
    MutEdge left;
    left.a = me.a;
    left.len = lo;
    int promoted = -1;
    for (const auto& p : me.pts) {
      if (p.pos < lo) left.pts.push_back(p);
      else if (p.pos == lo) promoted = p.occupant;
    }
    if (promoted < 0 && !left.pts.empty() && left.pts.back().pos == lo) {
      promoted = left.pts.back().occupant;
      left.pts.pop_back();
    }
    if (promoted >= 0) {
      left.b = mh.add_node(promoted);
    } else {
      left.b = mh.add_node(-1);
    }
    mh.add_edge(std::move(left));
  }
  if (hi < me.len) {
    MutEdge right;
    right.b = me.b;
    right.len = me.len - hi;
    int promoted = -1;
    for (const auto& p : me.pts) {
      if (p.pos > hi) right.pts.push_back({p.pos - hi, p.occupant});
      else if (p.pos == hi) promoted = p.occupant;
    }
    if (promoted >= 0) {
      right.a = mh.add_node(promoted);
    } else {
      right.a = mh.add_node(-1);
    }
    mh.add_edge(std::move(right));
  }
  prune_components(mh);
}

// One full pass pulling every consecutive image pair on every edge to exact
// graph distance. Non-contraction guarantees gaps are never too small. Slack
// before the first image or after the last one belongs to the endpoints and
// stays; properness dealt with dangling material already.
bool shrink_gaps(MutHost& mh, const Graph& g) {
  bool changed = false;
  for (auto& me : mh.edges) {
    if (!me.alive) continue;
    struct Entry {
      Rat pos;
      int occupant;
      bool endpoint_a, endpoint_b;
    };
    std::vector<Entry> occ;
    if (mh.nodes[me.a].occupant >= 0)
      occ.push_back({Rat(0), mh.nodes[me.a].occupant, true, false});
    for (const auto& p : me.pts) occ.push_back({p.pos, p.occupant, false, false});
    if (mh.nodes[me.b].occupant >= 0)
      occ.push_back({me.len, mh.nodes[me.b].occupant, false, true});
    if (occ.size() < 2) continue;
    Rat shift = 0;
    std::vector<Rat> new_pos(occ.size());
    new_pos[0] = occ[0].pos;
    for (size_t i = 1; i < occ.size(); ++i) {
      bool loop_self = me.a == me.b && occ[i - 1].endpoint_a && occ[i].endpoint_b;
      if (loop_self) {
        // The same image seen from both ends of a loop; no distance target.
        new_pos[i] = occ[i].pos - shift;
        continue;
      }
      Rat gap = (occ[i].pos - shift) - new_pos[i - 1];
      Rat target = g.dist(occ[i - 1].occupant, occ[i].occupant);
      if (gap > target) {
        shift += gap - target;
        changed = true;
      }
      new_pos[i] = occ[i].pos - shift;
    }
    // Write back: interior points take their new positions, the edge keeps
    // whatever tail slack followed the last entry.
    size_t idx = occ.front().endpoint_a ? 1 : 0;
    for (auto& p : me.pts) {
      p.pos = new_pos[idx];
      ++idx;
    }
    me.len = me.len - shift;
  }
  return changed;
}

MutHost build_mut(const Embedding& emb) {
  const auto& host = emb.host();
  const auto& pat = host.pattern();
  MutHost mh;
  for (int v = 0; v < pat.k(); ++v)
    mh.nodes.push_back({emb.occupant_vertex(v), true});
  for (int e = 0; e < pat.h(); ++e) {
    auto [u, v] = pat.edge(e);
    MutEdge me;
    me.a = u;
    me.b = v;
    me.len = host.length(e);
    for (int i = 0; i < host.interior_count(e); ++i) {
      int occ = emb.occupant_interior(e, i);
      if (occ >= 0) me.pts.push_back({host.offsets(e)[i], occ});
    }
    me.alive = true;
    mh.edges.push_back(std::move(me));
  }
  return mh;
}

}  // namespace

NormalizeResult normalize_to_proper_pushing(const Embedding& input) {
  const Graph& g = input.graph();
  if (g.n() == 1) {
    WeightedSubdivision k1(PatternGraph::single_vertex(), {}, {});
    Embedding emb(g, k1, {HostPoint::at_vertex(0)});
    return {emb, 0, distortion(emb)};
  }
  DistortionReport in_rep = distortion(input);
  if (!in_rep.non_contracting)
    throw ContractError("normalization requires a non-contracting input");

  MutHost mh = build_mut(input);
  long long cap = 100;
  for (const auto& me : mh.edges) cap += 20 * (2 + static_cast<long long>(me.pts.size()));
  int rounds = 0;
  Materialized mat = materialize(mh, g);
  for (long long iter = 0;; ++iter) {
    if (iter > cap) throw ModelError("surgery loop did not converge");
    ProperWitness w;
    if (!is_proper(mat.emb, &w)) {
      ++rounds;
      if (!w.segment) {
        if (!w.at.is_vertex())
          throw ModelError("improper witness at an occupied interior point");
        surgery_vertex(mh, mat.node_of_pv[w.at.vertex]);
      } else {
        surgery_segment(mh, mat.edge_of_pe[w.edge], w.lo, w.hi);
      }
      mat = materialize(mh, g);
      continue;
    }
    if (shrink_gaps(mh, g)) {
      ++rounds;
      mat = materialize(mh, g);
      continue;
    }
    break;
  }

  DistortionReport rep = distortion(mat.emb);
  if (!is_proper(mat.emb)) throw ModelError("output is not proper");
  if (!is_pushing(mat.emb)) throw ModelError("output is not pushing");
  if (!rep.non_contracting) throw ModelError("output contracts");
  if (rep.distortion > in_rep.distortion)
    throw ModelError("surgery increased distortion");
  return {mat.emb, rounds, rep};
}

}  // namespace hembed
