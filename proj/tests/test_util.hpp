#pragma once

#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "hembed/embedding.hpp"
#include "hembed/graph.hpp"

namespace hembed_test {

using namespace hembed;

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

inline Graph star_graph(int legs) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= legs; ++i) e.push_back({0, i});
  return Graph(legs + 1, e);
}

inline Graph clique_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

// legs spider legs of the given length glued at a center (vertex 0).
inline Graph spider_graph(int legs, int len) {
  std::vector<std::pair<int, int>> e;
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return Graph(next, e);
}

// Independent check of host geometry: expand the subdivision into an ordinary
// weighted graph over all marked points, scaling lengths to a common
// denominator so Dijkstra can run on integers, and measure image distances
// there. Deliberately shares no code with WeightedSubdivision::host_distance.
struct ExpandedHost {
  std::map<std::pair<int, int>, int> interior_id;  // (edge, index) -> node
  std::vector<int> vertex_id;                      // pattern vertex -> node
  int nodes = 0;
  std::vector<std::vector<std::pair<int, Int>>> adj;
  Int scale = 1;

  explicit ExpandedHost(const WeightedSubdivision& host) {
    const auto& pat = host.pattern();
    vertex_id.resize(pat.k());
    for (int v = 0; v < pat.k(); ++v) vertex_id[v] = nodes++;
    for (int e = 0; e < pat.h(); ++e)
      for (int i = 0; i < host.interior_count(e); ++i)
        interior_id[{e, i}] = nodes++;
    for (int e = 0; e < pat.h(); ++e) {
      scale = boost::multiprecision::lcm(scale, denominator(host.length(e)));
      for (const auto& off : host.offsets(e))
        scale = boost::multiprecision::lcm(scale, denominator(off));
    }
    adj.resize(nodes);
    auto link = [&](int a, int b, const Rat& w) {
      Int iw = numerator(w * Rat(scale));
      adj[a].push_back({b, iw});
      adj[b].push_back({a, iw});
    };
    for (int e = 0; e < pat.h(); ++e) {
      auto [u, v] = pat.edge(e);
      int prev = vertex_id[u];
      Rat at = 0;
      for (int i = 0; i < host.interior_count(e); ++i) {
        int cur = interior_id[{e, i}];
        link(prev, cur, host.offsets(e)[i] - at);
        at = host.offsets(e)[i];
        prev = cur;
      }
      link(prev, vertex_id[v], host.length(e) - at);
    }
  }

  int node_of(const HostPoint& p) const {
    if (p.is_vertex()) return vertex_id[p.vertex];
    return interior_id.at({p.edge, p.index});
  }

  Rat dist(const HostPoint& a, const HostPoint& b) const {
    int s = node_of(a), t = node_of(b);
    std::vector<Int> d(nodes, Int(-1));
    using QE = std::pair<Int, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    d[s] = 0;
    pq.push({Int(0), s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != d[u]) continue;
      if (u == t) break;
      for (auto& [w, len] : adj[u]) {
        Int nd = du + len;
        if (d[w] < 0 || nd < d[w]) {
          d[w] = nd;
          pq.push({nd, w});
        }
      }
    }
    return Rat(d[t], scale);
  }
};

}  // namespace hembed_test
