#include "hembed/cluster.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "hembed/errors.hpp"
#include "hembed/lp.hpp"

namespace hembed {

namespace {

void path_dfs(const PatternGraph& C, int at, int target,
              std::vector<char>& used, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
  if (at == target) {
    out.push_back(cur);
    return;
  }
  for (auto [e, far] : C.incident(at)) {
    if (C.is_loop(e) || used[far]) continue;
    used[far] = 1;
    cur.push_back(e);
    path_dfs(C, far, target, used, cur, out);
    cur.pop_back();
    used[far] = 0;
  }
}

// All simple paths between two pattern vertices as edge id sequences. Parallel
// edges give distinct paths; loops never appear on a simple path. Equal
// endpoints yield just the empty path.
std::vector<std::vector<int>> simple_paths(const PatternGraph& C, int a,
                                           int b) {
  std::vector<char> used(C.k(), 0);
  used[a] = 1;
  std::vector<int> cur;
  std::vector<std::vector<int>> out;
  path_dfs(C, a, b, used, cur, out);
  return out;
}

struct Pin {
  int vertex;      // element of S pinned to a pattern vertex
  int var;         // LP variable holding its offset from that vertex
  int pat_vertex;  // the pattern vertex it is anchored at
};

}  // namespace

bool cluster_solutions_visit(const std::vector<int>& S, const PatternGraph& C,
                             const DistFn& dist, int c, long long budget,
                             const std::function<bool(const ClusterSolution&)>& visit,
                             ClusterStats* stats) {
  if (c < 1) throw ParamError("distortion bound must be at least 1");
  if (budget < 1) throw ParamError("budget must be positive");
  if (!C.connected()) throw ParamError("cluster piece must be connected");
  ClusterStats local;
  ClusterStats* st = stats ? stats : &local;

  const int n = static_cast<int>(S.size());
  const int h = C.h();
  if (h == 0 && n > 0) return true;  // nothing to place S on

  // Simple paths between every pair of pattern vertices, reused across all
  // configurations.
  std::vector<std::vector<std::vector<std::vector<int>>>> paths(C.k());
  for (int a = 0; a < C.k(); ++a) {
    paths[a].resize(C.k());
    for (int b = a; b < C.k(); ++b) paths[a][b] = simple_paths(C, a, b);
  }
  auto paths_between = [&](int a, int b) -> const std::vector<std::vector<int>>& {
    return a <= b ? paths[a][b] : paths[b][a];
  };

  // The first image of a part anchors to the stored first endpoint of its
  // edge, the last image to the second; interior offsets are measured from
  // the first endpoint, matching position_on.
  std::vector<std::pair<int, int>> ends(h);
  for (int e = 0; e < h; ++e) ends[e] = C.edge(e);

  std::vector<std::vector<int>> parts(h);

  auto eval_configuration = [&]() -> bool {
    ++st->configurations;
    if (st->configurations > budget)
      throw BudgetError("cluster configuration budget exhausted");

    const int vars = 2 * h;
    std::vector<Rat> gapsum(h, Rat(0));
    for (int e = 0; e < h; ++e)
      for (size_t t = 0; t + 1 < parts[e].size(); ++t)
        gapsum[e] += Rat(dist(parts[e][t], parts[e][t + 1]));

    std::vector<Pin> pins;
    for (int e = 0; e < h; ++e) {
      if (parts[e].empty()) continue;
      pins.push_back({parts[e].front(), 2 * e, ends[e].first});
      pins.push_back({parts[e].back(), 2 * e + 1, ends[e].second});
    }

    // One row per pin pair and simple path between their anchors: offsets
    // plus the traversed edge lengths must cover the graph distance. Rows
    // with nonpositive right side are already implied by nonnegativity.
    std::vector<std::vector<Rat>> lhs;
    std::vector<Rat> rhs;
    for (size_t p = 0; p < pins.size(); ++p) {
      for (size_t q = p + 1; q < pins.size(); ++q) {
        if (pins[p].vertex == pins[q].vertex) continue;
        Rat need(dist(pins[p].vertex, pins[q].vertex));
        for (const auto& path : paths_between(pins[p].pat_vertex,
                                              pins[q].pat_vertex)) {
          Rat through(0);
          for (int e : path) through += gapsum[e];
          Rat bound = need - through;
          if (bound <= 0) continue;
          std::vector<Rat> row(vars, Rat(0));
          row[pins[p].var] += 1;
          row[pins[q].var] += 1;
          for (int e : path) {
            row[2 * e] += 1;
            row[2 * e + 1] += 1;
          }
          lhs.push_back(std::move(row));
          rhs.push_back(bound);
        }
      }
    }

    std::vector<Rat> x(vars, Rat(0));
    Rat slack_total(0);
    if (!lhs.empty()) {
      ++st->lp_solved;
      LpResult lp = solve_lp_min(lhs, rhs, std::vector<Rat>(vars, Rat(1)));
      if (lp.status != LpResult::Optimal) return true;
      x = std::move(lp.x);
      slack_total = lp.value;
    }

    // Realize the configuration as a concrete weighted subdivision. Interior
    // offsets grow strictly along each edge, so the host is always well
    // formed; whether the distances work out is checked afterwards.
    std::vector<Rat> lengths(h);
    std::vector<std::vector<Rat>> offs(h);
    std::vector<EdgeLayout> layout(h);
    std::vector<HostPoint> image(n);
    std::vector<int> pos(n >= 1 ? *std::max_element(S.begin(), S.end()) + 1 : 0,
                         -1);
    for (int i = 0; i < n; ++i) pos[S[i]] = i;

    for (int e = 0; e < h; ++e) {
      const auto& part = parts[e];
      Rat alpha = x[2 * e];
      Rat beta = x[2 * e + 1];
      layout[e] = {part, alpha, beta};
      if (part.empty()) {
        Rat len = alpha + beta;
        if (len == 0) len = 1;
        lengths[e] = len;
        continue;
      }
      Rat len = alpha + beta + gapsum[e];
      if (part.size() == 1) {
        // A lone image sits at an endpoint when its slack vanishes; with no
        // slack at all the edge still needs positive length.
        if (alpha == 0 && beta == 0) {
          lengths[e] = 1;
          image[pos[part[0]]] = HostPoint::at_vertex(ends[e].first);
          continue;
        }
        lengths[e] = len;
        if (alpha == 0) {
          image[pos[part[0]]] = HostPoint::at_vertex(ends[e].first);
        } else if (beta == 0) {
          image[pos[part[0]]] = HostPoint::at_vertex(ends[e].second);
        } else {
          offs[e].push_back(alpha);
          image[pos[part[0]]] = HostPoint::interior(e, 0);
        }
        continue;
      }
      lengths[e] = len;
      Rat cur = alpha;
      for (size_t t = 0; t < part.size(); ++t) {
        if (t > 0) cur += Rat(dist(part[t - 1], part[t]));
        bool first = (t == 0);
        bool last = (t + 1 == part.size());
        if (first && alpha == 0) {
          image[pos[part[t]]] = HostPoint::at_vertex(ends[e].first);
        } else if (last && beta == 0) {
          image[pos[part[t]]] = HostPoint::at_vertex(ends[e].second);
        } else {
          image[pos[part[t]]] =
              HostPoint::interior(e, static_cast<int>(offs[e].size()));
          offs[e].push_back(cur);
        }
      }
    }

    WeightedSubdivision host(C, lengths, offs);

    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Rat got = host.host_distance(image[i], image[j]);
        Rat lo(dist(S[i], S[j]));
        Rat hi = lo * c;
        if (got < lo || got > hi) return true;
      }
    }
    for (int e = 0; e < h; ++e) {
      for (size_t t = 0; t + 1 < parts[e].size(); ++t) {
        Rat got = host.host_distance(image[pos[parts[e][t]]],
                                     image[pos[parts[e][t + 1]]]);
        if (got != Rat(dist(parts[e][t], parts[e][t + 1]))) return true;
      }
    }

    ++st->emitted;
    ClusterSolution sol{std::move(host), S, std::move(image), std::move(layout),
                        slack_total};
    return visit(sol);
  };

  // Orders within one part come from cycling next_permutation over the sorted
  // part; the product over parts nests recursively.
  std::function<bool(int)> order_rec = [&](int e) -> bool {
    if (e == h) return eval_configuration();
    auto& part = parts[e];
    std::sort(part.begin(), part.end());
    do {
      if (!order_rec(e + 1)) return false;
    } while (std::next_permutation(part.begin(), part.end()));
    return true;
  };

  if (n == 0) return order_rec(0);

  std::vector<int> assign(n, 0);
  while (true) {
    for (auto& part : parts) part.clear();
    for (int i = 0; i < n; ++i) parts[assign[i]].push_back(S[i]);
    if (!order_rec(0)) return false;
    int i = n - 1;
    while (i >= 0 && assign[i] == h - 1) assign[i--] = 0;
    if (i < 0) break;
    ++assign[i];
  }
  return true;
}

std::vector<ClusterSolution> cluster_solutions(const std::vector<int>& S,
                                               const PatternGraph& C,
                                               const DistFn& dist, int c,
                                               long long budget,
                                               ClusterStats* stats) {
  std::vector<ClusterSolution> out;
  cluster_solutions_visit(
      S, C, dist, c, budget,
      [&](const ClusterSolution& sol) {
        out.push_back(sol);
        return true;
      },
      stats);
  return out;
}

}  // namespace hembed
