#include "hembed/pattern.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "hembed/errors.hpp"

namespace hembed {

PatternGraph::PatternGraph(int k, std::vector<std::pair<int, int>> edge_list)
    : k_(k), edges_(std::move(edge_list)) {
  if (k < 1) throw ParamError("pattern needs at least one vertex");
  inc_.assign(k, {});
  for (int e = 0; e < h(); ++e) {
    auto [u, v] = edges_[e];
    if (u < 0 || u >= k || v < 0 || v >= k)
      throw ParamError("pattern edge endpoint out of range");
    inc_[u].push_back({e, v});
    if (u != v) inc_[v].push_back({e, u});
  }
}

PatternGraph PatternGraph::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> edges;
  int maxv = -1, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b))
      throw ParseError("pattern line " + std::to_string(lineno) + ": expected two labels");
    std::string extra;
    if (ls >> extra)
      throw ParseError("pattern line " + std::to_string(lineno) + ": trailing tokens");
    if (a < 0 || b < 0)
      throw ParseError("pattern line " + std::to_string(lineno) + ": negative label");
    edges.push_back({static_cast<int>(a), static_cast<int>(b)});
    maxv = std::max({maxv, static_cast<int>(a), static_cast<int>(b)});
  }
  if (edges.empty()) throw ParseError("no pattern edges in input");
  return PatternGraph(maxv + 1, edges);
}

PatternGraph PatternGraph::single_vertex() { return PatternGraph(1, {}); }

PatternGraph PatternGraph::single_edge() { return PatternGraph(2, {{0, 1}}); }

PatternGraph PatternGraph::triangle() {
  return PatternGraph(3, {{0, 1}, {1, 2}, {2, 0}});
}

PatternGraph PatternGraph::cycle(int k) {
  if (k < 3) throw ParamError("cycle pattern needs k >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
  return PatternGraph(k, e);
}

PatternGraph PatternGraph::path(int k) {
  if (k < 2) throw ParamError("path pattern needs k >= 2");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < k; ++i) e.push_back({i, i + 1});
  return PatternGraph(k, e);
}

PatternGraph PatternGraph::star(int legs) {
  if (legs < 1) throw ParamError("star pattern needs at least one leg");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= legs; ++i) e.push_back({0, i});
  return PatternGraph(legs + 1, e);
}

std::pair<int, int> PatternGraph::edge(int e) const {
  if (e < 0 || e >= h()) throw ParamError("pattern edge id out of range");
  return edges_[e];
}

bool PatternGraph::is_loop(int e) const {
  auto [u, v] = edge(e);
  return u == v;
}

const std::vector<std::pair<int, int>>& PatternGraph::incident(int v) const {
  if (v < 0 || v >= k_) throw ParamError("pattern vertex out of range");
  return inc_[v];
}

int PatternGraph::degree(int v) const {
  if (v < 0 || v >= k_) throw ParamError("pattern vertex out of range");
  int d = 0;
  for (auto [e, w] : inc_[v]) d += (w == v) ? 2 : 1;
  return d;
}

bool PatternGraph::connected() const {
  std::vector<char> seen(k_, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (auto [e, w] : inc_[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        q.push_back(w);
      }
  }
  return cnt == k_;
}

int PatternGraph::hop_diameter() const {
  int best = 0;
  for (int s = 0; s < k_; ++s) {
    std::vector<int> d(k_, -1);
    std::deque<int> q{s};
    d[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [e, w] : inc_[u])
        if (d[w] < 0) {
          d[w] = d[u] + 1;
          q.push_back(w);
        }
    }
    for (int x : d) {
      if (x < 0) throw ModelError("hop_diameter on disconnected pattern");
      best = std::max(best, x);
    }
  }
  return best;
}

bool PatternGraph::simple() const {
  std::map<std::pair<int, int>, int> cnt;
  for (auto [u, v] : edges_) {
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (++cnt[{key.first, key.second}] > 1) return false;
  }
  return true;
}

bool PatternGraph::is_path_shape() const {
  if (!connected()) return false;
  for (int v = 0; v < k_; ++v)
    if (degree(v) > 2) return false;
  // A connected graph with max degree 2 is a path iff #edges = #vertices - 1.
  return h() == k_ - 1;
}

bool PatternGraph::is_cycle_shape() const {
  if (!connected()) return false;
  for (int v = 0; v < k_; ++v)
    if (degree(v) != 2) return false;
  return h() == k_;
}

std::string PatternGraph::to_string() const {
  std::ostringstream out;
  for (auto [u, v] : edges_) out << u << " " << v << "\n";
  if (edges_.empty()) out << "# " << k_ << " isolated vertex pattern\n";
  return out.str();
}

namespace {

// Adjacency multiset key: per vertex, the sorted list of neighbor ids with
// multiplicity, loops encoded as self entries twice.
std::vector<std::vector<int>> adjacency_multiset(const PatternGraph& p) {
  std::vector<std::vector<int>> a(p.k());
  for (int e = 0; e < p.h(); ++e) {
    auto [u, v] = p.edge(e);
    if (u == v) {
      a[u].push_back(u);
      a[u].push_back(u);
    } else {
      a[u].push_back(v);
      a[v].push_back(u);
    }
  }
  for (auto& row : a) std::sort(row.begin(), row.end());
  return a;
}

bool extend(const std::vector<std::vector<int>>& a,
            const std::vector<std::vector<int>>& b, std::vector<int>& map_ab,
            std::vector<char>& used, int next) {
  int n = static_cast<int>(a.size());
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    if (a[next].size() != b[cand].size()) continue;
    // The neighborhood of `next` restricted to already mapped vertices must
    // match, as a multiset, the neighborhood of cand restricted to already
    // used vertices. Unmapped neighbors are settled by deeper levels.
    std::vector<int> lhs;
    for (int w : a[next])
      if (map_ab[w] >= 0 || w == next) lhs.push_back(w == next ? cand : map_ab[w]);
    std::sort(lhs.begin(), lhs.end());
    std::vector<int> rhs;
    for (int w : b[cand])
      if (w == cand || used[w]) rhs.push_back(w);
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) continue;
    map_ab[next] = cand;
    used[cand] = 1;
    if (extend(a, b, map_ab, used, next + 1)) return true;
    map_ab[next] = -1;
    used[cand] = 0;
  }
  return false;
}

}  // namespace

bool patterns_isomorphic(const PatternGraph& a, const PatternGraph& b) {
  if (a.k() != b.k() || a.h() != b.h()) return false;
  std::vector<int> da, db;
  for (int v = 0; v < a.k(); ++v) da.push_back(a.degree(v));
  for (int v = 0; v < b.k(); ++v) db.push_back(b.degree(v));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  auto ma = adjacency_multiset(a);
  auto mb = adjacency_multiset(b);
  std::vector<int> map_ab(a.k(), -1);
  std::vector<char> used(a.k(), 0);
  return extend(ma, mb, map_ab, used, 0);
}

}  // namespace hembed
