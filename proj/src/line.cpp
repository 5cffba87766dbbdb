#include "hembed/line.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hembed/errors.hpp"
#include "hembed/host.hpp"
#include "hembed/pattern.hpp"

namespace hembed {

namespace {

std::vector<long long> pushed_positions(const Graph& g,
                                        const std::vector<int>& order) {
  std::vector<long long> pos(order.size(), 0);
  for (size_t i = 1; i < order.size(); ++i) {
    int d = g.dist(order[i - 1], order[i]);
    if (d < 0) throw ModelError("order spans disconnected vertices");
    pos[i] = pos[i - 1] + d;
  }
  return pos;
}

// Max over pairs of span/d as a reduced fraction; (1,1) for trivial inputs.
std::pair<long long, long long> expansion_fraction(
    const Graph& g, const std::vector<int>& order,
    const std::vector<long long>& pos) {
  long long bn = 1, bd = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = i + 1; j < order.size(); ++j) {
      long long span = pos[j] - pos[i];
      long long d = g.dist(order[i], order[j]);
      if (span * bd > bn * d) {
        bn = span;
        bd = d;
      }
    }
  }
  return {bn, bd};
}

void check_order_is_permutation(const Graph& g, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.n())
    throw ModelError("order size mismatch");
  std::vector<char> seen(g.n(), 0);
  for (int v : order) {
    if (v < 0 || v >= g.n() || seen[v])
      throw ModelError("order is not a permutation");
    seen[v] = 1;
  }
}

LineEmbedding make_line_embedding(const Graph& g,
                                  const std::vector<int>& order) {
  auto pos = pushed_positions(g, order);
  auto [bn, bd] = expansion_fraction(g, order, pos);
  LineEmbedding le;
  le.order = order;
  le.positions.reserve(pos.size());
  for (long long p : pos) le.positions.push_back(Rat(p));
  le.distortion = rat_of(bn, bd);
  return le;
}

// Pruned depth-first search over pushed orderings. Sound and complete for
// the decision because expansion violations are monotone under extension.
struct SmallSearch {
  const Graph& g;
  long long c;
  long long budget;
  long long used = 0;
  std::vector<int> order;
  std::vector<long long> pos;
  std::vector<char> taken;

  SmallSearch(const Graph& g_, int c_, long long budget_)
      : g(g_), c(c_), budget(budget_), taken(g_.n(), 0) {}

  bool extend() {
    if (static_cast<int>(order.size()) == g.n()) return true;
    for (int u = 0; u < g.n(); ++u) {
      if (taken[u]) continue;
      if (++used > budget) throw BudgetError("line search budget exhausted");
      long long p = 0;
      if (!order.empty()) p = pos.back() + g.dist(order.back(), u);
      bool ok = true;
      for (size_t j = 0; j < order.size(); ++j) {
        if (p - pos[j] > c * g.dist(order[j], u)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      order.push_back(u);
      pos.push_back(p);
      taken[u] = 1;
      if (extend()) return true;
      taken[u] = 0;
      pos.pop_back();
      order.pop_back();
    }
    return false;
  }
};

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

struct WindowLabels {
  bool feasible = false;
  std::vector<char> in_l;
  std::vector<char> in_r;
  bool l_empty = true;
  bool r_empty = true;
};

// Feasibility of one window: consecutive gaps at most c, pairwise pushed
// expansion at most c, the middle vertex's c-ball inside the window, and
// the off-window components split into left and right sides that do not
// overlap. A component is left if it neighbors a slot in the low half or
// comes within distance c of such a component; right symmetrically.
WindowLabels analyze_window(const Graph& g, const std::vector<int>& win,
                            int c) {
  WindowLabels out;
  int n = g.n();
  int k = static_cast<int>(win.size());
  int mid = 2 * c * c;

  std::vector<int> slot_of(n, -1);
  for (int i = 0; i < k; ++i) slot_of[win[i]] = i;

  std::vector<long long> pos(k, 0);
  for (int i = 1; i < k; ++i) {
    int d = g.dist(win[i - 1], win[i]);
    if (d > c) return out;
    pos[i] = pos[i - 1] + d;
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (pos[j] - pos[i] > static_cast<long long>(c) * g.dist(win[i], win[j]))
        return out;

  for (int u : g.ball(win[mid], c))
    if (slot_of[u] < 0) return out;

  std::vector<int> rest;
  rest.reserve(n - k);
  for (int v = 0; v < n; ++v)
    if (slot_of[v] < 0) rest.push_back(v);
  auto comps = g.components(rest);
  int m = static_cast<int>(comps.size());

  std::vector<char> att_l(m, 0), att_r(m, 0);
  for (int ci = 0; ci < m; ++ci) {
    for (int v : comps[ci]) {
      for (int w : g.neighbors(v)) {
        int s = slot_of[w];
        if (s < 0) continue;
        if (s <= mid)
          att_l[ci] = 1;
        else
          att_r[ci] = 1;
      }
    }
  }

  // One widening round: anything within distance c of an attached
  // component inherits its side.
  std::vector<char> lab_l = att_l, lab_r = att_r;
  for (int ci = 0; ci < m; ++ci) {
    if (!att_l[ci] && !att_r[ci]) continue;
    auto near = g.multi_source_distances(comps[ci]);
    for (int cj = 0; cj < m; ++cj) {
      if (cj == ci) continue;
      for (int v : comps[cj]) {
        if (near[v] >= 0 && near[v] <= c) {
          if (att_l[ci]) lab_l[cj] = 1;
          if (att_r[ci]) lab_r[cj] = 1;
          break;
        }
      }
    }
  }

  out.in_l.assign(n, 0);
  out.in_r.assign(n, 0);
  for (int ci = 0; ci < m; ++ci) {
    if (lab_l[ci] && lab_r[ci]) return out;
    for (int v : comps[ci]) {
      if (lab_l[ci]) {
        out.in_l[v] = 1;
        out.l_empty = false;
      }
      if (lab_r[ci]) {
        out.in_r[v] = 1;
        out.r_empty = false;
      }
    }
  }
  out.feasible = true;
  return out;
}

struct WindowSearch {
  const Graph& g;
  int c;
  int k;
  long long budget;
  long long used = 0;
  // parent[w] = preceding window; a window maps to itself when it starts
  // a chain.
  std::unordered_map<std::vector<int>, std::vector<int>, VecHash> parent;
  std::vector<std::vector<int>> queue;

  WindowSearch(const Graph& g_, int c_, long long budget_)
      : g(g_), c(c_), k(4 * c_ * c_ + 2), budget(budget_) {}

  void charge() {
    if (++used > budget) throw BudgetError("line search budget exhausted");
  }

  std::optional<std::vector<int>> run() {
    std::vector<int> seq;
    std::vector<long long> pos;
    std::vector<char> taken(g.n(), 0);
    for (int v0 = 0; v0 < g.n(); ++v0) {
      seq.assign(1, v0);
      pos.assign(1, 0);
      taken.assign(g.n(), 0);
      taken[v0] = 1;
      if (auto res = grow_starts(seq, pos, taken)) return res;
    }
    return std::nullopt;
  }

  // Enumerates candidate start windows by extending gap-bounded pushed
  // prefixes, then runs the succession reachability from each feasible
  // window whose left side is empty.
  std::optional<std::vector<int>> grow_starts(std::vector<int>& seq,
                                              std::vector<long long>& pos,
                                              std::vector<char>& taken) {
    if (static_cast<int>(seq.size()) == k) {
      auto lab = analyze_window(g, seq, c);
      if (lab.feasible && lab.l_empty && !parent.count(seq)) {
        parent.emplace(seq, seq);
        if (auto res = sweep(seq, lab)) return res;
      }
      return std::nullopt;
    }
    for (int u : g.ball(seq.back(), c)) {
      if (taken[u]) continue;
      charge();
      long long p = pos.back() + g.dist(seq.back(), u);
      bool ok = true;
      for (size_t j = 0; j < seq.size(); ++j) {
        if (p - pos[j] > static_cast<long long>(c) * g.dist(seq[j], u)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      seq.push_back(u);
      pos.push_back(p);
      taken[u] = 1;
      // A start window needs an empty left side, so every neighbor of a
      // low-half vertex must itself join the window at pushed distance at
      // most c. Once the frontier is past that deadline the prefix is dead.
      bool alive = true;
      int low = std::min(static_cast<int>(seq.size()) - 1, 2 * c * c);
      for (int i = 0; i <= low && alive; ++i) {
        for (int x : g.neighbors(seq[i])) {
          if (!taken[x] && p >= pos[i] + c) {
            alive = false;
            break;
          }
        }
      }
      if (alive) {
        if (auto res = grow_starts(seq, pos, taken)) return res;
      }
      taken[u] = 0;
      pos.pop_back();
      seq.pop_back();
    }
    return std::nullopt;
  }

  std::optional<std::vector<int>> sweep(const std::vector<int>& start,
                                        const WindowLabels& start_lab) {
    queue.clear();
    queue.push_back(start);
    if (start_lab.r_empty) {
      if (auto res = finish(start)) return res;
    }
    size_t head = 0;
    while (head < queue.size()) {
      std::vector<int> cur = queue[head++];
      auto lab = analyze_window(g, cur, c);
      int last = cur.back();
      int dropped = cur.front();
      std::vector<int> next(cur.begin() + 1, cur.end());
      next.push_back(-1);
      for (int x : g.ball(last, c)) {
        if (!lab.in_r[x]) continue;
        next.back() = x;
        if (parent.count(next)) continue;
        charge();
        auto nl = analyze_window(g, next, c);
        if (!nl.feasible || !nl.in_l[dropped]) continue;
        parent.emplace(next, cur);
        if (nl.r_empty) {
          if (auto res = finish(next)) return res;
        }
        queue.push_back(next);
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<int>> finish(const std::vector<int>& end) {
    std::vector<int> tail;
    std::vector<int> cur = end;
    while (true) {
      const auto& par = parent.at(cur);
      if (par == cur) break;
      tail.push_back(cur.back());
      cur = par;
    }
    std::vector<int> order = cur;
    order.insert(order.end(), tail.rbegin(), tail.rend());
    check_order_is_permutation(g, order);
    return order;
  }
};

int farthest_min_id(const Graph& g, int s) {
  const auto& row = g.dist_row(s);
  int best = s, bd = -1;
  for (int v = 0; v < g.n(); ++v) {
    if (row[v] > bd) {
      bd = row[v];
      best = v;
    }
  }
  return best;
}

}  // namespace

Rat line_distortion(const Graph& g, const std::vector<int>& order) {
  check_order_is_permutation(g, order);
  if (g.n() == 1) return Rat(1);
  auto pos = pushed_positions(g, order);
  auto [bn, bd] = expansion_fraction(g, order, pos);
  return rat_of(bn, bd);
}

LineEmbedding min_line_distortion_oracle(const Graph& g) {
  if (g.n() > kLineOracleCap) throw SizeError("oracle capped at 9 vertices");
  if (!g.connected()) throw ModelError("graph must be connected");
  if (g.n() == 1) return LineEmbedding{{0}, {Rat(0)}, Rat(1)};

  std::vector<int> perm(g.n());
  for (int i = 0; i < g.n(); ++i) perm[i] = i;
  std::vector<int> best_order;
  long long bn = -1, bd = 1;
  do {
    if (perm.front() > perm.back()) continue;  // reversal symmetry
    auto pos = pushed_positions(g, perm);
    long long wn = 1, wd = 1;
    bool abort = false;
    for (size_t i = 0; i < perm.size() && !abort; ++i) {
      for (size_t j = i + 1; j < perm.size(); ++j) {
        long long span = pos[j] - pos[i];
        long long d = g.dist(perm[i], perm[j]);
        if (span * wd > wn * d) {
          wn = span;
          wd = d;
          if (bn >= 0 && wn * bd >= bn * wd) {
            abort = true;
            break;
          }
        }
      }
    }
    if (abort) continue;
    if (bn < 0 || wn * bd < bn * wd) {
      bn = wn;
      bd = wd;
      best_order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return make_line_embedding(g, best_order);
}

std::optional<LineEmbedding> line_embed_exact(const Graph& g, int c,
                                              long long budget,
                                              LineSearchStats* stats) {
  if (c < 1) throw ParamError("c must be at least 1");
  if (!g.connected()) throw ModelError("graph must be connected");
  if (stats) stats->states = 0;
  if (g.n() == 1) return LineEmbedding{{0}, {Rat(0)}, Rat(1)};

  if (line_density_reject(g, c)) return std::nullopt;

  int k = 4 * c * c + 2;
  std::optional<std::vector<int>> order;
  long long used = 0;
  if (g.n() <= k) {
    SmallSearch search(g, c, budget);
    if (search.extend()) order = search.order;
    used = search.used;
  } else {
    WindowSearch search(g, c, budget);
    order = search.run();
    used = search.used;
  }
  if (stats) stats->states = used;
  if (!order) return std::nullopt;

  auto le = make_line_embedding(g, *order);
  if (le.distortion > c) throw ModelError("reconstructed order exceeds bound");
  return le;
}

std::optional<LineEmbedding> line_embed_exact_metric(
    const std::vector<std::vector<Rat>>& dist, int c, long long budget) {
  if (c < 1) throw ParamError("c must be at least 1");
  int m = static_cast<int>(dist.size());
  if (m == 0) throw ModelError("empty metric");
  Rat w(0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(dist[i].size()) != m)
      throw ModelError("metric matrix is not square");
    if (dist[i][i] != 0) throw ModelError("nonzero diagonal");
    for (int j = 0; j < m; ++j) {
      if (dist[i][j] != dist[j][i]) throw ModelError("asymmetric metric");
      if (i != j && dist[i][j] <= 0) throw ModelError("nonpositive distance");
      Rat dij = dist[i][j];
      if (dij > w) w = dij;
    }
  }
  // Size guard mirroring the window bound scaled by the largest distance.
  Int wceil = numerator(w) / denominator(w);
  if (Rat(wceil) < w) wceil += 1;
  Int cap = Int(4) * c * c * wceil + 2;
  if (Int(m) > cap) throw SizeError("metric instance exceeds window bound");

  if (m == 1) return LineEmbedding{{0}, {Rat(0)}, Rat(1)};

  std::vector<int> order;
  std::vector<Rat> pos;
  std::vector<char> taken(m, 0);
  long long used = 0;
  Rat climit(c);

  auto extend = [&](auto&& self) -> bool {
    if (static_cast<int>(order.size()) == m) return true;
    for (int u = 0; u < m; ++u) {
      if (taken[u]) continue;
      if (++used > budget) throw BudgetError("line search budget exhausted");
      Rat p = order.empty() ? Rat(0) : pos.back() + dist[order.back()][u];
      bool ok = true;
      for (size_t j = 0; j < order.size(); ++j) {
        Rat span = p - pos[j];
        Rat lim = climit * dist[order[j]][u];
        if (span > lim) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      order.push_back(u);
      pos.push_back(p);
      taken[u] = 1;
      if (self(self)) return true;
      taken[u] = 0;
      pos.pop_back();
      order.pop_back();
    }
    return false;
  };
  if (!extend(extend)) return std::nullopt;

  LineEmbedding le;
  le.order = order;
  le.positions = pos;
  Rat best(1);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Rat ratio = (pos[j] - pos[i]) / dist[order[i]][order[j]];
      if (ratio > best) best = ratio;
    }
  le.distortion = best;
  return le;
}

LineApproxResult line_embed_approx(const Graph& g, int c) {
  if (c < 1) throw ParamError("c must be at least 1");
  if (!g.connected()) throw ModelError("graph must be connected");
  if (g.n() == 1) return LineEmbedding{{0}, {Rat(0)}, Rat(1)};

  for (int root = 0; root < g.n(); ++root) {
    auto layers = g.bfs_layers(root);
    for (size_t li = 1; li < layers.size(); ++li) {
      std::vector<int> layer = layers[li];
      std::sort(layer.begin(), layer.end());
      std::vector<int> scatter;
      for (int v : layer) {
        bool far = true;
        for (int s : scatter) {
          if (g.dist(v, s) <= 2 * c) {
            far = false;
            break;
          }
        }
        if (far) scatter.push_back(v);
        if (scatter.size() == 3) {
          LineCertificate cert;
          cert.root = root;
          cert.a = scatter[0];
          cert.b = scatter[1];
          cert.x = scatter[2];
          cert.layer = static_cast<int>(li);
          return cert;
        }
      }
    }
  }

  int u = farthest_min_id(g, 0);
  int root = farthest_min_id(g, u);
  std::vector<int> order;
  for (auto& layer : g.bfs_layers(root)) {
    std::sort(layer.begin(), layer.end());
    int anchor = layer.front();
    std::stable_sort(layer.begin(), layer.end(), [&](int a, int b) {
      int da = g.dist(anchor, a), db = g.dist(anchor, b);
      return da != db ? da < db : a < b;
    });
    order.insert(order.end(), layer.begin(), layer.end());
  }
  return make_line_embedding(g, order);
}

Embedding line_to_embedding(const Graph& g, const LineEmbedding& le) {
  check_order_is_permutation(g, le.order);
  int n = g.n();
  if (n == 1) {
    WeightedSubdivision host(PatternGraph::single_vertex(), {}, {});
    return Embedding(g, host, {HostPoint::at_vertex(0)});
  }
  std::vector<Rat> offsets(le.positions.begin() + 1, le.positions.end() - 1);
  WeightedSubdivision host(PatternGraph::single_edge(), {le.positions.back()},
                           {offsets});
  std::vector<HostPoint> img(n, HostPoint::at_vertex(0));
  img[le.order.front()] = HostPoint::at_vertex(0);
  img[le.order.back()] = HostPoint::at_vertex(1);
  for (int i = 1; i + 1 < n; ++i)
    img[le.order[i]] = HostPoint::interior(0, i - 1);
  return Embedding(g, host, img);
}

}  // namespace hembed
