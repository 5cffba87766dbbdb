#include "hembed/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hembed/errors.hpp"

namespace hembed {

namespace {
// The all-pairs table costs n^2 ints; this cap keeps it under ~75 MB while
// leaving room for the largest augmented instances used in practice.
constexpr int kMaxVerticesForDistTable = 4200;
}  // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list)
    : n_(n), cache_(std::make_shared<DistCache>()) {
  if (n < 1) throw ParamError("graph needs at least one vertex");
  if (n > kMaxVerticesForDistTable)
    throw SizeError("graph too large: " + std::to_string(n));
  adj_.assign(n, {});
  labels_.resize(n);
  for (int v = 0; v < n; ++v) labels_[v] = v;
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edge_list) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParamError("edge endpoint out of range");
    if (u == v) throw ParamError("self loop not allowed");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) continue;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<long long, long long>> raw;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b))
      throw ParseError("line " + std::to_string(lineno) + ": expected two vertex labels");
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    if (a < 0 || b < 0)
      throw ParseError("line " + std::to_string(lineno) + ": negative label");
    if (a == b)
      throw ParseError("line " + std::to_string(lineno) + ": self loop");
    raw.push_back({a, b});
  }
  if (raw.empty()) throw ParseError("no edges in input");
  std::map<long long, int> index;
  for (auto [a, b] : raw) {
    index.emplace(a, 0);
    index.emplace(b, 0);
  }
  int next = 0;
  for (auto& kv : index) kv.second = next++;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.push_back({index[a], index[b]});
  Graph g(next, edges);
  for (auto& kv : index) g.labels_[kv.second] = kv.first;
  return g;
}

Graph Graph::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw ParamError("vertex out of range: " + std::to_string(v));
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

long long Graph::label(int v) const {
  check_vertex(v);
  return labels_[v];
}

std::optional<int> Graph::index_of_label(long long lab) const {
  for (int v = 0; v < n_; ++v)
    if (labels_[v] == lab) return v;
  return std::nullopt;
}

void Graph::ensure_dists() const {
  std::call_once(cache_->once, [this] {
    cache_->d.assign(n_, std::vector<int>(n_, -1));
    std::deque<int> q;
    for (int s = 0; s < n_; ++s) {
      auto& d = cache_->d[s];
      d[s] = 0;
      q.clear();
      q.push_back(s);
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj_[u])
          if (d[w] < 0) {
            d[w] = d[u] + 1;
            q.push_back(w);
          }
      }
    }
  });
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  ensure_dists();
  const auto& d = cache_->d[0];
  return std::find(d.begin(), d.end(), -1) == d.end();
}

int Graph::dist(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  ensure_dists();
  return cache_->d[u][v];
}

const std::vector<int>& Graph::dist_row(int v) const {
  check_vertex(v);
  ensure_dists();
  return cache_->d[v];
}

int Graph::eccentricity(int v) const {
  const auto& d = dist_row(v);
  int e = 0;
  for (int x : d) {
    if (x < 0) throw ModelError("eccentricity on disconnected graph");
    e = std::max(e, x);
  }
  return e;
}

int Graph::diameter() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, eccentricity(v));
  return d;
}

std::vector<std::vector<int>> Graph::bfs_layers(int root) const {
  const auto& d = dist_row(root);
  int depth = 0;
  for (int x : d) depth = std::max(depth, x);
  std::vector<std::vector<int>> layers(depth + 1);
  for (int v = 0; v < n_; ++v)
    if (d[v] >= 0) layers[d[v]].push_back(v);
  return layers;
}

std::vector<int> Graph::ball(int v, int r) const {
  const auto& d = dist_row(v);
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (d[u] >= 0 && d[u] <= r) out.push_back(u);
  return out;
}

int Graph::ball_size(int v, int r) const {
  const auto& d = dist_row(v);
  int cnt = 0;
  for (int u = 0; u < n_; ++u)
    if (d[u] >= 0 && d[u] <= r) ++cnt;
  return cnt;
}

std::vector<int> Graph::multi_source_distances(const std::vector<int>& sources) const {
  std::vector<int> d(n_, -1);
  std::deque<int> q;
  for (int s : sources) {
    check_vertex(s);
    if (d[s] < 0) {
      d[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj_[u])
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

std::vector<std::vector<int>> Graph::components(const std::vector<int>& verts) const {
  std::vector<char> in(n_, 0), done(n_, 0);
  for (int v : verts) {
    check_vertex(v);
    in[v] = 1;
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  for (int s : sorted) {
    if (done[s]) continue;
    std::vector<int> comp;
    std::deque<int> q{s};
    done[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      comp.push_back(u);
      for (int w : adj_[u])
        if (in[w] && !done[w]) {
          done[w] = 1;
          q.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::string Graph::to_dot() const {
  std::ostringstream out;
  out << "graph g {\n";
  for (int v = 0; v < n_; ++v) out << "  " << labels_[v] << ";\n";
  for (auto [u, v] : edges())
    out << "  " << labels_[u] << " -- " << labels_[v] << ";\n";
  out << "}\n";
  return out.str();
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  for (auto [u, v] : edges()) out << labels_[u] << " " << labels_[v] << "\n";
  return out.str();
}

namespace {

std::optional<DensityWitness> density_scan(const Graph& g,
                                           long long per_radius_slope,
                                           long long constant) {
  int n = g.n();
  int diam = 0;
  for (int v = 0; v < n; ++v) diam = std::max(diam, g.eccentricity(v));
  diam = std::max(diam, 1);
  // Bucket each vertex's distances once, then sweep radii over prefix sums.
  std::vector<std::vector<int>> prefix(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> hist(diam + 1, 0);
    for (int x : g.dist_row(v))
      if (x >= 0) ++hist[x];
    for (int r = 1; r <= diam; ++r) hist[r] += hist[r - 1];
    prefix[v] = std::move(hist);
  }
  for (int r = 1; r <= diam; ++r) {
    long long bound = per_radius_slope * r + constant;
    for (int v = 0; v < n; ++v)
      if (prefix[v][r] > bound) return DensityWitness{v, r, prefix[v][r], bound};
  }
  return std::nullopt;
}

}  // namespace

std::optional<DensityWitness> local_density_reject(const Graph& g, int h_edges,
                                                   int c) {
  if (c < 1) throw ParamError("c must be >= 1");
  if (h_edges < 1) throw ParamError("pattern must have at least one edge");
  if (!g.connected()) throw ModelError("density screen needs a connected graph");
  return density_scan(g, 4LL * c * h_edges, 0);
}

std::optional<DensityWitness> line_density_reject(const Graph& g, int c) {
  if (c < 1) throw ParamError("c must be >= 1");
  if (!g.connected()) throw ModelError("density screen needs a connected graph");
  return density_scan(g, 2LL * c, 1);
}

}  // namespace hembed
