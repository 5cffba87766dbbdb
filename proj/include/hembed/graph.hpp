#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hembed {

// Unweighted simple connected-or-not graph over dense indices 0..n-1.
// Parsing preserves the original integer labels from the file; everything
// else works on indices. Shortest paths are served from an all-pairs BFS
// table filled lazily behind a call_once barrier and shared between copies.
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

  // One "u v" pair per line, '#' starts a comment. Labels are arbitrary
  // distinct non-negative integers; indices are assigned in sorted label
  // order. Self loops and empty input are rejected, duplicate edges merged.
  static Graph parse(const std::string& text);
  static Graph parse_file(const std::string& path);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<int>& neighbors(int v) const;
  bool has_edge(int u, int v) const;
  std::vector<std::pair<int, int>> edges() const;

  long long label(int v) const;
  std::optional<int> index_of_label(long long lab) const;

  bool connected() const;
  int dist(int u, int v) const;
  const std::vector<int>& dist_row(int v) const;
  int eccentricity(int v) const;
  int diameter() const;

  std::vector<std::vector<int>> bfs_layers(int root) const;
  std::vector<int> ball(int v, int r) const;  // sorted
  int ball_size(int v, int r) const;

  // Distance to the nearest source, -1 where unreachable.
  std::vector<int> multi_source_distances(const std::vector<int>& sources) const;

  // Connected components of the subgraph induced by verts; each component
  // sorted, components ordered by smallest member.
  std::vector<std::vector<int>> components(const std::vector<int>& verts) const;

  std::string to_dot() const;
  std::string to_edge_list() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<long long> labels_;

  struct DistCache {
    std::once_flag once;
    std::vector<std::vector<int>> d;
  };
  std::shared_ptr<DistCache> cache_;

  void ensure_dists() const;
  void check_vertex(int v) const;
};

struct DensityWitness {
  int v = -1;
  int r = 0;
  int ball = 0;
  long long bound = 0;
};

// Pigeonhole screen: a non-contracting c-embedding into a weighted
// subdivision of a pattern with h_edges edges forces every radius-r ball to
// hold at most 4*r*c*h_edges vertices. Returns the first violating pair
// (smallest r, then smallest v) or nullopt if the graph passes.
std::optional<DensityWitness> local_density_reject(const Graph& g, int h_edges,
                                                   int c);

// Tighter single-line variant of the same screen: at most 2*c*r + 1 vertices
// fit in a radius-r ball when the host is one subdivided edge.
std::optional<DensityWitness> line_density_reject(const Graph& g, int c);

}  // namespace hembed
