#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hembed {

// Small undirected multigraph used as the fixed shape a host subdivision is
// built from. Parallel edges and loops are allowed; edge identity matters
// (weights and subdivision points attach per edge id).
class PatternGraph {
 public:
  PatternGraph() = default;
  PatternGraph(int k, std::vector<std::pair<int, int>> edge_list);

  // One "u v" pair per line, '#' comments, labels 0..k-1 expected; repeated
  // lines create parallel edges, "u u" creates a loop.
  static PatternGraph parse(const std::string& text);

  static PatternGraph single_vertex();
  static PatternGraph single_edge();
  static PatternGraph triangle();
  static PatternGraph cycle(int k);
  static PatternGraph path(int k);
  static PatternGraph star(int legs);

  int k() const { return k_; }
  int h() const { return static_cast<int>(edges_.size()); }
  std::pair<int, int> edge(int e) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool is_loop(int e) const;

  // (edge id, far endpoint) pairs; a loop contributes one entry with the far
  // endpoint equal to v itself.
  const std::vector<std::pair<int, int>>& incident(int v) const;

  // Loops count twice, as usual for multigraphs.
  int degree(int v) const;

  bool connected() const;
  int hop_diameter() const;  // unweighted, over pattern vertices
  bool simple() const;
  bool is_path_shape() const;   // every degree <= 2, no cycle
  bool is_cycle_shape() const;  // connected, every degree exactly 2

  std::string to_string() const;

 private:
  int k_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<std::pair<int, int>>> inc_;
};

// Exact isomorphism for the small multigraphs handled here; backtracking on
// degree classes with adjacency multiplicity checks.
bool patterns_isomorphic(const PatternGraph& a, const PatternGraph& b);

}  // namespace hembed
