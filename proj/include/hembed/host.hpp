#pragma once

#include <compare>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "hembed/pattern.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// A point of a subdivided pattern: either a pattern vertex or the index-th
// marked interior point of a pattern edge.
struct HostPoint {
  int edge = -1;    // pattern edge id, -1 when the point is a pattern vertex
  int index = -1;   // position in the edge's interior point list
  int vertex = -1;  // pattern vertex id when edge < 0

  static HostPoint at_vertex(int v) { return HostPoint{-1, -1, v}; }
  static HostPoint interior(int e, int i) { return HostPoint{e, i, -1}; }
  bool is_vertex() const { return edge < 0; }
  auto operator<=>(const HostPoint&) const = default;
};

// A pattern with a positive rational length per edge and a strictly
// increasing list of marked interior offsets per edge. Distances are exact
// path lengths through the metric realization. Marked points carry no metric
// meaning of their own; they exist so embeddings can address interior
// locations.
class WeightedSubdivision {
 public:
  WeightedSubdivision() = default;
  WeightedSubdivision(PatternGraph pattern, std::vector<Rat> lengths,
                      std::vector<std::vector<Rat>> interior_offsets);

  const PatternGraph& pattern() const { return pattern_; }
  const Rat& length(int e) const;
  const std::vector<Rat>& offsets(int e) const;
  int interior_count(int e) const;
  long long total_points() const;

  // Offset of p along edge e, measured from edge(e).first. Valid for interior
  // points of e and for pattern vertices that are endpoints of e. A loop
  // endpoint is ambiguous (offset 0 or the full length); side picks which end
  // (0 = first). Throws ParamError when p does not lie on e.
  Rat position_on(const HostPoint& p, int e, int side = 0) const;

  // (pattern vertex, distance to it) anchor pairs: one entry for a vertex
  // point, the two endpoint routes for an interior point.
  std::vector<std::pair<int, Rat>> anchors(const HostPoint& p) const;

  Rat vertex_distance(int a, int b) const;
  Rat host_distance(const HostPoint& a, const HostPoint& b) const;

  bool valid_point(const HostPoint& p) const;

 private:
  PatternGraph pattern_;
  std::vector<Rat> lengths_;
  std::vector<std::vector<Rat>> offsets_;

  struct VDistCache {
    std::once_flag once;
    std::vector<std::vector<Rat>> d;
  };
  std::shared_ptr<VDistCache> cache_;

  void ensure_vertex_dists() const;
};

}  // namespace hembed
