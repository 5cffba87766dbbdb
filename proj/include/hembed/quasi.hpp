#pragma once

#include <optional>
#include <vector>

#include "hembed/pattern.hpp"

namespace hembed {

// A shape reachable from a base pattern by deleting vertices, deleting edges,
// and splitting an edge into two pendant half edges (each original edge split
// at most once), keeping only a connected result.
struct QuasiSubgraph {
  PatternGraph graph;
  std::vector<int> split_edges;  // base edge ids whose halves survive
  int base_edges_kept = 0;       // unsplit base edges present
};

// All connected shapes reachable by the three rules, one representative per
// isomorphism class. Ordered most-structured first: descending edge count,
// then descending vertex count, then lexicographic degree sequence. The
// single vertex shape is always present and last. Base patterns with more
// than 6 edges are refused (the class count grows like 2^(5h)).
std::vector<QuasiSubgraph> enumerate_quasi_subgraphs(const PatternGraph& base);

// How a shape sits inside its base. vertex_to_base maps shape vertices to
// base vertices, -1 for pendant tips born from splits. Each shape edge came
// from one base edge: whole (half 0), or the half at the base edge's first
// (1) or second (2) endpoint, the pendant tip being the loose end.
struct QuasiRealization {
  std::vector<int> vertex_to_base;
  std::vector<int> edge_to_base;
  std::vector<int> edge_half;
};

// One way the shape arises from the base by the three rules, or nullopt when
// none exists. Backtracking over shape edges; meant for the small patterns
// used here.
std::optional<QuasiRealization> realize_quasi(const PatternGraph& shape,
                                              const PatternGraph& base);

}  // namespace hembed
