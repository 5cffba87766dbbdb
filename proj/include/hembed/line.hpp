#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "hembed/embedding.hpp"
#include "hembed/graph.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// Pushed layout on the line: order[i] sits at positions[i], consecutive
// points exactly their metric distance apart. Distortion of a pushed
// layout equals its expansion.
struct LineEmbedding {
  std::vector<int> order;
  std::vector<Rat> positions;
  Rat distortion;
};

// Witness that no c-embedding into the line exists: three vertices in one
// BFS layer of root, pairwise further than 2c apart. Any line embedding
// puts two of them on the same side of the root with the walk from the
// outer one passing within c of the inner one, forcing distance <= 2c.
struct LineCertificate {
  int root = -1;
  int a = -1;
  int b = -1;
  int x = -1;
  int layer = -1;
};

using LineApproxResult = std::variant<LineEmbedding, LineCertificate>;

struct LineSearchStats {
  long long states = 0;
};

inline constexpr long long kDefaultLineBudget = 5'000'000;
inline constexpr int kLineApproxQuality = 12;
inline constexpr int kLineOracleCap = 9;

// Expansion of the pushed layout for a fixed vertex order.
Rat line_distortion(const Graph& g, const std::vector<int>& order);

// Exact minimum over all orderings. Hard cap n <= 9.
LineEmbedding min_line_distortion_oracle(const Graph& g);

// Decides whether g has a non-contracting line embedding with expansion
// <= c. Small instances run a pruned ordering search; larger ones run a
// sliding-window reachability over feasible windows of 4c^2+2 vertices.
std::optional<LineEmbedding> line_embed_exact(
    const Graph& g, int c, long long budget = kDefaultLineBudget,
    LineSearchStats* stats = nullptr);

// Same decision for an explicit finite metric (entries exact rationals).
std::optional<LineEmbedding> line_embed_exact_metric(
    const std::vector<std::vector<Rat>>& dist, int c,
    long long budget = kDefaultLineBudget);

// Polynomial-time layer-order heuristic with a sound refutation side.
LineApproxResult line_embed_approx(const Graph& g, int c);

// Materializes a pushed layout as an embedding into a single subdivided
// edge (or the one-vertex pattern when g is a single vertex).
Embedding line_to_embedding(const Graph& g, const LineEmbedding& le);

}  // namespace hembed
