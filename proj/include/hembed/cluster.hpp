#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hembed/host.hpp"
#include "hembed/pattern.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// Distance callback over the vertex set handed to cluster_solutions. Values
// are exact hop distances in the ambient graph, not distances inside the
// cluster subgraph.
using DistFn = std::function<long long(int, int)>;

// How one pattern edge of the cluster piece is populated: the vertices laid
// along it in order, plus the slack before the first image and after the last
// one. Empty order means the edge carries no images and alpha + beta is its
// whole length.
struct EdgeLayout {
  std::vector<int> order;
  Rat alpha{0};
  Rat beta{0};
};

// One locally optimal way to place a vertex set S on a weighted subdivision of
// the cluster piece C. Image i is where verts[i] lands. Every emitted solution
// satisfies the global distance bounds d(u,v) <= host <= c*d(u,v) on S and
// places consecutive images along each edge at host distance exactly d.
struct ClusterSolution {
  WeightedSubdivision host;
  std::vector<int> verts;
  std::vector<HostPoint> image;
  std::vector<EdgeLayout> layout;
  Rat slack_total{0};
};

struct ClusterStats {
  long long configurations = 0;
  long long lp_solved = 0;
  long long emitted = 0;
};

inline constexpr long long kDefaultClusterBudget = 250'000;

// Enumerates candidate placements of S on subdivisions of C, one LP per
// configuration (a partition of S over the edges of C together with an order
// per part). Calls visit for each solution that survives exact distance
// checks; visit returning false stops the walk early. Returns false exactly
// when stopped early. Throws BudgetError once the configuration count passes
// the budget.
bool cluster_solutions_visit(const std::vector<int>& S, const PatternGraph& C,
                             const DistFn& dist, int c, long long budget,
                             const std::function<bool(const ClusterSolution&)>& visit,
                             ClusterStats* stats = nullptr);

std::vector<ClusterSolution> cluster_solutions(
    const std::vector<int>& S, const PatternGraph& C, const DistFn& dist,
    int c, long long budget = kDefaultClusterBudget,
    ClusterStats* stats = nullptr);

}  // namespace hembed
