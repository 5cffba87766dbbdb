#pragma once

#include <optional>
#include <vector>

#include "hembed/cluster.hpp"
#include "hembed/embedding.hpp"
#include "hembed/graph.hpp"
#include "hembed/line.hpp"
#include "hembed/pattern.hpp"
#include "hembed/quasi.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// Knobs derived from the distortion bound, the shape under trial, and the
// base pattern's edge count. An edge of the weighted host counts as short
// under short_limit; window is the sliding slot count of the corridor walk
// minus one.
struct FptParams {
  int c = 1;
  long long short_limit = 0;
  int delta = 0;
  long long interesting_cap = 0;
  long long piece_cap = 0;
  int window = 0;
  static FptParams make(int c, const PatternGraph& shape, int base_edges);
};

// Whether the metric of the radius-alpha ball around v refuses every line
// embedding at distortion c. Monotone in alpha: the smaller ball is a
// subspace of the larger one.
bool is_alpha_interesting(const Graph& g, int v, int alpha, int c,
                          long long budget = kDefaultLineBudget);

struct DeltaInteresting {
  bool too_many = false;
  std::vector<int> verts;
};

// All vertices whose delta ball refuses the line, delta taken from
// FptParams. too_many reports the interesting_cap overflowing, a sound
// reason to drop the branch that asked.
DeltaInteresting delta_interesting_set(const Graph& g,
                                       const PatternGraph& shape, int c,
                                       int base_edges,
                                       long long budget = kDefaultLineBudget);

// An interior short piece of a corridor, bundled with the pattern edges
// entering and leaving it: edge 0 comes in, the last edge goes out.
struct PathStop {
  std::vector<int> cluster;
  PatternGraph bundle;
};

struct PathStats {
  long long states = 0;
  long long distinct_windows = 0;
  long long cluster_configs = 0;
};

struct PathFragment {
  std::vector<int> walk;
  std::vector<ClusterSolution> stops;
};

inline constexpr long long kDefaultFptBudget = 5'000'000;

// Walks a corridor of the host: starting from the seed window S (exactly
// 4c^2+1 vertices, already laid out), repeatedly appends one vertex keeping
// every window of 4c^2+2 consecutive slots feasible, consuming W. With T
// nonempty the walk must end with T as its trailing window and all of W
// consumed; with T empty it must consume everything it can reach. Interior
// stops hand over to the cluster solver. delta bounds the handover
// neighborhood. Returns the walk or nullopt; throws BudgetError.
std::optional<PathFragment> path_embed(
    const Graph& g, const std::vector<int>& W, const std::vector<int>& S,
    const std::vector<int>& T, const std::vector<PathStop>& stops, int c,
    int delta, long long budget = kDefaultFptBudget,
    PathStats* stats = nullptr);

struct FptStats {
  long long branches = 0;
  long long budget_spent = 0;
  long long trips = 0;
};

struct FptOutcome {
  Embedding embedding;
  Rat distortion;
};

// Decides whether g embeds into some weighted subdivision of h with
// distortion at most c, trying shapes from most structured down. A returned
// embedding is verified exactly; nullopt is a certified no. BudgetError
// reports the first starved branch when the search space was not covered.
std::optional<FptOutcome> fpt_embed(const Graph& g, const PatternGraph& h,
                                    int c,
                                    long long budget = kDefaultFptBudget,
                                    FptStats* stats = nullptr);

// The clique augmentation: g plus a k-clique, one clique vertex tied by
// three long paths to the three lowest vertices of g. Pattern variants
// attach the clique to every three element subset of vertices and edges of
// h, subdividing once per chosen edge. Elements are encoded as v for a
// vertex and k(h)+e for an edge.
struct GadgetAugmentation {
  Graph g_prime;
  std::vector<int> clique_vertices;
  std::vector<std::vector<int>> paths;  // hub end first, target end last
  std::vector<int> targets;
  int k = 0;
  std::vector<PatternGraph> variants;
  std::vector<std::vector<int>> variant_elements;
};

GadgetAugmentation augment_with_clique_gadget(const Graph& g,
                                              const PatternGraph& h, int c);

struct FptGadgetOutcome {
  std::optional<FptOutcome> result;
  bool composite_verified = false;
  int variant_used = -1;
  Rat composite_distortion{0};
};

// Runs the core decision, then on a yes realizes the augmented instance
// inside the matching pattern variant and verifies the composite embedding
// end to end. When the three target images do not select three distinct
// elements the composite step is skipped and composite_verified stays
// false.
FptGadgetOutcome fpt_embed_with_gadget(const Graph& g, const PatternGraph& h,
                                       int c,
                                       long long budget = kDefaultFptBudget,
                                       FptStats* stats = nullptr);

}  // namespace hembed
