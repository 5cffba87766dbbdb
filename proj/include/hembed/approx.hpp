#pragma once

#include <optional>
#include <vector>

#include "hembed/embedding.hpp"
#include "hembed/graph.hpp"
#include "hembed/pattern.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// Parameter bundle for the approximation pipeline. h is the edge count of
// the pattern. The guarantee constant c_alg is exact and grows fast, so it
// lives in a big integer.
struct ApproxParams {
  int c = 1;
  int h = 1;
  long long ell = 0;
  long long r = 0;
  Int c_alg;

  static ApproxParams make(int c, int h);
};

enum class SearchOutcome { Success, FailNearF, FailExhausted };

struct SearchLayer {
  int i = 0;
  std::vector<int> x;
  std::vector<int> xl;
  std::vector<int> xr;
};

// Full record of one guided BFS: the layers from depth 2c^2 on with their
// left/right split, the two seed picks, and how the run ended.
struct SearchTrace {
  SearchOutcome outcome = SearchOutcome::FailExhausted;
  int u_hat = -1;
  int v_l = -1;
  int v_r = -1;
  int halt_layer = -1;
  std::vector<SearchLayer> layers;
};

// Guided BFS from v that either finds a spot near a high-degree region of
// the host structure (Success with u_hat) or fails by exhausting the graph
// or running into the protected zone around f_set. All arbitrary picks
// resolve to minimum vertex id.
SearchTrace search(const Graph& g, const ApproxParams& params,
                   const std::vector<int>& f_set, int v);

// Branching driver around search: returns every set produced by some
// resolution of the add-v / add-u_hat choices, deduplicated. Each set has
// fewer than h + 1 vertices, pairwise further than r apart.
std::vector<std::vector<int>> cover(const Graph& g,
                                    const ApproxParams& params);

// Assembles a host from the ball decomposition around f_set: one host
// vertex per ball component, one edge per deep outside component, shallow
// components absorbed into their unique ball component. Returns the
// repaired proper pushing embedding, or nullopt when a component's line
// step refutes or the assembled candidate fails verification.
std::optional<Embedding> stitch(const Graph& g, const ApproxParams& params,
                                const std::vector<int>& f_set);

// Decides whether hp can be presented as a subdivision of a subgraph of h:
// branch vertices map injectively, chains map to internally disjoint paths
// with enough subdivision points. Returns the branch-vertex images (-1 for
// suppressed vertices) or nullopt.
std::optional<std::vector<int>> topological_subgraph_check(
    const PatternGraph& hp, const PatternGraph& h);

struct ApproxOutcome {
  std::optional<Embedding> embedding;
  Rat distortion{0};
  Int c_alg;
};

// Full approximation driver: density screen, cover/stitch over pattern
// edge budgets, candidates filtered by the topological check and the exact
// verifier, minimum-distortion winner returned. An empty embedding means
// no c-embedding into any weighted subdivision of hpat exists.
ApproxOutcome approx_embed(const Graph& g, const PatternGraph& hpat, int c);

}  // namespace hembed
