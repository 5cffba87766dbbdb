#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hembed/graph.hpp"
#include "hembed/host.hpp"

namespace hembed {

// An injective placement of every graph vertex on a point of the host.
// Interior points without an occupant are legal (they are plain markers);
// two vertices on one point are not.
class Embedding {
 public:
  Embedding(Graph g, WeightedSubdivision host, std::vector<HostPoint> image);

  const Graph& graph() const { return g_; }
  const WeightedSubdivision& host() const { return host_; }
  const HostPoint& image(int v) const;

  // Source vertex at a host point, -1 if the point is unoccupied.
  int occupant_interior(int e, int i) const;
  int occupant_vertex(int pattern_vertex) const;
  int occupant(const HostPoint& p) const;

  Rat host_dist(int u, int v) const;

 private:
  Graph g_;
  WeightedSubdivision host_;
  std::vector<HostPoint> image_;
  std::vector<std::vector<int>> interior_occ_;
  std::vector<int> vertex_occ_;
};

struct PairWitness {
  int u = -1, v = -1;
  Rat value;
};

struct DistortionReport {
  Rat expansion{1};
  Rat contraction{1};
  Rat distortion{1};
  PairWitness expansion_witness;
  PairWitness contraction_witness;
  bool non_contracting = true;
};

// Exact ratios over all vertex pairs; a single vertex reports all ones.
DistortionReport distortion(const Embedding& emb);

struct PushingViolation {
  int edge = -1;
  int u = -1, v = -1;  // consecutive images along the edge
  Rat along;           // along-edge gap between them
  int graph_dist = 0;
};

// Every two images that are consecutive along a pattern edge (no other image
// strictly between them on that edge) must sit at along-edge distance exactly
// d_G. Vacuously true for a single vertex.
bool is_pushing(const Embedding& emb, PushingViolation* out = nullptr);

struct ProperWitness {
  bool segment = false;
  HostPoint at;        // failing marked point when !segment
  int edge = -1;       // edge holding the failing open segment
  Rat lo, hi;          // open interval of offsets on that edge
};

// A host location z is covered when some graph edge {u,v} satisfies
// d(z,f(u)) + d(z,f(v)) = d(f(u),f(v)), i.e. z lies on a geodesic between the
// images of two adjacent vertices. Proper means every point of the metric
// realization is covered; segments are decided exactly via piecewise linear
// interval arithmetic, not by sampling.
bool is_proper(const Embedding& emb, ProperWitness* out = nullptr);

}  // namespace hembed
