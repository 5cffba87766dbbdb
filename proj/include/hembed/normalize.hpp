#pragma once

#include "hembed/embedding.hpp"

namespace hembed {

struct NormalizeResult {
  Embedding embedding;
  int rounds = 0;           // surgery iterations performed
  DistortionReport report;  // of the output
};

// Repairs a non-contracting embedding into a proper pushing one whose host is
// a quasi subgraph shape of the input host pattern, without ever increasing
// distortion. Improper material is provably off every geodesic between
// adjacent images, so cutting it can only grow distances of non-adjacent
// pairs, and those are bounded through adjacent hops; gap shrinking then
// pulls consecutive images to exact graph distance.
//
// Throws ContractError when the input contracts, ModelError if the loop
// cannot restore the invariants (which would contradict the argument above).
NormalizeResult normalize_to_proper_pushing(const Embedding& input);

}  // namespace hembed
