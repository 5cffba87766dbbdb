#pragma once

#include <vector>

#include "hembed/graph.hpp"
#include "hembed/rational.hpp"

namespace hembed {

struct CycleOrderResult {
  Rat distortion;
  std::vector<int> order;  // cyclic vertex order, order[0] == 0
};

inline constexpr int kCycleOracleCap = 10;

// Cheapest way to wrap the graph metric around a weighted cycle. Consecutive
// images can always be pulled to arc distance exactly their graph distance
// without hurting any pair, so sweeping the fully pushed layouts over all
// cyclic orders returns the true optimum over every weighted cycle host and
// every placement. Throws SizeError past the cap.
CycleOrderResult best_cycle_order(const Graph& g, int cap = kCycleOracleCap);

// Minimum distortion of a non-contracting embedding into a weighted cycle.
Rat min_cycle_distortion_oracle(const Graph& g);

}  // namespace hembed
