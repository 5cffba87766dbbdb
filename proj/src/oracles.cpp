#include "hembed/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "hembed/errors.hpp"

namespace hembed {

CycleOrderResult best_cycle_order(const Graph& g, int cap) {
  const int n = g.n();
  if (n > cap)
    throw SizeError("cycle oracle limited to " + std::to_string(cap) +
                    " vertices");
  if (!g.connected()) throw ModelError("graph must be connected");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (n <= 2) return {Rat(1), order};

  std::vector<int> rest(order.begin() + 1, order.end());
  long long best_num = -1, best_den = 1;
  std::vector<int> best;
  std::vector<long long> pref(n + 1);
  do {
    // Fix vertex 0 first and skip mirror images.
    if (rest.front() > rest.back()) continue;
    pref[0] = 0;
    for (int i = 0; i + 1 < n; ++i) {
      int a = (i == 0) ? 0 : rest[i - 1];
      pref[i + 1] = pref[i] + g.dist(a, rest[i]);
    }
    pref[n] = pref[n - 1] + g.dist(rest.back(), 0);
    long long total = pref[n];
    // Worst pair ratio for this order, kept as a fraction.
    long long num = 1, den = 1;
    for (int i = 0; i < n; ++i) {
      int u = (i == 0) ? 0 : rest[i - 1];
      for (int j = i + 1; j < n; ++j) {
        int v = rest[j - 1];
        long long arc = pref[j] - pref[i];
        long long span = std::min(arc, total - arc);
        long long d = g.dist(u, v);
        if (span * den > num * d) {
          num = span;
          den = d;
        }
      }
    }
    if (best_num < 0 || num * best_den < best_num * den) {
      best_num = num;
      best_den = den;
      best = rest;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));

  std::vector<int> full(1, 0);
  full.insert(full.end(), best.begin(), best.end());
  return {rat_of(best_num, best_den), full};
}

Rat min_cycle_distortion_oracle(const Graph& g) {
  return best_cycle_order(g).distortion;
}

}  // namespace hembed
