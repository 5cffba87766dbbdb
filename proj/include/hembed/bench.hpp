#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hembed/gen.hpp"
#include "hembed/rational.hpp"

namespace hembed {

// One measured run of one algorithm on one corpus entry. distortion is
// filled exactly when the verdict is YES (the algorithm handed back an
// embedding that verified); oracle_opt whenever a brute force optimum is
// available for the entry's pattern and size.
struct BenchRecord {
  std::string id;
  std::string family;
  int n = 0;
  int h = 0;
  int c = 1;
  std::string algo;
  std::string verdict;
  std::string distortion;
  std::string oracle_opt;
  long long micros = 0;
};

// Exact optimum over all hosts drawn from the pattern, when the pattern is
// a single edge (line oracle) or a cycle shape (cycle oracle) and the graph
// is small enough for the brute force. nullopt otherwise.
std::optional<Rat> oracle_optimum(const Graph& g, const PatternGraph& pat);

// One record per entry x algorithm, algorithms drawn from "approx", "fpt",
// "oracle". Rows are computed concurrently and returned sorted by id then
// algorithm, so repeated runs differ only in the micros column.
std::vector<BenchRecord> run_bench(const std::vector<CorpusEntry>& entries,
                                   const std::vector<std::string>& algos,
                                   long long fpt_budget, int jobs = 0);

std::string bench_csv(const std::vector<BenchRecord>& rows);

}  // namespace hembed
