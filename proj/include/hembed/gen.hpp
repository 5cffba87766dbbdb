#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hembed/graph.hpp"
#include "hembed/pattern.hpp"

namespace hembed {

enum class Family {
  SubdividedH,
  Cycle,
  Spider,
  Caterpillar,
  RandomTree,
  Clique,
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Deterministic instance recipe: the same spec always produces the same
// graph, pattern and id. size is the family's main knob (cycle length,
// clique order, tree size, caterpillar spine, spider leg length); legs,
// subdiv and pendant_rate apply where they make sense and are ignored
// elsewhere. A pattern with k() == 0 means the family default.
struct InstanceSpec {
  Family family = Family::Cycle;
  int size = 4;
  int legs = 3;
  int subdiv = 1;
  double pendant_rate = 0.0;
  uint64_t seed = 0;
  PatternGraph pattern;
};

struct Instance {
  std::string id;
  InstanceSpec spec;
  Graph g;
  PatternGraph pattern;
};

// Family defaults: cycle -> K3, spider -> star(legs), everything else -> K2,
// subdivided-H keeps its own base pattern (star(3) when unset). With
// pendant_rate 0 the subdivided-H family returns an exact subdivision of the
// base, so a distortion one host exists by construction. Throws ParamError
// on sizes below the family minimum or a non simple subdivision base.
Instance generate(const InstanceSpec& spec);

struct CorpusEntry {
  Instance inst;
  int c = 1;
  bool gadget = false;
};

// Fixed benchmark corpus: 200 instances, every graph on at most 7 vertices,
// patterns limited to K2 and K3, c in {1,2,3}. At least 20 entries carry the
// gadget flag; those sit at c = 1, or at c = 2 on the single edge, so the
// composite gadget verification stays cheap.
std::vector<CorpusEntry> make_benchmark_corpus();

}  // namespace hembed
