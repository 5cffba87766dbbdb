#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hembed/approx.hpp"
#include "hembed/bench.hpp"
#include "hembed/errors.hpp"
#include "hembed/fpt.hpp"
#include "hembed/gen.hpp"
#include "hembed/json_io.hpp"
#include "hembed/line.hpp"
#include "hembed/oracles.hpp"

using nlohmann::json;
using namespace hembed;

// Exit contract: 0 embedding found (or command succeeded), 1 certified no,
// 2 search budget exceeded, 3 malformed input or unsupported size.
namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

// A pattern argument is either a file in the edge list format or one of the
// spelled names k1, k2, k3, c<k>, p<k>, star<k>.
PatternGraph load_pattern(const std::string& arg) {
  if (std::filesystem::exists(arg)) return PatternGraph::parse(slurp(arg));
  auto tail_num = [&](size_t skip) {
    int v = 0;
    for (size_t i = skip; i < arg.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(arg[i])))
        throw ParamError("unknown pattern " + arg);
      v = 10 * v + (arg[i] - '0');
    }
    return v;
  };
  if (arg == "k1") return PatternGraph::single_vertex();
  if (arg == "k2") return PatternGraph::single_edge();
  if (arg == "k3") return PatternGraph::triangle();
  if (arg.rfind("star", 0) == 0) return PatternGraph::star(tail_num(4));
  if (arg.rfind("c", 0) == 0) return PatternGraph::cycle(tail_num(1));
  if (arg.rfind("p", 0) == 0) return PatternGraph::path(tail_num(1));
  throw ParamError("unknown pattern " + arg);
}

std::string pattern_edge_lines(const PatternGraph& p) {
  std::string out;
  for (int e = 0; e < p.h(); ++e) {
    auto [u, v] = p.edge(e);
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    spill(out_path, text);
}

json report_json(const DistortionReport& rep) {
  return json{{"expansion", rat_to_string(rep.expansion)},
              {"contraction", rat_to_string(rep.contraction)},
              {"distortion", rat_to_string(rep.distortion)},
              {"non_contracting", rep.non_contracting},
              {"expansion_pair",
               {rep.expansion_witness.u, rep.expansion_witness.v}},
              {"contraction_pair",
               {rep.contraction_witness.u, rep.contraction_witness.v}}};
}

struct GenArgs {
  std::string family = "cycle";
  int size = 4;
  int legs = 3;
  int subdiv = 1;
  double pendant_rate = 0.0;
  uint64_t seed = 0;
  std::string base;
  std::string format = "edge";
  std::string graph_out;
  std::string pattern_out;
};

int cmd_gen(const GenArgs& a) {
  auto fam = family_from_name(a.family);
  if (!fam) throw ParamError("unknown family " + a.family);
  InstanceSpec spec;
  spec.family = *fam;
  spec.size = a.size;
  spec.legs = a.legs;
  spec.subdiv = a.subdiv;
  spec.pendant_rate = a.pendant_rate;
  spec.seed = a.seed;
  if (!a.base.empty()) spec.pattern = load_pattern(a.base);
  Instance inst = generate(spec);

  std::string text;
  if (a.format == "edge") {
    text = inst.g.to_edge_list();
  } else if (a.format == "dot") {
    text = inst.g.to_dot();
  } else if (a.format == "json") {
    json doc{{"id", inst.id},
             {"family", family_name(spec.family)},
             {"n", inst.g.n()},
             {"edges", json::array()},
             {"pattern",
              {{"vertices", inst.pattern.k()}, {"edges", json::array()}}}};
    for (auto [u, v] : inst.g.edges())
      doc["edges"].push_back({inst.g.label(u), inst.g.label(v)});
    for (int e = 0; e < inst.pattern.h(); ++e) {
      auto [u, v] = inst.pattern.edge(e);
      doc["pattern"]["edges"].push_back({u, v});
    }
    text = doc.dump(2);
  } else {
    throw ParamError("unknown format " + a.format);
  }
  emit(a.graph_out, text);
  if (!a.pattern_out.empty())
    spill(a.pattern_out, pattern_edge_lines(inst.pattern));
  return kExitYes;
}

int cmd_embed_line(const std::string& graph_path, int c, long long budget,
                   const std::string& out) {
  Graph g = Graph::parse_file(graph_path);
  auto le = line_embed_exact(g, c, budget);
  if (!le) {
    emit(out, json{{"verdict", "NO"}}.dump(2));
    return kExitNo;
  }
  Embedding emb = line_to_embedding(g, *le);
  json doc{{"verdict", "YES"},
           {"distortion", rat_to_string(le->distortion)},
           {"embedding", embedding_to_json(emb)}};
  emit(out, doc.dump(2));
  return kExitYes;
}

int cmd_approx(const std::string& graph_path, const std::string& pattern_arg,
               int c, const std::string& out, const std::string& trace_path) {
  Graph g = Graph::parse_file(graph_path);
  PatternGraph pat = load_pattern(pattern_arg);
  if (!trace_path.empty()) {
    ApproxParams params = ApproxParams::make(c, pat.h());
    SearchTrace tr = search(g, params, {}, 0);
    spill(trace_path, search_trace_to_json(tr).dump(2));
  }
  ApproxOutcome res = approx_embed(g, pat, c);
  if (!res.embedding) {
    emit(out, json{{"verdict", "NO"}}.dump(2));
    return kExitNo;
  }
  json doc{{"verdict", "YES"},
           {"distortion", rat_to_string(res.distortion)},
           {"c_alg", res.c_alg.str()},
           {"report", report_json(distortion(*res.embedding))},
           {"embedding", embedding_to_json(*res.embedding)}};
  emit(out, doc.dump(2));
  return kExitYes;
}

int cmd_fpt(const std::string& graph_path, const std::string& pattern_arg,
            int c, long long budget, bool no_gadget, const std::string& out) {
  Graph g = Graph::parse_file(graph_path);
  PatternGraph pat = load_pattern(pattern_arg);
  FptStats stats;
  json doc;
  int code;
  if (no_gadget) {
    auto res = fpt_embed(g, pat, c, budget, &stats);
    if (res) {
      doc = {{"verdict", "YES"},
             {"distortion", rat_to_string(res->distortion)},
             {"embedding", embedding_to_json(res->embedding)}};
      code = kExitYes;
    } else {
      doc = {{"verdict", "NO"}};
      code = kExitNo;
    }
  } else {
    FptGadgetOutcome res = fpt_embed_with_gadget(g, pat, c, budget, &stats);
    if (res.result) {
      doc = {{"verdict", "YES"},
             {"distortion", rat_to_string(res.result->distortion)},
             {"composite_verified", res.composite_verified},
             {"embedding", embedding_to_json(res.result->embedding)}};
      if (res.composite_verified) {
        doc["variant_used"] = res.variant_used;
        doc["composite_distortion"] = rat_to_string(res.composite_distortion);
      }
      code = kExitYes;
    } else {
      doc = {{"verdict", "NO"}};
      code = kExitNo;
    }
  }
  doc["stats"] = {{"branches", stats.branches},
                  {"budget_spent", stats.budget_spent},
                  {"trips", stats.trips}};
  emit(out, doc.dump(2));
  return code;
}

int cmd_verify(const std::string& graph_path, const std::string& emb_path) {
  Graph g = Graph::parse_file(graph_path);
  Embedding emb = embedding_from_string(slurp(emb_path), g);
  DistortionReport rep = distortion(emb);
  json doc = report_json(rep);
  doc["pushing"] = is_pushing(emb);
  doc["proper"] = is_proper(emb);
  std::cout << doc.dump(2) << "\n";
  return rep.non_contracting ? kExitYes : kExitNo;
}

int cmd_oracle(const std::string& graph_path, const std::string& host) {
  Graph g = Graph::parse_file(graph_path);
  json doc;
  if (host == "line") {
    LineEmbedding le = min_line_distortion_oracle(g);
    json ord = json::array();
    for (int v : le.order) ord.push_back(g.label(v));
    doc = {{"host", "line"},
           {"optimum", rat_to_string(le.distortion)},
           {"order", ord}};
  } else if (host == "cycle") {
    CycleOrderResult res = best_cycle_order(g);
    json ord = json::array();
    for (int v : res.order) ord.push_back(g.label(v));
    doc = {{"host", "cycle"},
           {"optimum", rat_to_string(res.distortion)},
           {"order", ord}};
  } else {
    throw ParamError("unknown host " + host);
  }
  std::cout << doc.dump(2) << "\n";
  return kExitYes;
}

int cmd_bench(int take, const std::string& algos_arg, long long budget,
              int jobs, const std::string& out) {
  std::vector<CorpusEntry> corpus = make_benchmark_corpus();
  if (take > 0 && take < static_cast<int>(corpus.size()))
    corpus.resize(take);
  std::vector<std::string> algos;
  std::stringstream ss(algos_arg);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) algos.push_back(tok);
  if (algos.empty()) throw ParamError("no algorithms selected");
  auto rows = run_bench(corpus, algos, budget, jobs);
  emit(out, bench_csv(rows));
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum distortion embeddings into weighted subdivisions"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  gen->add_option("--family", ga.family,
                  "subdivided-h, cycle, spider, caterpillar, random-tree, "
                  "clique");
  gen->add_option("--size", ga.size, "main size knob of the family");
  gen->add_option("--legs", ga.legs, "spider leg count");
  gen->add_option("--subdiv", ga.subdiv, "edges per subdivided pattern edge");
  gen->add_option("--pendant-rate", ga.pendant_rate,
                  "chance of a pendant leaf per vertex");
  gen->add_option("--seed", ga.seed, "64 bit seed");
  gen->add_option("--base", ga.base, "subdivision base pattern");
  gen->add_option("--format", ga.format, "edge, dot or json");
  gen->add_option("--graph", ga.graph_out, "write the graph here");
  gen->add_option("--pattern-out", ga.pattern_out, "write the pattern here");

  std::string graph_path, pattern_arg = "k2", emb_path, out_path, trace_path;
  std::string host = "line", algos = "oracle,fpt,approx";
  int c = 1, take = 0, jobs = 0;
  long long budget = kDefaultFptBudget;
  bool no_gadget = false;

  auto* el = app.add_subcommand("embed-line", "exact line decision");
  el->add_option("--graph", graph_path)->required();
  el->add_option("--c", c, "distortion bound");
  el->add_option("--budget", budget);
  el->add_option("--out", out_path);

  auto* ap = app.add_subcommand("approx", "approximation pipeline");
  ap->add_option("--graph", graph_path)->required();
  ap->add_option("--pattern", pattern_arg);
  ap->add_option("--c", c);
  ap->add_option("--out", out_path);
  ap->add_option("--trace", trace_path, "dump the first guided probe");

  auto* fp = app.add_subcommand("fpt", "exact bounded distortion decision");
  fp->add_option("--graph", graph_path)->required();
  fp->add_option("--pattern", pattern_arg);
  fp->add_option("--c", c);
  fp->add_option("--budget", budget);
  fp->add_flag("--no-gadget", no_gadget, "skip the composite gadget run");
  fp->add_option("--out", out_path);

  auto* ve = app.add_subcommand("verify", "recompute an embedding's report");
  ve->add_option("--graph", graph_path)->required();
  ve->add_option("--embedding", emb_path)->required();

  auto* orc = app.add_subcommand("oracle", "brute force optimum");
  orc->add_option("--graph", graph_path)->required();
  orc->add_option("--host", host, "line or cycle");

  auto* be = app.add_subcommand("bench", "run the benchmark corpus");
  be->add_option("--take", take, "only the first N corpus entries");
  be->add_option("--algos", algos, "comma list of oracle, fpt, approx");
  be->add_option("--budget", budget);
  be->add_option("--jobs", jobs, "worker threads, 0 = hardware");
  be->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (gen->parsed()) return cmd_gen(ga);
    if (el->parsed()) return cmd_embed_line(graph_path, c, budget, out_path);
    if (ap->parsed())
      return cmd_approx(graph_path, pattern_arg, c, out_path, trace_path);
    if (fp->parsed())
      return cmd_fpt(graph_path, pattern_arg, c, budget, no_gadget, out_path);
    if (ve->parsed()) return cmd_verify(graph_path, emb_path);
    if (orc->parsed()) return cmd_oracle(graph_path, host);
    if (be->parsed()) return cmd_bench(take, algos, budget, jobs, out_path);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
