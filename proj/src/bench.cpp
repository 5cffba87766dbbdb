#include "hembed/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "hembed/approx.hpp"
#include "hembed/errors.hpp"
#include "hembed/fpt.hpp"
#include "hembed/line.hpp"
#include "hembed/oracles.hpp"

namespace hembed {

std::optional<Rat> oracle_optimum(const Graph& g, const PatternGraph& pat) {
  try {
    if (pat.h() == 1 && !pat.is_loop(0))
      return min_line_distortion_oracle(g).distortion;
    if (pat.k() >= 3 && pat.is_cycle_shape())
      return min_cycle_distortion_oracle(g);
  } catch (const SizeError&) {
  }
  return std::nullopt;
}

namespace {

void fill_record(const CorpusEntry& entry, const std::string& algo,
                 long long fpt_budget, BenchRecord& rec) {
  const Graph& g = entry.inst.g;
  const PatternGraph& pat = entry.inst.pattern;
  rec.id = entry.inst.id;
  rec.family = family_name(entry.inst.spec.family);
  rec.n = g.n();
  rec.h = pat.h();
  rec.c = entry.c;
  rec.algo = algo;
  if (auto opt = oracle_optimum(g, pat)) rec.oracle_opt = rat_to_string(*opt);

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (algo == "oracle") {
      if (rec.oracle_opt.empty()) {
        rec.verdict = "ERROR";
      } else {
        Rat opt = rat_from_string(rec.oracle_opt);
        rec.verdict = opt <= Rat(entry.c) ? "YES" : "NO";
        if (rec.verdict == "YES") rec.distortion = rec.oracle_opt;
      }
    } else if (algo == "fpt") {
      auto out = fpt_embed(g, pat, entry.c, fpt_budget);
      rec.verdict = out ? "YES" : "NO";
      if (out) rec.distortion = rat_to_string(out->distortion);
    } else if (algo == "approx") {
      auto out = approx_embed(g, pat, entry.c);
      rec.verdict = out.embedding ? "YES" : "NO";
      if (out.embedding) rec.distortion = rat_to_string(out.distortion);
    } else {
      rec.verdict = "ERROR";
    }
  } catch (const BudgetError&) {
    rec.verdict = "BUDGET";
  } catch (const Error&) {
    rec.verdict = "ERROR";
  }
  auto t1 = std::chrono::steady_clock::now();
  rec.micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::vector<CorpusEntry>& entries,
                                   const std::vector<std::string>& algos,
                                   long long fpt_budget, int jobs) {
  struct Job {
    const CorpusEntry* entry;
    const std::string* algo;
  };
  std::vector<Job> plan;
  for (const auto& entry : entries)
    for (const auto& algo : algos) plan.push_back({&entry, &algo});

  std::vector<BenchRecord> rows(plan.size());
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp<int>(jobs, 1, static_cast<int>(plan.size()) + 1);

  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    for (size_t i = cursor++; i < plan.size(); i = cursor++)
      fill_record(*plan[i].entry, *plan[i].algo, fpt_budget, rows[i]);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::sort(rows.begin(), rows.end(),
            [](const BenchRecord& a, const BenchRecord& b) {
              if (a.id != b.id) return a.id < b.id;
              return a.algo < b.algo;
            });
  return rows;
}

std::string bench_csv(const std::vector<BenchRecord>& rows) {
  std::string out = "id,family,n,h,c,algo,verdict,distortion,oracle_opt,micros\n";
  for (const auto& r : rows) {
    out += r.id + "," + r.family + "," + std::to_string(r.n) + "," +
           std::to_string(r.h) + "," + std::to_string(r.c) + "," + r.algo +
           "," + r.verdict + "," + r.distortion + "," + r.oracle_opt + "," +
           std::to_string(r.micros) + "\n";
  }
  return out;
}

}  // namespace hembed
