#include "hembed/host.hpp"

#include <algorithm>
#include <optional>

#include "hembed/errors.hpp"

namespace hembed {

WeightedSubdivision::WeightedSubdivision(PatternGraph pattern,
                                         std::vector<Rat> lengths,
                                         std::vector<std::vector<Rat>> interior_offsets)
    : pattern_(std::move(pattern)),
      lengths_(std::move(lengths)),
      offsets_(std::move(interior_offsets)),
      cache_(std::make_shared<VDistCache>()) {
  int h = pattern_.h();
  if (!pattern_.connected()) throw ModelError("host pattern must be connected");
  if (static_cast<int>(lengths_.size()) != h)
    throw ModelError("length list does not match pattern edge count");
  if (static_cast<int>(offsets_.size()) != h)
    throw ModelError("offset list does not match pattern edge count");
  for (int e = 0; e < h; ++e) {
    if (lengths_[e] <= 0) throw ModelError("edge length must be positive");
    const auto& off = offsets_[e];
    for (size_t i = 0; i < off.size(); ++i) {
      if (off[i] <= 0 || off[i] >= lengths_[e])
        throw ModelError("interior offset outside the open edge interval");
      if (i > 0 && off[i] <= off[i - 1])
        throw ModelError("interior offsets must increase strictly");
    }
  }
}

const Rat& WeightedSubdivision::length(int e) const {
  if (e < 0 || e >= pattern_.h()) throw ParamError("edge id out of range");
  return lengths_[e];
}

const std::vector<Rat>& WeightedSubdivision::offsets(int e) const {
  if (e < 0 || e >= pattern_.h()) throw ParamError("edge id out of range");
  return offsets_[e];
}

int WeightedSubdivision::interior_count(int e) const {
  return static_cast<int>(offsets(e).size());
}

long long WeightedSubdivision::total_points() const {
  long long t = pattern_.k();
  for (const auto& off : offsets_) t += static_cast<long long>(off.size());
  return t;
}

bool WeightedSubdivision::valid_point(const HostPoint& p) const {
  if (p.is_vertex()) return p.vertex >= 0 && p.vertex < pattern_.k();
  return p.edge >= 0 && p.edge < pattern_.h() && p.index >= 0 &&
         p.index < interior_count(p.edge);
}

Rat WeightedSubdivision::position_on(const HostPoint& p, int e, int side) const {
  auto [u, v] = pattern_.edge(e);
  if (p.is_vertex()) {
    if (u == v && p.vertex == u) return side == 0 ? Rat(0) : lengths_[e];
    if (p.vertex == u) return Rat(0);
    if (p.vertex == v) return lengths_[e];
    throw ParamError("point is not on the requested edge");
  }
  if (p.edge != e) throw ParamError("point is not on the requested edge");
  return offsets_[e][p.index];
}

std::vector<std::pair<int, Rat>> WeightedSubdivision::anchors(const HostPoint& p) const {
  if (!valid_point(p)) throw ParamError("invalid host point");
  if (p.is_vertex()) return {{p.vertex, Rat(0)}};
  auto [u, v] = pattern_.edge(p.edge);
  const Rat& off = offsets_[p.edge][p.index];
  return {{u, off}, {v, lengths_[p.edge] - off}};
}

void WeightedSubdivision::ensure_vertex_dists() const {
  std::call_once(cache_->once, [this] {
    int k = pattern_.k();
    // -1 sentinel is unusable with Rat; seed with a value strictly above any
    // path length instead.
    Rat inf = Rat(1);
    for (const auto& l : lengths_) inf += l;
    auto& d = cache_->d;
    d.assign(k, std::vector<Rat>(k, inf));
    for (int i = 0; i < k; ++i) d[i][i] = 0;
    for (int e = 0; e < pattern_.h(); ++e) {
      auto [u, v] = pattern_.edge(e);
      if (u == v) continue;  // a loop never shortens a vertex-to-vertex path
      if (lengths_[e] < d[u][v]) d[u][v] = d[v][u] = lengths_[e];
    }
    for (int mid = 0; mid < k; ++mid)
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Rat via = d[i][mid] + d[mid][j];
          if (via < d[i][j]) d[i][j] = via;
        }
  });
}

Rat WeightedSubdivision::vertex_distance(int a, int b) const {
  if (a < 0 || a >= pattern_.k() || b < 0 || b >= pattern_.k())
    throw ParamError("pattern vertex out of range");
  ensure_vertex_dists();
  return cache_->d[a][b];
}

Rat WeightedSubdivision::host_distance(const HostPoint& a, const HostPoint& b) const {
  if (!valid_point(a) || !valid_point(b)) throw ParamError("invalid host point");
  if (a == b) return Rat(0);
  std::optional<Rat> best;
  auto consider = [&](const Rat& cand) {
    if (!best || cand < *best) best = cand;
  };
  // Straight along a shared edge, including both endpoint identifications for
  // loops.
  if (!a.is_vertex() && !b.is_vertex() && a.edge == b.edge) {
    Rat d = offsets_[a.edge][a.index] - offsets_[b.edge][b.index];
    consider(d < 0 ? Rat(-d) : d);
  }
  for (const auto& [va, da] : anchors(a))
    for (const auto& [vb, db] : anchors(b))
      consider(da + vertex_distance(va, vb) + db);
  return *best;
}

}  // namespace hembed
