#include "hembed/json_io.hpp"

#include <map>
#include <set>

#include "hembed/errors.hpp"

namespace hembed {

using nlohmann::json;

json embedding_to_json(const Embedding& emb) {
  const auto& host = emb.host();
  const auto& pat = host.pattern();
  json doc;
  doc["pattern"]["vertices"] = pat.k();
  json edges = json::array();
  for (auto [u, v] : pat.edges()) edges.push_back(json::array({u, v}));
  doc["pattern"]["edges"] = edges;
  json lengths = json::object();
  json points = json::object();
  for (int e = 0; e < pat.h(); ++e) {
    lengths[std::to_string(e)] = rat_to_string(host.length(e));
    json plist = json::array();
    for (int i = 0; i < host.interior_count(e); ++i) {
      json p;
      int occ = emb.occupant_interior(e, i);
      if (occ >= 0)
        p["vertex_label"] = emb.graph().label(occ);
      else
        p["vertex_label"] = nullptr;
      p["offset"] = rat_to_string(host.offsets(e)[i]);
      plist.push_back(p);
    }
    points[std::to_string(e)] = plist;
  }
  doc["edge_lengths"] = lengths;
  doc["points"] = points;
  json vimg = json::object();
  for (int pv = 0; pv < pat.k(); ++pv) {
    int occ = emb.occupant_vertex(pv);
    if (occ >= 0) vimg[std::to_string(pv)] = emb.graph().label(occ);
  }
  doc["vertex_images"] = vimg;
  return doc;
}

Embedding embedding_from_json(const json& doc, const Graph& g) {
  try {
    int k = doc.at("pattern").at("vertices").get<int>();
    std::vector<std::pair<int, int>> pedges;
    for (const auto& e : doc.at("pattern").at("edges"))
      pedges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    PatternGraph pat(k, pedges);

    int h = pat.h();
    std::vector<Rat> lengths(h);
    const auto& jl = doc.at("edge_lengths");
    for (int e = 0; e < h; ++e)
      lengths[e] = rat_from_string(jl.at(std::to_string(e)).get<std::string>());

    std::vector<std::vector<Rat>> offsets(h);
    std::vector<std::vector<long long>> occupants(h);
    const auto& jp = doc.at("points");
    for (int e = 0; e < h; ++e) {
      for (const auto& p : jp.at(std::to_string(e))) {
        offsets[e].push_back(rat_from_string(p.at("offset").get<std::string>()));
        const auto& lab = p.at("vertex_label");
        occupants[e].push_back(lab.is_null() ? -1 : lab.get<long long>());
      }
    }

    WeightedSubdivision host(pat, lengths, offsets);

    std::vector<HostPoint> image(g.n());
    std::vector<char> placed(g.n(), 0);
    auto place = [&](long long lab, HostPoint where) {
      auto idx = g.index_of_label(lab);
      if (!idx) throw MismatchError("unknown vertex label " + std::to_string(lab));
      if (placed[*idx])
        throw MismatchError("vertex label placed twice: " + std::to_string(lab));
      placed[*idx] = 1;
      image[*idx] = where;
    };
    for (int e = 0; e < h; ++e)
      for (size_t i = 0; i < occupants[e].size(); ++i)
        if (occupants[e][i] >= 0)
          place(occupants[e][i], HostPoint::interior(e, static_cast<int>(i)));
    for (const auto& [key, val] : doc.at("vertex_images").items()) {
      int pv = std::stoi(key);
      if (pv < 0 || pv >= pat.k()) throw ParseError("pattern vertex out of range");
      place(val.get<long long>(), HostPoint::at_vertex(pv));
    }
    for (int v = 0; v < g.n(); ++v)
      if (!placed[v])
        throw MismatchError("no image for vertex label " +
                            std::to_string(g.label(v)));
    return Embedding(g, host, image);
  } catch (const Error&) {
    throw;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad embedding document: ") + ex.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("bad embedding document: non-numeric key");
  }
}

std::string embedding_to_string(const Embedding& emb) {
  return embedding_to_json(emb).dump(2) + "\n";
}

Embedding embedding_from_string(const std::string& text, const Graph& g) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad JSON: ") + ex.what());
  }
  return embedding_from_json(doc, g);
}

json search_trace_to_json(const SearchTrace& trace) {
  json doc;
  switch (trace.outcome) {
    case SearchOutcome::Success:
      doc["outcome"] = "success";
      break;
    case SearchOutcome::FailNearF:
      doc["outcome"] = "fail_near_f";
      break;
    case SearchOutcome::FailExhausted:
      doc["outcome"] = "fail_exhausted";
      break;
  }
  auto opt_vertex = [](int v) {
    return v < 0 ? json(nullptr) : json(v);
  };
  doc["u_hat"] = opt_vertex(trace.u_hat);
  doc["v_l"] = opt_vertex(trace.v_l);
  doc["v_r"] = opt_vertex(trace.v_r);
  doc["halt_layer"] = trace.halt_layer;
  json layers = json::array();
  for (const auto& lay : trace.layers) {
    json jl;
    jl["i"] = lay.i;
    jl["x"] = lay.x;
    jl["xl"] = lay.xl;
    jl["xr"] = lay.xr;
    layers.push_back(jl);
  }
  doc["layers"] = layers;
  return doc;
}

}  // namespace hembed
