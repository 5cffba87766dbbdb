#pragma once

#include <json.hpp>

#include <string>

#include "hembed/approx.hpp"
#include "hembed/embedding.hpp"

namespace hembed {

// Schema (all rationals as "p/q" strings, gcd-reduced, q > 0):
// {
//   "pattern": {"vertices": 3, "edges": [[0,1],[1,2],[2,0]]},
//   "edge_lengths": {"0": "5/2", ...},
//   "points": {"0": [{"vertex_label": 4, "offset": "1/2"}, ...], ...},
//   "vertex_images": {"0": 7, ...}
// }
// points lists each edge's marked interior points in offset order;
// vertex_label is the source graph label sitting there, or null for a bare
// marker. vertex_images maps pattern vertices to source labels and mentions
// only occupied ones.
nlohmann::json embedding_to_json(const Embedding& emb);

// Rebuilds the embedding against the given source graph. Throws ParseError on
// malformed documents and MismatchError when labels do not line up with the
// graph (unknown, missing or duplicated).
Embedding embedding_from_json(const nlohmann::json& doc, const Graph& g);

std::string embedding_to_string(const Embedding& emb);
Embedding embedding_from_string(const std::string& text, const Graph& g);

// {"outcome": "success" | "fail_near_f" | "fail_exhausted", "u_hat": …,
//  "v_l": …, "v_r": …, "halt_layer": …,
//  "layers": [{"i": …, "x": […], "xl": […], "xr": […]}, …]}
// with null for unset vertices.
nlohmann::json search_trace_to_json(const SearchTrace& trace);

}  // namespace hembed
