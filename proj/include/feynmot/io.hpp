#pragma once

#include "feynmot/class_poly.hpp"
#include "feynmot/graph.hpp"
#include "feynmot/laurent.hpp"
#include "feynmot/polynomial.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace feynmot {

using Json = nlohmann::ordered_json;

struct GraphDocument {
  Graph graph;
  std::optional<Theory> theory;
};

/// {"vertices": V, "edges": [[u, v], ...], "legs": [v, ...], "theory": {"valences": [...]}}.
/// Edge order defines edge ids. Throws ValidationError on malformed input.
GraphDocument graph_from_json(const Json& j);
Json graph_to_json(const Graph& g, const std::optional<Theory>& theory = std::nullopt);

/// Reads a graph JSON file.
GraphDocument read_graph_file(const std::string& path);

/// [{"coeff": "p/q", "exponents": [..]}, ...] in graded-lex order.
template <class Coeff>
Json polynomial_terms_json(const SparsePolynomial<Coeff>& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"coeff", to_string(c)}, {"exponents", m.exponents()}});
  return terms;
}

/// {"precision": P, "coefficients": {"-2": "1/2", ...}}.
Json laurent_to_json(const LaurentSeries& s);

}  // namespace feynmot
