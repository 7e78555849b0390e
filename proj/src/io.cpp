#include "feynmot/io.hpp"

#include "feynmot/errors.hpp"

#include <fstream>

namespace feynmot {

namespace {

std::size_t as_index(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ValidationError(std::string("graph JSON: ") + what + " must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

GraphDocument graph_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("graph JSON must be an object");
  if (!j.contains("vertices")) throw ValidationError("graph JSON lacks \"vertices\"");
  GraphDocument doc;
  const std::size_t nv = as_index(j.at("vertices"), "vertices");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw ValidationError("graph JSON: edges must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("graph JSON: each edge is a pair [u, v]");
      edges.push_back({as_index(e[0], "edge endpoint"), as_index(e[1], "edge endpoint")});
    }
  }
  std::vector<std::size_t> legs;
  if (j.contains("legs")) {
    if (!j.at("legs").is_array()) throw ValidationError("graph JSON: legs must be an array");
    for (const auto& v : j.at("legs")) legs.push_back(as_index(v, "leg vertex"));
  }
  doc.graph = Graph(nv, std::move(edges), std::move(legs));
  if (j.contains("theory")) {
    const Json& t = j.at("theory");
    if (!t.is_object() || !t.contains("valences") || !t.at("valences").is_array())
      throw ValidationError("graph JSON: theory needs a \"valences\" array");
    Theory th;
    th.valences.clear();
    for (const auto& v : t.at("valences")) {
      if (!v.is_number_integer()) throw ValidationError("graph JSON: valences must be integers");
      th.valences.insert(v.get<int>());
    }
    if (t.contains("dimension")) {
      if (!t.at("dimension").is_number_integer()) throw ValidationError("graph JSON: dimension must be an integer");
      th.spacetime_dim = t.at("dimension").get<int>();
    }
    if (t.contains("mass_insertions")) {
      if (!t.at("mass_insertions").is_boolean()) throw ValidationError("graph JSON: mass_insertions must be a boolean");
      th.mass_insertions = t.at("mass_insertions").get<bool>();
    }
    th.validate();
    doc.theory = th;
  }
  return doc;
}

Json graph_to_json(const Graph& g, const std::optional<Theory>& theory) {
  Json j;
  j["vertices"] = g.num_vertices();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.source, e.target});
  j["edges"] = edges;
  j["legs"] = g.legs();
  if (theory) {
    j["theory"] = {{"valences", std::vector<int>(theory->valences.begin(), theory->valences.end())},
                   {"dimension", theory->spacetime_dim},
                   {"mass_insertions", theory->mass_insertions}};
  }
  return j;
}

GraphDocument read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("graph file '" + path + "' is not valid JSON: " + e.what());
  }
  return graph_from_json(j);
}

Json laurent_to_json(const LaurentSeries& s) {
  Json coeffs = Json::object();
  for (const auto& [k, c] : s.coefficients()) coeffs[std::to_string(k)] = to_string(c);
  return {{"precision", s.precision()}, {"coefficients", coeffs}, {"text", s.to_string()}};
}

}  // namespace feynmot
