#pragma once

#include "feynmot/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace feynmot {

/// How a fixture's expected values are backed.
enum class Origin { Literature, Derived, Trivial };

std::string origin_name(Origin o);

struct Fixture {
  std::string name;
  Graph graph;
  /// Theory the graph is a Feynman graph of; none for graphs with 2-valent vertices.
  std::optional<Theory> theory;
  Origin origin = Origin::Derived;
  std::string description;
};

/// The built-in corpus, in a stable order.
const std::vector<Fixture>& corpus();
/// Throws ValidationError for unknown names.
const Fixture& fixture(const std::string& name);

/// Resolves "banana:n", "cycle:n", "wheel:n", "complete:n" or a corpus name.
/// Returns nullopt when the text is neither.
std::optional<Fixture> resolve_graph_name(const std::string& text);

}  // namespace feynmot
