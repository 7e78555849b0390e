#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace feynmot {

/// Interaction structure of a scalar theory: which vertex valences appear.
struct Theory {
  std::set<int> valences{3, 4};
  int spacetime_dim = 4;
  /// Admit 2-valent (mass-insertion) vertices and looping-edge quotients.
  bool mass_insertions = false;

  static Theory phi3();  // D = 6
  static Theory phi4();  // D = 4

  bool allows(int valence) const;
  /// Throws ValidationError if the valence set is empty or contains a value < 3.
  void validate() const;
};

/// Internal edge, oriented source -> target. source == target is a looping edge.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;

  bool is_loop() const { return source == target; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Feynman graph: vertices 0..V-1, internal edges (index = edge id) and
/// external legs (index = leg id, value = attachment vertex).
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertices, std::vector<Edge> edges, std::vector<std::size_t> legs = {});

  std::size_t num_vertices() const { return vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_legs() const { return legs_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& legs() const { return legs_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }

  /// Internal incidences (looping edges twice) plus external legs.
  int valence(std::size_t v) const;
  int leg_count(std::size_t v) const;

  /// Component label per vertex (labels 0..k-1 in order of lowest vertex).
  std::vector<std::size_t> component_labels() const;
  std::size_t num_components() const;
  bool is_connected() const { return num_components() <= 1; }
  bool has_looping_edge() const;

  /// True iff every vertex valence is legal in the theory.
  bool satisfies(const Theory& theory) const;
  /// Throws ValidationError naming the first illegal vertex.
  void validate(const Theory& theory) const;

  Graph with_legs(std::vector<std::size_t> legs) const;
  /// Same graph with the given edges flipped.
  Graph with_reversed(const std::vector<bool>& flip) const;
  /// Edges permuted so that new edge i is old edge order[i].
  Graph with_edge_order(const std::vector<std::size_t>& order) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> legs_;
};

/// Sorted set of edge ids of a parent graph.
struct Subgraph {
  std::vector<std::size_t> edges;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
  friend auto operator<=>(const Subgraph&, const Subgraph&) = default;
};

struct IncidenceMatrix {
  /// rows: internal edges, columns: vertices.
  std::vector<std::vector<int>> eps;
};

struct LoopBasis {
  /// eta[edge][loop] in {-1, 0, +1}.
  std::vector<std::vector<int>> eta;
  std::vector<std::size_t> tree_edges;
  std::size_t num_loops() const { return eta.empty() ? 0 : eta.front().size(); }
};

std::size_t loop_number(const Graph& g);

/// 2-edge-connected. Throws ValidationError on disconnected input.
bool is_1pi(const Graph& g);

/// No set of at most two internal edges disconnects g. Throws on looping edges
/// or disconnected input.
bool is_3_edge_connected(const Graph& g);

IncidenceMatrix incidence_matrix(const Graph& g);

/// Fundamental cycles of the DFS spanning forest started at the lowest vertex,
/// exploring incident edges in id order.
LoopBasis loop_basis(const Graph& g);
/// As above with incident edges explored in the given priority order (a
/// permutation of edge ids); columns follow the same order.
LoopBasis loop_basis(const Graph& g, const std::vector<std::size_t>& edge_order);

Graph disjoint_union(const Graph& a, const Graph& b);

/// Graph with the given subset of edges removed (vertices and legs kept).
Graph delete_edges(const Graph& g, const std::vector<std::size_t>& edges);

/// Connected components of the subgraph spanned by an edge subset: each entry
/// lists the edge ids of one component, ordered by lowest edge id.
std::vector<std::vector<std::size_t>> subgraph_components(const Graph& g, const Subgraph& sub);

/// One connected piece of g, as a standalone graph: vertices touched by
/// `edges`, relabelled in increasing order, carrying the original legs plus
/// one inherited leg per incidence of an edge outside `edges`.
Graph extract_component(const Graph& g, const std::vector<std::size_t>& edges);

/// Contract each component of `sub` to a single vertex; edges of `sub` are
/// removed. Throws ValidationError unless `sub` is a proper, nonempty edge set
/// whose components are 1PI with at least one loop.
Graph quotient(const Graph& g, const Subgraph& sub);

/// Proper subgraphs whose components are 1PI with b1 >= 1 and whose quotient
/// is a graph of the theory.
std::vector<Subgraph> subdivergences(const Graph& g, const Theory& theory);

/// Order of the automorphism group acting on vertices, internal edges
/// (looping edges may be flipped) and external legs. At most 10 vertices.
std::uint64_t automorphism_count(const Graph& g);

/// Isomorphism-invariant encoding (external legs unlabelled, orientation ignored).
std::string canonical_key(const Graph& g);
/// Representative of the isomorphism class whose key is canonical_key(g).
Graph canonical_form(const Graph& g);

Graph make_banana(std::size_t n);
/// Polygon with n >= 2 vertices; n = 2 is the 2-gon.
Graph make_cycle(std::size_t n);
/// Cycle on n rim vertices plus a hub joined to each of them.
Graph make_wheel(std::size_t n);
Graph make_complete(std::size_t n);

}  // namespace feynmot
