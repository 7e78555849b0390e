#include "feynmot/graph.hpp"

#include "feynmot/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace feynmot {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t count_components(std::size_t vertices, const std::vector<Edge>& edges,
                             const std::vector<bool>* removed = nullptr) {
  UnionFind uf(vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (removed && (*removed)[e]) continue;
    uf.unite(edges[e].source, edges[e].target);
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < vertices; ++v)
    if (uf.find(v) == v) ++count;
  return count;
}

void require_connected(const Graph& g, const char* what) {
  if (!g.is_connected())
    throw ValidationError(std::string(what) + ": graph is disconnected");
}

}  // namespace

Theory Theory::phi3() { return Theory{{3}, 6, false}; }
Theory Theory::phi4() { return Theory{{4}, 4, false}; }

bool Theory::allows(int valence) const {
  if (valence == 2 && mass_insertions) return true;
  return valences.count(valence) > 0;
}

void Theory::validate() const {
  if (valences.empty()) throw ValidationError("theory has no interaction valences");
  for (int v : valences)
    if (v < 3) throw ValidationError("interaction valence " + std::to_string(v) + " is below 3");
  if (spacetime_dim <= 0) throw ValidationError("spacetime dimension must be positive");
}

Graph::Graph(std::size_t vertices, std::vector<Edge> edges, std::vector<std::size_t> legs)
    : vertices_(vertices), edges_(std::move(edges)), legs_(std::move(legs)) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].source >= vertices_ || edges_[e].target >= vertices_)
      throw ValidationError("edge " + std::to_string(e) + " references a missing vertex");
  }
  for (std::size_t l = 0; l < legs_.size(); ++l) {
    if (legs_[l] >= vertices_)
      throw ValidationError("leg " + std::to_string(l) + " references a missing vertex");
  }
}

int Graph::valence(std::size_t v) const {
  int val = leg_count(v);
  for (const Edge& e : edges_) {
    if (e.source == v) ++val;
    if (e.target == v) ++val;
  }
  return val;
}

int Graph::leg_count(std::size_t v) const {
  return static_cast<int>(std::count(legs_.begin(), legs_.end(), v));
}

std::vector<std::size_t> Graph::component_labels() const {
  UnionFind uf(vertices_);
  for (const Edge& e : edges_) uf.unite(e.source, e.target);
  std::vector<std::size_t> label(vertices_), root_label(vertices_, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < vertices_; ++v) {
    std::size_t r = uf.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::size_t Graph::num_components() const { return count_components(vertices_, edges_); }

bool Graph::has_looping_edge() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool Graph::satisfies(const Theory& theory) const {
  for (std::size_t v = 0; v < vertices_; ++v)
    if (!theory.allows(valence(v))) return false;
  return true;
}

void Graph::validate(const Theory& theory) const {
  theory.validate();
  for (std::size_t v = 0; v < vertices_; ++v) {
    if (!theory.allows(valence(v)))
      throw ValidationError("vertex " + std::to_string(v) + " has valence " +
                            std::to_string(valence(v)) + ", not allowed by the theory");
  }
}

Graph Graph::with_legs(std::vector<std::size_t> legs) const {
  return Graph(vertices_, edges_, std::move(legs));
}

Graph Graph::with_reversed(const std::vector<bool>& flip) const {
  std::vector<Edge> edges = edges_;
  for (std::size_t e = 0; e < edges.size() && e < flip.size(); ++e)
    if (flip[e]) std::swap(edges[e].source, edges[e].target);
  return Graph(vertices_, std::move(edges), legs_);
}

Graph Graph::with_edge_order(const std::vector<std::size_t>& order) const {
  if (order.size() != edges_.size()) throw ValidationError("edge order has wrong length");
  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (std::size_t id : order) edges.push_back(edges_.at(id));
  return Graph(vertices_, std::move(edges), legs_);
}

std::size_t loop_number(const Graph& g) {
  return g.num_edges() + g.num_components() - g.num_vertices();
}

bool is_1pi(const Graph& g) {
  require_connected(g, "is_1pi");
  std::vector<bool> removed(g.num_edges(), false);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).is_loop()) continue;
    removed[e] = true;
    bool split = count_components(g.num_vertices(), g.edges(), &removed) > 1;
    removed[e] = false;
    if (split) return false;
  }
  return true;
}

bool is_3_edge_connected(const Graph& g) {
  if (g.has_looping_edge()) throw ValidationError("is_3_edge_connected: looping edges not supported");
  require_connected(g, "is_3_edge_connected");
  const std::size_t n = g.num_edges();
  std::vector<bool> removed(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    removed[a] = true;
    if (count_components(g.num_vertices(), g.edges(), &removed) > 1) return false;
    for (std::size_t b = a + 1; b < n; ++b) {
      removed[b] = true;
      bool split = count_components(g.num_vertices(), g.edges(), &removed) > 1;
      removed[b] = false;
      if (split) return false;
    }
    removed[a] = false;
  }
  return true;
}

IncidenceMatrix incidence_matrix(const Graph& g) {
  IncidenceMatrix m;
  m.eps.assign(g.num_edges(), std::vector<int>(g.num_vertices(), 0));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (edge.is_loop()) continue;
    m.eps[e][edge.target] = 1;
    m.eps[e][edge.source] = -1;
  }
  return m;
}

LoopBasis loop_basis(const Graph& g) {
  std::vector<std::size_t> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  return loop_basis(g, order);
}

LoopBasis loop_basis(const Graph& g, const std::vector<std::size_t>& edge_order) {
  const std::size_t nv = g.num_vertices();
  const std::size_t ne = g.num_edges();
  if (edge_order.size() != ne) throw ValidationError("loop_basis: edge order has wrong length");
  std::vector<std::size_t> rank(ne, SIZE_MAX);
  for (std::size_t i = 0; i < ne; ++i) {
    if (edge_order[i] >= ne || rank[edge_order[i]] != SIZE_MAX)
      throw ValidationError("loop_basis: edge order is not a permutation");
    rank[edge_order[i]] = i;
  }

  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t id : edge_order) {
    const Edge& e = g.edge(id);
    incident[e.source].push_back(id);
    if (!e.is_loop()) incident[e.target].push_back(id);
  }

  std::vector<bool> visited(nv, false), is_tree(ne, false);
  std::vector<std::size_t> parent_edge(nv, SIZE_MAX), depth(nv, 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    visited[v] = true;
    for (std::size_t id : incident[v]) {
      const Edge& e = g.edge(id);
      std::size_t w = e.source == v ? e.target : e.source;
      if (visited[w]) continue;
      is_tree[id] = true;
      parent_edge[w] = id;
      depth[w] = depth[v] + 1;
      dfs(w);
    }
  };
  for (std::size_t v = 0; v < nv; ++v)
    if (!visited[v]) dfs(v);

  LoopBasis basis;
  basis.eta.assign(ne, {});
  for (std::size_t id : edge_order) {
    if (is_tree[id]) basis.tree_edges.push_back(id);
  }
  std::sort(basis.tree_edges.begin(), basis.tree_edges.end());

  for (std::size_t id : edge_order) {
    if (is_tree[id]) continue;
    std::vector<int> column(ne, 0);
    column[id] = 1;
    const Edge& e = g.edge(id);
    // Close the cycle: walk the tree from target back to source.
    std::size_t a = e.target, b = e.source;
    std::vector<std::pair<std::size_t, int>> tail;  // steps on the source side, reversed later
    auto step_up = [&](std::size_t x, bool forward) {
      std::size_t pe = parent_edge[x];
      const Edge& te = g.edge(pe);
      std::size_t up = te.source == x ? te.target : te.source;
      // forward: travelling x -> up; otherwise up -> x.
      int sign = forward ? (te.source == x ? 1 : -1) : (te.source == up ? 1 : -1);
      return std::make_pair(up, std::make_pair(pe, sign));
    };
    while (a != b) {
      if (depth[a] >= depth[b]) {
        auto [up, step] = step_up(a, true);
        column[step.first] = step.second;
        a = up;
      } else {
        auto [up, step] = step_up(b, false);
        tail.push_back(step);
        b = up;
      }
    }
    for (auto& [pe, sign] : tail) column[pe] = sign;
    for (std::size_t r = 0; r < ne; ++r) basis.eta[r].push_back(column[r]);
  }
  return basis;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const std::size_t shift = a.num_vertices();
  for (const Edge& e : b.edges()) edges.push_back({e.source + shift, e.target + shift});
  std::vector<std::size_t> legs = a.legs();
  for (std::size_t v : b.legs()) legs.push_back(v + shift);
  return Graph(a.num_vertices() + b.num_vertices(), std::move(edges), std::move(legs));
}

Graph delete_edges(const Graph& g, const std::vector<std::size_t>& edges) {
  std::vector<bool> drop(g.num_edges(), false);
  for (std::size_t e : edges) drop.at(e) = true;
  std::vector<Edge> kept;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (!drop[e]) kept.push_back(g.edge(e));
  return Graph(g.num_vertices(), std::move(kept), g.legs());
}

std::vector<std::vector<std::size_t>> subgraph_components(const Graph& g, const Subgraph& sub) {
  UnionFind uf(g.num_vertices());
  for (std::size_t e : sub.edges) uf.unite(g.edge(e).source, g.edge(e).target);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> index_of_root(g.num_vertices(), SIZE_MAX);
  std::vector<std::size_t> sorted = sub.edges;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t e : sorted) {
    std::size_t r = uf.find(g.edge(e).source);
    if (index_of_root[r] == SIZE_MAX) {
      index_of_root[r] = comps.size();
      comps.emplace_back();
    }
    comps[index_of_root[r]].push_back(e);
  }
  return comps;
}

Graph extract_component(const Graph& g, const std::vector<std::size_t>& edges) {
  std::vector<bool> in_edges(g.num_edges(), false);
  std::vector<bool> in_vertex(g.num_vertices(), false);
  for (std::size_t e : edges) {
    in_edges.at(e) = true;
    in_vertex[g.edge(e).source] = true;
    in_vertex[g.edge(e).target] = true;
  }
  std::vector<std::size_t> relabel(g.num_vertices(), SIZE_MAX);
  std::size_t nv = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (in_vertex[v]) relabel[v] = nv++;
  std::vector<Edge> sub_edges;
  std::vector<std::size_t> legs;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (in_edges[e]) {
      sub_edges.push_back({relabel[edge.source], relabel[edge.target]});
      continue;
    }
    if (in_vertex[edge.source]) legs.push_back(relabel[edge.source]);
    if (in_vertex[edge.target]) legs.push_back(relabel[edge.target]);
  }
  for (std::size_t v : g.legs())
    if (in_vertex[v]) legs.push_back(relabel[v]);
  std::sort(legs.begin(), legs.end());
  return Graph(nv, std::move(sub_edges), std::move(legs));
}

namespace {

// Components of sub; throws unless each is 1PI with at least one loop.
std::vector<std::vector<std::size_t>> checked_components(const Graph& g, const Subgraph& sub) {
  auto comps = subgraph_components(g, sub);
  for (const auto& comp : comps) {
    Graph piece = extract_component(g, comp);
    if (loop_number(piece) == 0 || !is_1pi(piece))
      throw ValidationError("subgraph component is not 1PI with a loop");
  }
  return comps;
}

Graph contract(const Graph& g, const Subgraph& sub, const std::vector<std::vector<std::size_t>>& comps) {
  UnionFind uf(g.num_vertices());
  for (const auto& comp : comps)
    for (std::size_t e : comp) uf.unite(g.edge(e).source, g.edge(e).target);
  std::vector<bool> in_sub(g.num_edges(), false);
  for (std::size_t e : sub.edges) in_sub[e] = true;
  std::vector<std::size_t> relabel(g.num_vertices(), SIZE_MAX), root_label(g.num_vertices(), SIZE_MAX);
  std::size_t nv = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::size_t r = uf.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = nv++;
    relabel[v] = root_label[r];
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (in_sub[e]) continue;
    edges.push_back({relabel[g.edge(e).source], relabel[g.edge(e).target]});
  }
  std::vector<std::size_t> legs;
  for (std::size_t v : g.legs()) legs.push_back(relabel[v]);
  return Graph(nv, std::move(edges), std::move(legs));
}

Subgraph normalized(const Graph& g, const Subgraph& sub) {
  Subgraph s = sub;
  std::sort(s.edges.begin(), s.edges.end());
  if (std::adjacent_find(s.edges.begin(), s.edges.end()) != s.edges.end())
    throw ValidationError("subgraph lists an edge twice");
  for (std::size_t e : s.edges)
    if (e >= g.num_edges()) throw ValidationError("subgraph references a missing edge");
  if (s.edges.empty() || s.edges.size() == g.num_edges())
    throw ValidationError("subgraph must be a proper nonempty edge subset");
  return s;
}

}  // namespace

Graph quotient(const Graph& g, const Subgraph& sub) {
  Subgraph s = normalized(g, sub);
  auto comps = checked_components(g, s);
  return contract(g, s, comps);
}

std::vector<Subgraph> subdivergences(const Graph& g, const Theory& theory) {
  theory.validate();
  require_connected(g, "subdivergences");
  const std::size_t n = g.num_edges();
  if (n > 24) throw BudgetError("subdivergences: more than 24 edges");
  std::vector<Subgraph> result;
  if (n < 2) return result;

  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    Subgraph sub;
    for (std::size_t e = 0; e < n; ++e)
      if (mask >> e & 1u) sub.edges.push_back(e);
    auto comps = subgraph_components(g, sub);
    bool ok = true;
    std::vector<std::size_t> comp_of_vertex(g.num_vertices(), SIZE_MAX);
    for (std::size_t c = 0; c < comps.size() && ok; ++c) {
      Graph piece = extract_component(g, comps[c]);
      if (loop_number(piece) == 0 || !is_1pi(piece)) {
        ok = false;
        break;
      }
      // Contracted vertex valence equals the external legs of the piece.
      if (!theory.allows(static_cast<int>(piece.num_legs()))) ok = false;
      for (std::size_t e : comps[c]) {
        comp_of_vertex[g.edge(e).source] = c;
        comp_of_vertex[g.edge(e).target] = c;
      }
    }
    if (!ok) continue;
    if (!theory.mass_insertions) {
      for (std::size_t e = 0; e < n && ok; ++e) {
        if (mask >> e & 1u) continue;
        const Edge& edge = g.edge(e);
        if (edge.is_loop()) continue;
        std::size_t cs = comp_of_vertex[edge.source], ct = comp_of_vertex[edge.target];
        if (cs != SIZE_MAX && cs == ct) ok = false;  // would become a looping edge
      }
    }
    if (ok) result.push_back(std::move(sub));
  }
  return result;
}

namespace {

struct VertexSignature {
  int valence, legs, loops;
  friend auto operator<=>(const VertexSignature&, const VertexSignature&) = default;
};

struct Structure {
  std::size_t n = 0;
  std::vector<std::vector<int>> mult;  // off-diagonal multiplicities, diagonal = loops
  std::vector<int> legs;
  std::vector<VertexSignature> sig;
};

Structure structure_of(const Graph& g) {
  Structure s;
  s.n = g.num_vertices();
  s.mult.assign(s.n, std::vector<int>(s.n, 0));
  s.legs.assign(s.n, 0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      ++s.mult[e.source][e.source];
    } else {
      ++s.mult[e.source][e.target];
      ++s.mult[e.target][e.source];
    }
  }
  for (std::size_t v : g.legs()) ++s.legs[v];
  for (std::size_t v = 0; v < s.n; ++v) s.sig.push_back({g.valence(v), s.legs[v], s.mult[v][v]});
  return s;
}

// Calls visit(perm) for every vertex ordering that lists signature classes in
// increasing order, permuting freely inside each class. perm[pos] = vertex.
void for_each_class_permutation(const Structure& s, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> order(s.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.sig[a] < s.sig[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < s.n;) {
    std::size_t j = i;
    while (j < s.n && !(s.sig[order[i]] < s.sig[order[j]])) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      visit(order);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(0);
}

std::vector<int> encode(const Structure& s, const std::vector<std::size_t>& perm) {
  std::vector<int> code;
  code.reserve(s.n * (s.n + 3) / 2 + 1);
  code.push_back(static_cast<int>(s.n));
  for (std::size_t i = 0; i < s.n; ++i) {
    code.push_back(s.legs[perm[i]]);
    code.push_back(s.mult[perm[i]][perm[i]]);
  }
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) code.push_back(s.mult[perm[i]][perm[j]]);
  return code;
}

std::uint64_t factorial64(int n) {
  std::uint64_t r = 1;
  for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
  return r;
}

std::pair<std::vector<int>, std::vector<std::size_t>> minimal_encoding(const Graph& g) {
  if (g.num_vertices() > 10) throw BudgetError("canonical form limited to 10 vertices");
  Structure s = structure_of(g);
  std::vector<int> best;
  std::vector<std::size_t> best_perm;
  for_each_class_permutation(s, [&](const std::vector<std::size_t>& perm) {
    std::vector<int> code = encode(s, perm);
    if (best.empty() || code < best) {
      best = std::move(code);
      best_perm = perm;
    }
  });
  if (s.n == 0) best = encode(s, {});
  return {best, best_perm};
}

}  // namespace

std::uint64_t automorphism_count(const Graph& g) {
  if (g.num_vertices() > 10) throw BudgetError("automorphism_count: more than 10 vertices");
  Structure s = structure_of(g);
  // Vertex automorphisms are the class-respecting orderings that reproduce
  // the encoding of one fixed ordering.
  std::uint64_t vertex_maps = 0;
  std::vector<std::size_t> order(s.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.sig[a] < s.sig[b]; });
  std::vector<int> base = encode(s, order);
  for_each_class_permutation(s, [&](const std::vector<std::size_t>& perm) {
    if (encode(s, perm) == base) ++vertex_maps;
  });
  std::uint64_t edge_factor = 1;
  for (std::size_t u = 0; u < s.n; ++u) {
    edge_factor *= factorial64(s.mult[u][u]) << s.mult[u][u];
    edge_factor *= factorial64(s.legs[u]);
    for (std::size_t v = u + 1; v < s.n; ++v) edge_factor *= factorial64(s.mult[u][v]);
  }
  return vertex_maps * edge_factor;
}

std::string canonical_key(const Graph& g) {
  auto [code, perm] = minimal_encoding(g);
  std::ostringstream out;
  for (std::size_t i = 0; i < code.size(); ++i) out << (i ? "." : "") << code[i];
  return out.str();
}

Graph canonical_form(const Graph& g) {
  auto [code, perm] = minimal_encoding(g);
  Structure s = structure_of(g);
  std::vector<Edge> edges;
  std::vector<std::size_t> legs;
  for (std::size_t i = 0; i < s.n; ++i) {
    for (int k = 0; k < s.legs[perm[i]]; ++k) legs.push_back(i);
    for (int k = 0; k < s.mult[perm[i]][perm[i]]; ++k) edges.push_back({i, i});
    for (std::size_t j = i + 1; j < s.n; ++j)
      for (int k = 0; k < s.mult[perm[i]][perm[j]]; ++k) edges.push_back({i, j});
  }
  return Graph(s.n, std::move(edges), std::move(legs));
}

Graph make_banana(std::size_t n) {
  if (n < 2) throw ValidationError("banana graphs need n >= 2");
  return Graph(2, std::vector<Edge>(n, Edge{0, 1}));
}

Graph make_cycle(std::size_t n) {
  if (n < 2) throw ValidationError("cycle graphs need n >= 2");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, std::move(edges));
}

Graph make_wheel(std::size_t n) {
  if (n < 3) throw ValidationError("wheel graphs need n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  for (std::size_t i = 0; i < n; ++i) edges.push_back({n, i});
  return Graph(n + 1, std::move(edges));
}

Graph make_complete(std::size_t n) {
  if (n < 1) throw ValidationError("complete graphs need n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

}  // namespace feynmot
