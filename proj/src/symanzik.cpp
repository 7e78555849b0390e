#include "feynmot/symanzik.hpp"

#include <functional>
#include <numeric>

namespace feynmot {

namespace {

// Edge subsets of size k of a graph that are forests; visit(edges) for each.
void for_each_forest(const Graph& g, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = g.num_edges();
  std::vector<std::size_t> parent(g.num_vertices());
  std::vector<std::size_t> chosen;
  // Backtracking with an explicit union-find snapshot per level keeps this simple.
  std::function<void(std::size_t, std::vector<std::size_t>&)> rec = [&](std::size_t start, std::vector<std::size_t>& uf) {
    if (chosen.size() == k) {
      visit(chosen);
      return;
    }
    if (n - start < k - chosen.size()) return;
    for (std::size_t e = start; e < n; ++e) {
      if (n - e < k - chosen.size()) return;
      const Edge& edge = g.edge(e);
      auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x];
        return x;
      };
      std::size_t a = find(edge.source), b = find(edge.target);
      if (a == b) continue;
      std::vector<std::size_t> next = uf;
      next[std::max(a, b)] = std::min(a, b);
      chosen.push_back(e);
      rec(e + 1, next);
      chosen.pop_back();
    }
  };
  std::iota(parent.begin(), parent.end(), 0);
  rec(0, parent);
}

}  // namespace

void Momenta::validate(const Graph& g) const {
  std::size_t dim = SIZE_MAX;
  for (const auto& [leg, vec] : p) {
    if (leg >= g.num_legs()) throw ValidationError("momentum given for missing leg " + std::to_string(leg));
    if (dim == SIZE_MAX) dim = vec.size();
    if (vec.size() != dim) throw ValidationError("momentum vectors have different dimensions");
  }
  if (!p.empty() && p.size() != g.num_legs()) throw ValidationError("every external leg needs a momentum");
  if (dim == SIZE_MAX) return;
  for (std::size_t i = 0; i < dim; ++i) {
    Rational sum = 0;
    for (const auto& [leg, vec] : p) sum += vec[i];
    if (sum != 0) throw ValidationError("external momenta are not conserved");
  }
}

std::vector<std::vector<Rational>> Momenta::vertex_momenta(const Graph& g) const {
  std::size_t dim = p.empty() ? 0 : p.begin()->second.size();
  std::vector<std::vector<Rational>> at(g.num_vertices(), std::vector<Rational>(dim, Rational(0)));
  for (const auto& [leg, vec] : p)
    for (std::size_t i = 0; i < dim; ++i) at[g.legs().at(leg)][i] += vec[i];
  return at;
}

Momenta Momenta::unit_two_point(const Graph& g) {
  if (g.num_legs() != 2) throw ValidationError("two-point momenta need exactly two legs");
  Momenta m;
  m.p[0] = {Rational(1)};
  m.p[1] = {Rational(-1)};
  return m;
}

std::vector<std::vector<std::size_t>> spanning_trees(const Graph& g) {
  if (!g.is_connected()) throw ValidationError("spanning trees: graph is disconnected");
  std::vector<std::vector<std::size_t>> trees;
  if (g.num_vertices() == 0) return trees;
  for_each_forest(g, g.num_vertices() - 1, [&](const std::vector<std::size_t>& t) { trees.push_back(t); });
  return trees;
}

Polynomial psi_spanning_trees(const Graph& g) {
  Polynomial psi;
  const std::size_t n = g.num_edges();
  for (const auto& tree : spanning_trees(g)) {
    std::vector<std::uint32_t> exps(n, 1);
    for (std::size_t e : tree) exps[e] = 0;
    psi.add_term(Monomial(std::move(exps)), BigInt(1));
  }
  return psi;
}

GraphMatrix graph_matrix(const Graph& g, const LoopBasis& basis) {
  const std::size_t l = basis.num_loops();
  GraphMatrix m(l, std::vector<Polynomial>(l));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    for (std::size_t k = 0; k < l; ++k) {
      if (!basis.eta[i][k]) continue;
      for (std::size_t r = 0; r < l; ++r) {
        int w = basis.eta[i][k] * basis.eta[i][r];
        if (w) m[k][r].add_term(Monomial::variable(i), BigInt(w));
      }
    }
  }
  return m;
}

Polynomial determinant(GraphMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(BigInt(1));
  int sign = 1;
  Polynomial previous(BigInt(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Polynomial();
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_divide(num, previous);
      }
      m[i][k] = Polynomial();
    }
    previous = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

Polynomial psi_determinant(const Graph& g, const LoopBasis& basis) {
  if (!g.is_connected()) throw ValidationError("psi_determinant: graph is disconnected");
  return determinant(graph_matrix(g, basis));
}

Polynomial psi_determinant(const Graph& g) { return psi_determinant(g, loop_basis(g)); }

namespace {

// Graph induced on a vertex subset (edges with both ends inside).
Graph induced(const Graph& g, const std::vector<bool>& inside) {
  std::vector<std::size_t> relabel(g.num_vertices(), SIZE_MAX);
  std::size_t nv = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (inside[v]) relabel[v] = nv++;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (inside[e.source] && inside[e.target]) edges.push_back({relabel[e.source], relabel[e.target]});
  return Graph(nv, std::move(edges));
}

// Psi of the induced subgraph, re-expressed in the parent's edge variables.
Polynomial induced_psi(const Graph& g, const std::vector<bool>& inside) {
  std::vector<std::size_t> parent_id;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (inside[g.edge(e).source] && inside[g.edge(e).target]) parent_id.push_back(e);
  Polynomial local = psi_spanning_trees(induced(g, inside));
  Polynomial mapped;
  for (const auto& [m, c] : local.terms()) {
    std::vector<std::uint32_t> exps(g.num_edges(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) exps[parent_id[i]] = m[i];
    mapped.add_term(Monomial(std::move(exps)), c);
  }
  return mapped;
}

}  // namespace

RationalPolynomial second_symanzik(const Graph& g, const Momenta& momenta) {
  if (!g.is_connected()) throw ValidationError("second_symanzik: graph is disconnected");
  momenta.validate(g);
  const std::size_t nv = g.num_vertices();
  if (nv > 24) throw BudgetError("second_symanzik: more than 24 vertices");
  RationalPolynomial result;
  if (nv < 2 || momenta.p.empty()) return result;
  auto at = momenta.vertex_momenta(g);
  const std::size_t dim = at.front().size();

  // Bipartitions with vertex 0 on side one; both sides must be connected.
  const std::uint64_t limit = std::uint64_t{1} << (nv - 1);
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    std::vector<bool> side(nv, false);
    side[0] = true;
    for (std::size_t v = 1; v < nv; ++v) side[v] = (bits >> (v - 1)) & 1u;
    if (std::all_of(side.begin(), side.end(), [](bool b) { return b; })) continue;
    std::vector<bool> other(nv);
    for (std::size_t v = 0; v < nv; ++v) other[v] = !side[v];
    if (!induced(g, side).is_connected() || !induced(g, other).is_connected()) continue;

    Rational s = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational flow = 0;
      for (std::size_t v = 0; v < nv; ++v)
        if (side[v]) flow += at[v][i];
      s += flow * flow;
    }
    if (s == 0) continue;
    std::vector<std::uint32_t> cut(g.num_edges(), 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (side[g.edge(e).source] != side[g.edge(e).target]) cut[e] = 1;
    Polynomial term = Polynomial::term(Monomial(std::move(cut)), BigInt(1)) * induced_psi(g, side) *
                      induced_psi(g, other);
    result += s * to_rational(term);
  }
  return result;
}

std::optional<Polynomial> cremona_transform(const Polynomial& p, std::size_t n) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    if (m.size() > n) return std::nullopt;
    std::vector<std::uint32_t> exps(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] > 1) return std::nullopt;
      exps[i] -= m[i];
    }
    out.add_term(Monomial(std::move(exps)), c);
  }
  return out;
}

bool cremona_check(const Graph& g, const Graph& dual) {
  if (g.num_edges() != dual.num_edges())
    throw ValidationError("cremona_check: graph and dual have different edge counts");
  auto transformed = cremona_transform(psi_spanning_trees(dual), g.num_edges());
  return transformed && *transformed == psi_spanning_trees(g);
}

}  // namespace feynmot
