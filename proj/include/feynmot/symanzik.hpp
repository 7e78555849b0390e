#pragma once

#include "feynmot/graph.hpp"
#include "feynmot/polynomial.hpp"

#include <map>
#include <vector>

namespace feynmot {

/// Symmetric b1 x b1 matrix with (M)_{kr} = sum_i t_i eta_{ik} eta_{ir}.
using GraphMatrix = std::vector<std::vector<Polynomial>>;

/// Euclidean external momenta, one exact vector per leg id.
struct Momenta {
  std::map<std::size_t, std::vector<Rational>> p;

  /// Legs of g are assigned; vectors share a dimension; momenta sum to zero.
  void validate(const Graph& g) const;
  /// Total momentum entering at each vertex.
  std::vector<std::vector<Rational>> vertex_momenta(const Graph& g) const;
  /// A two-leg configuration with momenta (1) and (-1): squared flow 1.
  static Momenta unit_two_point(const Graph& g);
};

/// Edge sets (sorted ids) of all spanning trees of a connected graph.
std::vector<std::vector<std::size_t>> spanning_trees(const Graph& g);

/// First Symanzik polynomial as the spanning-tree sum of prod_{e not in T} t_e.
/// Variable t_{i+1} belongs to edge id i.
Polynomial psi_spanning_trees(const Graph& g);

GraphMatrix graph_matrix(const Graph& g, const LoopBasis& basis);

/// Fraction-free (Bareiss) determinant over the polynomial ring; det of the
/// empty matrix is 1.
Polynomial determinant(GraphMatrix m);

Polynomial psi_determinant(const Graph& g, const LoopBasis& basis);
Polynomial psi_determinant(const Graph& g);

/// Massless second Symanzik polynomial: sum over spanning 2-forests F of
/// s_F * prod_{e not in F} t_e, with s_F the squared momentum entering one tree.
RationalPolynomial second_symanzik(const Graph& g, const Momenta& momenta);

/// (prod_{e<n} t_e) * p(1/t_1, ..., 1/t_n); nullopt if some exponent exceeds 1.
std::optional<Polynomial> cremona_transform(const Polynomial& p, std::size_t n);

/// Psi_g(t) == (prod t_e) Psi_dual(1/t) with edges matched by id.
bool cremona_check(const Graph& g, const Graph& dual);

}  // namespace feynmot
