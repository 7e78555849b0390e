#pragma once

#include "feynmot/class_poly.hpp"
#include "feynmot/finite_field.hpp"
#include "feynmot/graph.hpp"
#include "feynmot/parallel.hpp"
#include "feynmot/polynomial.hpp"
#include "feynmot/symanzik.hpp"

#include <optional>
#include <vector>

namespace feynmot {

// ---- closed-form classes in Z[L] -------------------------------------------

/// Class of the projective graph hypersurface of the n-edge banana graph.
ClassPoly banana_class(unsigned n);
/// (L - 1) [X] + 1.
ClassPoly affine_cone_class(const ClassPoly& projective_class);
/// [P^n] = 1 + L + ... + L^n.
ClassPoly projective_space_class(unsigned n);
/// Union of coordinate hyperplanes in P^{n-1}: [P^{n-1}] - T^{n-1}.
ClassPoly coordinate_simplex_class(unsigned n);
/// Singular locus of the coordinate simplex in P^{n-1}: [Sigma_n] - n T^{n-2}.
ClassPoly simplex_singular_class(unsigned n);
/// Hyperplane t1 + ... + tn = 0 of P^{n-1} off the coordinate simplex.
ClassPoly hyperplane_torus_class(unsigned n);

// ---- point counts over F_q ---------------------------------------------------

/// #{t in F_q^n : poly(t) = 0}; poly may use fewer than n variables.
BigInt point_count_hypersurface(const Polynomial& poly, std::size_t n, const PrimeField& f,
                                std::size_t threads = default_threads());

/// Projective count #{t in (F_q^*)^n : poly(t) = 0} / (q - 1) of a homogeneous poly.
BigInt torus_zero_count(const Polynomial& poly, std::size_t n, const PrimeField& f,
                        std::size_t threads = default_threads());

/// Number of t in F_q^n with Psi_g(t) != 0, n = #edges.
BigInt motivic_feynman_rule(const Graph& g, const PrimeField& f, std::size_t threads = default_threads());

/// Projective class value [X_g](q) = (#affine zeros - 1) / (q - 1), for b1 >= 1.
BigInt projective_hypersurface_count(const Graph& g, const PrimeField& f, std::size_t threads = default_threads());

// ---- frames ----------------------------------------------------------------

/// Class of independent pairs (v1, v2), v_i in V_i.
ClassPoly frame_class_2(unsigned d1, unsigned d2, unsigned d12);

struct FrameDims3 {
  unsigned d1 = 0, d2 = 0, d3 = 0;
  unsigned d12 = 0, d13 = 0, d23 = 0;
  unsigned d123 = 0;
  /// dim(V1 + V2 + V3).
  unsigned span = 0;
};

/// Class of independent triples (v1, v2, v3), v_i in V_i.
ClassPoly frame_class_3(const FrameDims3& d);

/// Subspaces of F_q^ambient, each given by independent basis vectors.
struct SubspaceFamily {
  std::size_t ambient = 0;
  std::vector<std::vector<VectorModQ>> bases;

  /// Throws ValidationError on wrong lengths or dependent basis vectors.
  void validate(const PrimeField& f) const;
  std::size_t dim(std::size_t i) const { return bases.at(i).size(); }
  /// Basis of the intersection of the listed subspaces.
  std::vector<VectorModQ> intersection(const std::vector<std::size_t>& which, const PrimeField& f) const;
  std::size_t span_dim(const std::vector<std::size_t>& which, const PrimeField& f) const;
  /// Dimension data of a three-member family.
  FrameDims3 dims3(const PrimeField& f) const;
};

/// Exhaustive count of independent tuples (v_1, ..., v_k), v_i in V_i.
BigInt frame_count_bruteforce(const SubspaceFamily& fam, const PrimeField& f);

// ---- determinant hypersurface and the Upsilon map ---------------------------

/// Upsilon(t) = sum_i t_i C_i with C_i the rank-one matrix eta_i eta_i^T.
struct UpsilonMap {
  std::size_t loops = 0;
  std::vector<std::vector<std::vector<int>>> contributions;

  GraphMatrix matrix() const;
  /// Rank over Q of the map from edge variables to matrix entries.
  std::size_t rank() const;
  bool injective() const { return rank() == contributions.size(); }
};

/// Throws ValidationError on looping edges.
UpsilonMap upsilon_map(const Graph& g, const LoopBasis& basis);

/// Singular l x l matrices over F_q: q^{l^2} - prod_{k<l} (q^l - q^k).
BigInt det_hypersurface_count(unsigned l, const PrimeField& f);
BigInt det_hypersurface_count_bruteforce(unsigned l, const PrimeField& f, std::size_t threads = default_threads());

/// Linear equations cutting out the components L_1, L_2, ... of the boundary
/// divisor for (l, genus): first x_ij = 0 (i < j <= f-1, lexicographic), then
/// the row sums x_i1 + ... + x_i,f-1 = 0, with f = l - 2 genus + 1. Each row
/// has l^2 coefficients (row-major matrix entries).
std::vector<std::vector<int>> divisor_equations(unsigned l, unsigned genus);

/// Nonsingular matrices in the intersection of the components listed in I.
BigInt divisor_stratum_count(unsigned l, unsigned genus, const std::vector<std::size_t>& components,
                             const PrimeField& f, std::size_t threads = default_threads());

// ---- graph sums ----------------------------------------------------------

/// Connected vacuum graphs with N vertices whose valences lie in the theory,
/// one per isomorphism class (looping edges allowed).
std::vector<Graph> vacuum_graphs(unsigned N, const Theory& theory);

struct GraphSumResult {
  std::vector<std::pair<std::uint64_t, Rational>> values;  // (q, S_N(q))
  /// Ascending coefficients of the fitted polynomial when the fit held at the held-out prime.
  std::optional<std::vector<Rational>> polynomial;
  std::size_t graphs = 0;
};

/// sum over the family of [X_g](q) N! / #Aut(g), fitted through all but the
/// last prime and checked at the last one. The verdict is evidence only.
GraphSumResult graph_sum_family(const std::vector<Graph>& family, unsigned N, const std::vector<std::uint64_t>& primes,
                                std::size_t threads = default_threads());
GraphSumResult graph_sum_class(unsigned N, const Theory& theory, const std::vector<std::uint64_t>& primes,
                               std::size_t threads = default_threads());

/// Lagrange interpolation through (x_i, y_i); ascending coefficients.
std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace feynmot
