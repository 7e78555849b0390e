#include "feynmot/corpus.hpp"
#include "feynmot/errors.hpp"
#include "feynmot/symanzik.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace feynmot {
namespace {

Polynomial t(std::size_t i) { return Polynomial::variable(i); }

TEST(Symanzik, BananaThreeIsElementarySymmetric) {
  EXPECT_EQ(psi_spanning_trees(make_banana(3)), t(0) * t(1) + t(0) * t(2) + t(1) * t(2));
  EXPECT_EQ(psi_spanning_trees(make_banana(3)).to_string(), "t1*t2 + t1*t3 + t2*t3");
}

TEST(Symanzik, CycleIsLinear) {
  for (std::size_t n = 3; n <= 6; ++n) {
    Polynomial expected;
    for (std::size_t i = 0; i < n; ++i) expected += t(i);
    EXPECT_EQ(psi_spanning_trees(make_cycle(n)), expected);
  }
}

TEST(Symanzik, SpanningTreeCounts) {
  // Cayley: n^(n-2) spanning trees of K_n.
  EXPECT_EQ(spanning_trees(make_complete(4)).size(), 16u);
  EXPECT_EQ(spanning_trees(make_complete(5)).size(), 125u);
  EXPECT_EQ(spanning_trees(make_banana(6)).size(), 6u);
}

TEST(Symanzik, PsiIsHomogeneousOfLoopDegreeAndLinear) {
  for (const auto& f : corpus()) {
    Polynomial p = psi_spanning_trees(f.graph);
    ASSERT_TRUE(p.homogeneity_degree().has_value()) << f.name;
    EXPECT_EQ(*p.homogeneity_degree(), loop_number(f.graph)) << f.name;
    for (const auto& [m, c] : p.terms()) {
      EXPECT_EQ(c, 1) << f.name;
      for (auto e : m.exponents()) EXPECT_LE(e, 1u) << f.name;
    }
  }
}

TEST(Symanzik, SpanningTreesMatchDeletionContraction) {
  for (const auto& f : corpus()) EXPECT_EQ(psi_spanning_trees(f.graph), oracle::psi_deletion_contraction(f.graph)) << f.name;
  Graph with_loop(2, {{0, 1}, {0, 0}, {0, 1}});
  EXPECT_EQ(psi_spanning_trees(with_loop), oracle::psi_deletion_contraction(with_loop));
}

TEST(Symanzik, DeterminantIndependentOfBasisAndOrientation) {
  std::mt19937_64 rng(2024);
  for (const auto& f : corpus()) {
    const Polynomial trees = psi_spanning_trees(f.graph);
    for (int trial = 0; trial < 10; ++trial) {
      Graph g = f.graph.with_reversed(oracle::random_flips(f.graph.num_edges(), rng));
      LoopBasis basis = loop_basis(g, oracle::random_permutation(g.num_edges(), rng));
      EXPECT_EQ(psi_determinant(g, basis), trees) << f.name;
    }
  }
}

TEST(Symanzik, DisjointUnionFactorizes) {
  for (const char* a : {"banana:3", "K4", "cycle:4"})
    for (const char* b : {"banana:4", "double-bubble"}) {
      const Graph& ga = fixture(a).graph;
      const Graph& gb = fixture(b).graph;
      Graph u = disjoint_union(ga, gb);
      Polynomial expected = psi_spanning_trees(ga) * oracle::shift_variables(psi_spanning_trees(gb), ga.num_edges());
      // Psi itself requires connected input; the matrix of a spanning forest factorizes.
      EXPECT_THROW(psi_spanning_trees(u), ValidationError);
      EXPECT_EQ(determinant(graph_matrix(u, loop_basis(u))), expected);
    }
}

TEST(Symanzik, GraphMatrixIsSymmetricLinear) {
  const Graph& g = fixture("K4").graph;
  GraphMatrix m = graph_matrix(g, loop_basis(g));
  ASSERT_EQ(m.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(m[i][j], m[j][i]);
      if (!m[i][j].is_zero()) EXPECT_EQ(m[i][j].homogeneity_degree(), 1u);
    }
}

TEST(Symanzik, SecondSymanzikMatchesTwoForestEnumeration) {
  for (const auto& f : corpus()) {
    Graph g = f.graph.num_legs() == 2 ? f.graph : f.graph.with_legs({0, f.graph.num_vertices() - 1});
    RationalPolynomial P = second_symanzik(g, Momenta::unit_two_point(g));
    EXPECT_EQ(P, to_rational(oracle::second_symanzik_two_forests(g))) << f.name;
    ASSERT_TRUE(P.homogeneity_degree().has_value()) << f.name;
    EXPECT_EQ(*P.homogeneity_degree(), loop_number(g) + 1) << f.name;
  }
}

TEST(Symanzik, SecondSymanzikOfSunset) {
  const Graph& g = fixture("sunset").graph;
  EXPECT_EQ(second_symanzik(g, Momenta::unit_two_point(g)), to_rational(t(0) * t(1) * t(2)));
}

TEST(Symanzik, SecondSymanzikScalesWithMomentumSquared) {
  const Graph& g = fixture("two-loop-example").graph;
  Momenta p;
  p.p[0] = {Rational(3), Rational(1)};
  p.p[1] = {Rational(-3), Rational(-1)};
  RationalPolynomial unit = second_symanzik(g, Momenta::unit_two_point(g));
  EXPECT_EQ(second_symanzik(g, p), Rational(10) * unit);
}

TEST(Symanzik, MomentumConservationEnforced) {
  const Graph& g = fixture("sunset").graph;
  Momenta p;
  p.p[0] = {Rational(1)};
  p.p[1] = {Rational(2)};
  EXPECT_THROW(second_symanzik(g, p), ValidationError);
}

TEST(Symanzik, CremonaRelatesDualPairs) {
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_TRUE(cremona_check(make_banana(n), make_cycle(n))) << n;
    EXPECT_TRUE(cremona_check(make_cycle(n), make_banana(n))) << n;
  }
  EXPECT_FALSE(cremona_check(make_banana(4), make_banana(4)));
  EXPECT_THROW(cremona_check(make_banana(3), make_cycle(4)), ValidationError);
}

TEST(Symanzik, CremonaTransformInvolution) {
  Polynomial p = psi_spanning_trees(make_banana(4));
  auto once = cremona_transform(p, 4);
  ASSERT_TRUE(once.has_value());
  EXPECT_EQ(*once, psi_spanning_trees(make_cycle(4)));
  auto twice = cremona_transform(*once, 4);
  ASSERT_TRUE(twice.has_value());
  EXPECT_EQ(*twice, p);
}

}  // namespace
}  // namespace feynmot
