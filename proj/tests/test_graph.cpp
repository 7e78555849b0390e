#include "feynmot/corpus.hpp"
#include "feynmot/errors.hpp"
#include "feynmot/graph.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace feynmot {
namespace {

Graph relabel_vertices(const Graph& g, const std::vector<std::size_t>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.source], perm[e.target]});
  std::vector<std::size_t> legs;
  for (auto v : g.legs()) legs.push_back(perm[v]);
  return Graph(g.num_vertices(), edges, legs);
}

TEST(Graph, RejectsDanglingEndpoints) {
  EXPECT_THROW(Graph(2, {{0, 2}}), ValidationError);
  EXPECT_THROW(Graph(2, {{0, 1}}, {5}), ValidationError);
}

TEST(Graph, LoopNumbersOfGenerators) {
  for (std::size_t n = 2; n <= 8; ++n) EXPECT_EQ(loop_number(make_banana(n)), n - 1);
  for (std::size_t n = 3; n <= 8; ++n) EXPECT_EQ(loop_number(make_cycle(n)), 1u);
  for (std::size_t n = 3; n <= 7; ++n) EXPECT_EQ(loop_number(make_wheel(n)), n);
  EXPECT_EQ(loop_number(make_complete(4)), 3u);
  EXPECT_EQ(loop_number(make_complete(5)), 6u);
}

TEST(Graph, ConnectivityFlags) {
  EXPECT_TRUE(is_3_edge_connected(make_complete(4)));
  EXPECT_FALSE(is_3_edge_connected(make_cycle(4)));
  EXPECT_TRUE(is_1pi(make_cycle(4)));
  EXPECT_FALSE(is_1pi(Graph(3, {{0, 1}, {0, 1}, {1, 2}})));
  EXPECT_THROW(is_1pi(Graph(3, {{0, 1}})), ValidationError);
}

TEST(Graph, LoopNumberAdditiveOnDisjointUnion) {
  for (const auto& a : corpus())
    for (const auto& b : corpus()) {
      Graph u = disjoint_union(a.graph, b.graph);
      EXPECT_EQ(loop_number(u), loop_number(a.graph) + loop_number(b.graph));
      EXPECT_EQ(u.num_components(), a.graph.num_components() + b.graph.num_components());
    }
}

TEST(Graph, LoopBasisColumnsAreCycles) {
  std::mt19937_64 rng(7);
  for (const auto& f : corpus()) {
    const Graph& g = f.graph;
    IncidenceMatrix inc = incidence_matrix(g);
    for (int trial = 0; trial < 5; ++trial) {
      LoopBasis b = loop_basis(g, oracle::random_permutation(g.num_edges(), rng));
      ASSERT_EQ(b.num_loops(), loop_number(g)) << f.name;
      for (std::size_t l = 0; l < b.num_loops(); ++l)
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
          int flow = 0;
          for (std::size_t e = 0; e < g.num_edges(); ++e) flow += b.eta[e][l] * inc.eps[e][v];
          EXPECT_EQ(flow, 0) << f.name;
        }
    }
  }
}

TEST(Graph, AutomorphismsMatchVertexPermutationOracle) {
  for (const auto& f : corpus()) {
    if (f.graph.num_vertices() > 7) continue;
    EXPECT_EQ(automorphism_count(f.graph), oracle::automorphisms(f.graph)) << f.name;
  }
  Graph tadpole(1, {{0, 0}}, {0, 0});
  EXPECT_EQ(automorphism_count(tadpole), oracle::automorphisms(tadpole));
  Graph figure_eight(1, {{0, 0}, {0, 0}});
  EXPECT_EQ(automorphism_count(figure_eight), 8u);
}

TEST(Graph, KnownAutomorphismCounts) {
  EXPECT_EQ(automorphism_count(make_complete(4)), 24u);
  EXPECT_EQ(automorphism_count(make_banana(3)), 12u);
  EXPECT_EQ(automorphism_count(make_cycle(5)), 10u);
}

TEST(Graph, CanonicalKeyIsRelabelingInvariant) {
  std::mt19937_64 rng(11);
  for (const auto& f : corpus()) {
    const Graph& g = f.graph;
    for (int trial = 0; trial < 5; ++trial) {
      Graph h = relabel_vertices(g, oracle::random_permutation(g.num_vertices(), rng))
                    .with_edge_order(oracle::random_permutation(g.num_edges(), rng))
                    .with_reversed(oracle::random_flips(g.num_edges(), rng));
      EXPECT_EQ(canonical_key(h), canonical_key(g)) << f.name;
      EXPECT_EQ(automorphism_count(h), automorphism_count(g)) << f.name;
    }
  }
  EXPECT_NE(canonical_key(make_cycle(4)), canonical_key(make_banana(4)));
}

TEST(Graph, SubdivergenceCountInvariantUnderRelabeling) {
  std::mt19937_64 rng(3);
  for (const auto& f : corpus()) {
    if (!f.theory || f.graph.num_legs() == 0) continue;
    const auto base = subdivergences(f.graph, *f.theory);
    std::multiset<std::string> base_keys;
    for (const auto& s : base) base_keys.insert(canonical_key(quotient(f.graph, s)));
    for (int trial = 0; trial < 4; ++trial) {
      auto perm = oracle::random_permutation(f.graph.num_edges(), rng);
      Graph h = f.graph.with_edge_order(perm);
      auto subs = subdivergences(h, *f.theory);
      EXPECT_EQ(subs.size(), base.size()) << f.name;
      std::multiset<std::string> keys;
      for (const auto& s : subs) keys.insert(canonical_key(quotient(h, s)));
      EXPECT_EQ(keys, base_keys) << f.name;
    }
  }
}

TEST(Graph, DoubleBubbleHasOneSubdivergence) {
  const Fixture& f = fixture("double-bubble");
  auto subs = subdivergences(f.graph, *f.theory);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0].edges, (std::vector<std::size_t>{0, 1}));
  Graph q = quotient(f.graph, subs[0]);
  EXPECT_EQ(loop_number(q), 1u);
  EXPECT_TRUE(q.satisfies(*f.theory));
}

TEST(Graph, BubbleChainHasTwoDisjointSubdivergences) {
  const Fixture& f = fixture("bubble-chain");
  auto subs = subdivergences(f.graph, *f.theory);
  EXPECT_EQ(subs.size(), 2u);
}

TEST(Graph, ExtractComponentKeepsValences) {
  const Fixture& f = fixture("double-bubble");
  Graph piece = extract_component(f.graph, {0, 1});
  EXPECT_EQ(piece.num_vertices(), 2u);
  EXPECT_EQ(piece.num_edges(), 2u);
  EXPECT_TRUE(piece.satisfies(*f.theory));
}

TEST(Graph, TheoryValidation) {
  EXPECT_THROW((Theory{{}, 4, false}.validate()), ValidationError);
  EXPECT_THROW((Theory{{2}, 4, false}.validate()), ValidationError);
  EXPECT_TRUE((Theory{{4}, 4, true}.allows(2)));
  EXPECT_FALSE(Theory::phi4().allows(2));
}

TEST(Corpus, InventoryAndNames) {
  EXPECT_GE(corpus().size(), 10u);
  EXPECT_EQ(loop_number(fixture("banana:4").graph), 3u);
  EXPECT_TRUE(is_3_edge_connected(fixture("K4").graph));
  std::set<std::string> names;
  for (const auto& f : corpus()) {
    EXPECT_TRUE(names.insert(f.name).second) << f.name;
    EXPECT_LE(f.graph.num_edges(), 12u);
    if (f.theory) EXPECT_TRUE(f.graph.satisfies(*f.theory)) << f.name;
  }
  EXPECT_TRUE(resolve_graph_name("complete:6").has_value());
  EXPECT_THROW(resolve_graph_name("banana:40"), BudgetError);
  EXPECT_THROW(resolve_graph_name("cycle:x"), ValidationError);
  EXPECT_FALSE(resolve_graph_name("nonsense").has_value());
}

}  // namespace
}  // namespace feynmot
