#include "feynmot/corpus.hpp"
#include "feynmot/errors.hpp"
#include "feynmot/hopf.hpp"
#include "feynmot/renorm.hpp"

#include <gtest/gtest.h>

#include <random>

namespace feynmot {
namespace {

// Corpus graphs that are generators of the algebra for their own theory.
std::vector<const Fixture*> generator_fixtures() {
  std::vector<const Fixture*> out;
  for (const auto& f : corpus())
    if (f.theory && is_1pi(f.graph) && loop_number(f.graph) >= 1) out.push_back(&f);
  return out;
}

HopfElement scalar(const BigInt& c) {
  HopfElement e;
  if (c != 0) e[GraphMonomial{}] = c;
  return e;
}

// All monomials of degree <= 3 in the generators already interned.
std::vector<GraphMonomial> low_degree_monomials(HopfAlgebra& h) {
  std::vector<GraphMonomial> out;
  const std::size_t n = h.num_generators();
  for (std::size_t a = 0; a < n; ++a) {
    out.push_back({a});
    for (std::size_t b = a; b < n; ++b) {
      GraphMonomial ab = multiply(GraphMonomial{a}, GraphMonomial{b});
      if (h.degree(ab) <= 3) out.push_back(ab);
      for (std::size_t c = b; c < n; ++c) {
        GraphMonomial abc = multiply(ab, GraphMonomial{c});
        if (h.degree(abc) <= 3) out.push_back(abc);
      }
    }
  }
  return out;
}

TEST(Hopf, InternRejectsNonGenerators) {
  HopfAlgebra h(Theory::phi4());
  EXPECT_THROW(h.intern(Graph(3, {{0, 1}, {1, 2}}, {0, 0, 0, 2, 2, 2})), ValidationError);
  EXPECT_THROW(h.intern(Graph(3, {{0, 1}, {0, 1}, {1, 2}})), ValidationError);
  EXPECT_THROW(h.intern(fixture("K4").graph), ValidationError);
  const Graph& g = fixture("double-bubble").graph;
  EXPECT_EQ(h.intern(g), h.intern(g.with_edge_order({3, 2, 1, 0})));
}

TEST(Hopf, DoubleBubbleCoproductAndAntipode) {
  const Fixture& f = fixture("double-bubble");
  HopfAlgebra h(*f.theory);
  GraphMonomial G = h.generator(f.graph);
  GraphMonomial g = h.generator(fixture("phi4-bubble").graph);
  HopfTensor expected{{{G, {}}, 1}, {{{}, G}, 1}, {{g, g}, 1}};
  EXPECT_EQ(h.coproduct(G), expected);
  HopfElement s = h.antipode(G);
  HopfElement s_expected{{G, -1}, {multiply(g, g), 1}};
  EXPECT_EQ(s, s_expected);
}

TEST(Hopf, BubbleChainCoproduct) {
  const Fixture& f = fixture("bubble-chain");
  HopfAlgebra h(*f.theory);
  GraphMonomial G = h.generator(f.graph);
  GraphMonomial g = h.generator(fixture("phi4-bubble").graph);
  // Each bubble is a subdivergence; their union is the whole graph, not a proper subgraph.
  HopfTensor reduced = h.reduced_coproduct(G);
  HopfTensor expected{{{g, g}, 2}};
  EXPECT_EQ(reduced, expected);
}

TEST(Hopf, CoassociativityOnCorpus) {
  for (const Fixture* f : generator_fixtures()) {
    HopfAlgebra h(*f->theory);
    h.intern(f->graph);
    for (const auto& m : low_degree_monomials(h)) {
      HopfElement x{{m, 1}};
      EXPECT_EQ(h.left_iterated_coproduct(x), h.right_iterated_coproduct(x)) << f->name << " " << h.to_string(m);
    }
  }
}

TEST(Hopf, AntipodeIsConvolutionInverse) {
  for (const Fixture* f : generator_fixtures()) {
    HopfAlgebra h(*f->theory);
    h.intern(f->graph);
    for (const auto& m : low_degree_monomials(h)) {
      HopfElement x{{m, 1}};
      EXPECT_EQ(h.antipode_left(x), scalar(counit(x))) << f->name << " " << h.to_string(m);
      EXPECT_EQ(h.antipode_right(x), scalar(counit(x))) << f->name << " " << h.to_string(m);
    }
    EXPECT_EQ(h.antipode_left(unit_element()), unit_element());
  }
}

TEST(Hopf, AntipodeIsMultiplicative) {
  const Fixture& a = fixture("double-bubble");
  HopfAlgebra h(*a.theory);
  GraphMonomial G = h.generator(a.graph), B = h.generator(fixture("bubble-chain").graph);
  HopfElement lhs = h.antipode(multiply(G, B));
  HopfElement rhs = multiply(h.antipode(G), h.antipode(B));
  EXPECT_EQ(lhs, rhs);
}

TEST(Hopf, GradingsAgreeOnCoproductTerms) {
  for (Grading grading : {Grading::LoopNumber, Grading::InternalLines}) {
    const Fixture& f = fixture("bubble-chain-3");
    HopfAlgebra h(*f.theory, grading);
    GraphMonomial G = h.generator(f.graph);
    for (const auto& [k, c] : h.coproduct(G)) {
      if (grading == Grading::LoopNumber) EXPECT_EQ(h.degree(k.first) + h.degree(k.second), h.degree(G));
      else EXPECT_LE(h.degree(k.first) + h.degree(k.second), h.degree(G));
    }
  }
}

// ---- Laurent series and the Rota-Baxter operator ---------------------------

LaurentSeries random_series(std::mt19937_64& rng, LaurentWindow w) {
  LaurentSeries s(w);
  int low = -static_cast<int>(rng() % 4);
  int high = static_cast<int>(rng() % 5);
  for (int k = low; k <= high; ++k) s.set(k, Rational(static_cast<long long>(rng() % 11) - 5, 1 + rng() % 4));
  return s;
}

TEST(Laurent, RotaBaxterIdentityOnRandomSeries) {
  std::mt19937_64 rng(12345);
  LaurentWindow w{12, 12};
  for (int trial = 0; trial < 100; ++trial) {
    LaurentSeries x = random_series(rng, w), y = random_series(rng, w);
    LaurentSeries lhs = rota_baxter_T(x) * rota_baxter_T(y);
    LaurentSeries rhs = rota_baxter_T(x * rota_baxter_T(y)) + rota_baxter_T(rota_baxter_T(x) * y) - rota_baxter_T(x * y);
    EXPECT_EQ(lhs, rhs) << x.to_string() << " ; " << y.to_string();
    EXPECT_TRUE(lhs.is_pure_polar());
  }
}

TEST(Laurent, ProjectionsSplitSeries) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentSeries x = random_series(rng, {});
    EXPECT_EQ(x.polar_part() + x.regular_part(), x);
    EXPECT_TRUE(x.polar_part().is_pure_polar());
    EXPECT_TRUE(x.regular_part().is_regular());
    EXPECT_EQ(rota_baxter_T(rota_baxter_T(x)), rota_baxter_T(x));
  }
}

TEST(Laurent, PrecisionTracking) {
  LaurentWindow w{4, 3};
  LaurentSeries inv = LaurentSeries::monomial(1, -1, w);
  LaurentSeries e = LaurentSeries::exp_linear(2, w);
  EXPECT_EQ(e.precision(), 4);
  EXPECT_EQ(e.coeff(3), Rational(4, 3));
  EXPECT_THROW(e.coeff(4), TruncationError);
  LaurentSeries p = inv * e;
  EXPECT_EQ(p.precision(), 3);
  EXPECT_EQ(p.coeff(-1), 1);
  EXPECT_EQ(p.coeff(2), Rational(4, 3));
  EXPECT_THROW(inv * inv * inv * inv * inv, TruncationError);
}

// ---- Birkhoff factorization and BPHZ ----------------------------------------

std::vector<Character> toy_characters(LaurentWindow w) {
  return {nested_character(1, w), nested_character(Rational(3, 2), w), mixed_character(1, w), mixed_character(-2, w),
          scaled_character(nested_character(1, w), Rational(1, 2)), scaled_character(mixed_character(2, w), 3)};
}

TEST(Renorm, ParseCharacter) {
  EXPECT_EQ(parse_character("nested:c=1").name(), "nested:c=1");
  EXPECT_EQ(parse_character("mixed:c=1/2").name(), "mixed:c=1/2");
  EXPECT_EQ(parse_character("scaled:c=2,logmu=1/3").name(), "nested:c=2,logmu=1/3");
  EXPECT_THROW(parse_character("bogus:c=1"), ValidationError);
  EXPECT_THROW(parse_character("nested:c"), ValidationError);
}

TEST(Renorm, DoubleBubbleNestedValues) {
  const Fixture& f = fixture("double-bubble");
  BphzResult r = bphz_renormalize(nested_character(1), f.graph, *f.theory);
  EXPECT_EQ(r.prepared, LaurentSeries::monomial(Rational(-1, 2), -2));
  EXPECT_EQ(r.counterterm, LaurentSeries::monomial(Rational(1, 2), -2));
  EXPECT_TRUE(r.renormalized.is_zero());
}

TEST(Renorm, BphzEqualsBirkhoffForEveryToyCharacter) {
  LaurentWindow w{12, 12};
  for (const Character& phi : toy_characters(w))
    for (const Fixture* f : generator_fixtures()) {
      HopfAlgebra h(*f->theory);
      BirkhoffSession session(h, phi);
      GraphMonomial m = h.generator(f->graph);
      BphzResult r = bphz_renormalize(phi, f->graph, *f->theory);
      LaurentSeries neg = session.negative(m), pos = session.positive(m);
      EXPECT_EQ(pos, r.renormalized) << phi.name() << " " << f->name;
      EXPECT_EQ(neg, r.counterterm) << phi.name() << " " << f->name;
      EXPECT_EQ(session.prepared(m), r.prepared) << phi.name() << " " << f->name;
      EXPECT_TRUE(pos.is_regular()) << phi.name() << " " << f->name;
      EXPECT_TRUE(neg.is_pure_polar()) << phi.name() << " " << f->name;
    }
}

TEST(Renorm, BirkhoffPartsAreCharacters) {
  LaurentWindow w{12, 12};
  const Fixture& a = fixture("double-bubble");
  for (const Character& phi : toy_characters(w)) {
    HopfAlgebra h(*a.theory);
    BirkhoffSession session(h, phi);
    std::vector<GraphMonomial> gens{h.generator(a.graph), h.generator(fixture("bubble-chain").graph),
                                    h.generator(fixture("phi4-bubble").graph), h.generator(fixture("sunset").graph)};
    for (const auto& x : gens)
      for (const auto& y : gens) {
        GraphMonomial xy = multiply(x, y);
        EXPECT_EQ(session.positive(xy), session.positive(x) * session.positive(y)) << phi.name();
        EXPECT_EQ(session.negative(xy), session.negative(x) * session.negative(y)) << phi.name();
      }
  }
}

TEST(Renorm, FactorizationReconstructsCharacter) {
  LaurentWindow w{12, 12};
  for (const Character& phi : toy_characters(w))
    for (const Fixture* f : generator_fixtures()) {
      HopfAlgebra h(*f->theory);
      BirkhoffSession session(h, phi);
      GraphMonomial m = h.generator(f->graph);
      LinearForm neg_after_antipode = [&](const GraphMonomial& k) { return session.negative(h.antipode(k)); };
      LinearForm pos = [&](const GraphMonomial& k) { return session.positive(k); };
      LaurentSeries rebuilt = convolution(h, neg_after_antipode, pos, HopfElement{{m, 1}});
      EXPECT_EQ(rebuilt, phi(h, m)) << phi.name() << " " << f->name;
      // phi_+ = phi_- * phi
      LinearForm neg = [&](const GraphMonomial& k) { return session.negative(k); };
      LinearForm raw = [&](const GraphMonomial& k) { return phi(h, k); };
      EXPECT_EQ(convolution(h, neg, raw, HopfElement{{m, 1}}), session.positive(m)) << phi.name() << " " << f->name;
    }
}

TEST(Renorm, CounitIsConvolutionUnit) {
  const Fixture& f = fixture("bubble-chain-3");
  HopfAlgebra h(*f.theory);
  Character phi = mixed_character(1);
  GraphMonomial m = h.generator(f.graph);
  LinearForm raw = [&](const GraphMonomial& k) { return phi(h, k); };
  EXPECT_EQ(convolution(h, counit_form(), raw, HopfElement{{m, 1}}), phi(h, m));
  EXPECT_EQ(convolution(h, raw, counit_form(), HopfElement{{m, 1}}), phi(h, m));
}

TEST(Renorm, TheoryMismatchIsRejected) {
  EXPECT_THROW(bphz_renormalize(nested_character(1), fixture("K4").graph, Theory::phi4()), ValidationError);
}

}  // namespace
}  // namespace feynmot
