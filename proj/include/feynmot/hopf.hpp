#pragma once

#include "feynmot/graph.hpp"
#include "feynmot/numeric.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace feynmot {

/// Commutative monomial in generators: sorted generator ids; empty = unit.
using GraphMonomial = std::vector<std::size_t>;
using HopfElement = std::map<GraphMonomial, BigInt>;
using HopfTensor = std::map<std::pair<GraphMonomial, GraphMonomial>, BigInt>;
using HopfTensor3 = std::map<std::array<GraphMonomial, 3>, BigInt>;

enum class Grading { LoopNumber, InternalLines };

GraphMonomial multiply(const GraphMonomial& a, const GraphMonomial& b);
HopfElement multiply(const HopfElement& a, const HopfElement& b);
HopfElement unit_element();
/// Coefficient of the unit.
BigInt counit(const HopfElement& x);
void add_to(HopfElement& x, const GraphMonomial& m, const BigInt& c);

/// Connes-Kreimer Hopf algebra of 1PI graphs of a theory. Generators are
/// isomorphism classes (external legs unlabelled) registered on first use.
class HopfAlgebra {
 public:
  explicit HopfAlgebra(Theory theory, Grading grading = Grading::LoopNumber);

  const Theory& theory() const { return theory_; }
  Grading grading() const { return grading_; }

  /// Registers g (1PI, connected, legal in the theory) and returns its id.
  std::size_t intern(const Graph& g);
  /// Monomial with a single generator.
  GraphMonomial generator(const Graph& g) { return {intern(g)}; }
  HopfElement element(const Graph& g) { return {{generator(g), BigInt(1)}}; }
  const Graph& graph(std::size_t id) const { return graphs_.at(id); }
  std::size_t num_generators() const { return graphs_.size(); }

  std::size_t degree(std::size_t id) const;
  std::size_t degree(const GraphMonomial& m) const;

  /// Full coproduct of a generator (memoized): Γ⊗1 + 1⊗Γ + Σ γ⊗Γ/γ.
  const HopfTensor& coproduct(std::size_t id);
  HopfTensor coproduct(const GraphMonomial& m);
  HopfTensor coproduct(const HopfElement& x);
  /// Coproduct without the two primitive terms.
  HopfTensor reduced_coproduct(const GraphMonomial& m);

  /// Recursive antipode S(X) = -X - Σ S(X')X''; S(1) = 1.
  const HopfElement& antipode(const GraphMonomial& m);
  HopfElement antipode(const HopfElement& x);

  /// (Δ⊗id)Δ(x) and (id⊗Δ)Δ(x).
  HopfTensor3 left_iterated_coproduct(const HopfElement& x);
  HopfTensor3 right_iterated_coproduct(const HopfElement& x);

  /// m(S⊗id)Δ(x) and m(id⊗S)Δ(x).
  HopfElement antipode_left(const HopfElement& x);
  HopfElement antipode_right(const HopfElement& x);

  std::string to_string(const GraphMonomial& m) const;
  std::string to_string(const HopfElement& x) const;

 private:
  Theory theory_;
  Grading grading_;
  std::map<std::string, std::size_t> ids_;
  std::vector<Graph> graphs_;
  std::map<std::size_t, HopfTensor> coproducts_;
  std::map<GraphMonomial, HopfElement> antipodes_;
};

}  // namespace feynmot
