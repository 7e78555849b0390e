#pragma once

#include "feynmot/hopf.hpp"
#include "feynmot/laurent.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace feynmot {

/// Value of a character on a single connected 1PI graph.
using GeneratorRule = std::function<LaurentSeries(const Graph&)>;

/// Algebra homomorphism from the graph Hopf algebra to Laurent series,
/// defined by its values on generators and extended multiplicatively.
class Character {
 public:
  Character(std::string name, GeneratorRule rule, LaurentWindow window = {});

  const std::string& name() const { return name_; }
  const LaurentWindow& window() const { return window_; }
  LaurentSeries on_graph(const Graph& g) const { return rule_(g); }
  LaurentSeries operator()(HopfAlgebra& h, const GraphMonomial& m) const;
  LaurentSeries operator()(HopfAlgebra& h, const HopfElement& x) const;

 private:
  std::string name_;
  GeneratorRule rule_;
  LaurentWindow window_;
};

/// phi(G) = (c/z)^b1 / b1!.
Character nested_character(const Rational& c, LaurentWindow window = {});
/// phi(G) = (c/z + 1 + e z)^b1 / b1! with e the number of internal edges.
Character mixed_character(const Rational& c, LaurentWindow window = {});
/// phi_mu(G) = exp(b1 z log mu) phi(G), log mu a rational parameter.
Character scaled_character(const Character& base, const Rational& log_mu);

/// Parses "nested:c=1", "mixed:c=1/2" or "scaled:c=1,logmu=1/3" (nested base).
Character parse_character(const std::string& text, LaurentWindow window = {});

/// Any linear functional on the Hopf algebra.
using LinearForm = std::function<LaurentSeries(const GraphMonomial&)>;

/// (f ⋆ g)(x) = Σ f(x') g(x'') over the full coproduct.
LaurentSeries convolution(HopfAlgebra& h, const LinearForm& f, const LinearForm& g, const HopfElement& x);
/// The convolution unit u∘ε.
LinearForm counit_form(LaurentWindow window = {});

/// Birkhoff factorization phi = phi_-^{⋆-1} ⋆ phi_+ by the Connes-Kreimer
/// recursion over monomials. Memo tables live in the session.
class BirkhoffSession {
 public:
  BirkhoffSession(HopfAlgebra& h, Character phi) : h_(h), phi_(std::move(phi)) {}

  LaurentSeries phi(const GraphMonomial& m) { return phi_(h_, m); }
  /// phi(X) + Σ phi_-(X') phi(X'') over the reduced coproduct.
  LaurentSeries prepared(const GraphMonomial& m);
  /// phi_-(X) = -T(prepared(X)); phi_-(1) = 1.
  LaurentSeries negative(const GraphMonomial& m);
  /// phi_+(X) = (id - T)(prepared(X)); phi_+(1) = 1.
  LaurentSeries positive(const GraphMonomial& m);
  LaurentSeries negative(const HopfElement& x);
  LaurentSeries positive(const HopfElement& x);

 private:
  HopfAlgebra& h_;
  Character phi_;
  std::map<GraphMonomial, LaurentSeries> prepared_;
};

struct BphzResult {
  LaurentSeries prepared;
  LaurentSeries counterterm;
  LaurentSeries renormalized;
};

/// Bogoliubov recursion directly on graphs: R̄ = φ(Γ) + Σ_γ Π C(γ_i) φ(Γ/γ),
/// C = -T(R̄), R = R̄ + C. Independent of the Hopf algebra code paths.
BphzResult bphz_renormalize(const Character& phi, const Graph& g, const Theory& theory);

}  // namespace feynmot
