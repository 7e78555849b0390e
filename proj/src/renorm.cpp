#include "feynmot/renorm.hpp"

#include "feynmot/errors.hpp"

#include <sstream>

namespace feynmot {

Character::Character(std::string name, GeneratorRule rule, LaurentWindow window)
    : name_(std::move(name)), rule_(std::move(rule)), window_(window) {}

LaurentSeries Character::operator()(HopfAlgebra& h, const GraphMonomial& m) const {
  LaurentSeries r = LaurentSeries::constant(1, window_);
  for (auto id : m) r = r * rule_(h.graph(id));
  return r;
}

LaurentSeries Character::operator()(HopfAlgebra& h, const HopfElement& x) const {
  LaurentSeries r(window_);
  for (const auto& [m, c] : x) r += Rational(c) * (*this)(h, m);
  return r;
}

namespace {

LaurentSeries power_over_factorial(const LaurentSeries& base, std::size_t n, LaurentWindow window) {
  LaurentSeries r = LaurentSeries::constant(1, window);
  for (std::size_t i = 0; i < n; ++i) r = r * base;
  return Rational(1) / Rational(factorial(static_cast<unsigned>(n))) * r;
}

}  // namespace

Character nested_character(const Rational& c, LaurentWindow window) {
  return Character("nested:c=" + to_string(c), [c, window](const Graph& g) {
    return power_over_factorial(LaurentSeries::monomial(c, -1, window), loop_number(g), window);
  }, window);
}

Character mixed_character(const Rational& c, LaurentWindow window) {
  return Character("mixed:c=" + to_string(c), [c, window](const Graph& g) {
    LaurentSeries base = LaurentSeries::monomial(c, -1, window) + LaurentSeries::constant(1, window) +
                         LaurentSeries::monomial(Rational(static_cast<long long>(g.num_edges())), 1, window);
    return power_over_factorial(base, loop_number(g), window);
  }, window);
}

Character scaled_character(const Character& base, const Rational& log_mu) {
  LaurentWindow window = base.window();
  return Character(base.name() + ",logmu=" + to_string(log_mu), [base, log_mu, window](const Graph& g) {
    Rational rate = log_mu * Rational(static_cast<long long>(loop_number(g)));
    return LaurentSeries::exp_linear(rate, window) * base.on_graph(g);
  }, window);
}

Character parse_character(const std::string& text, LaurentWindow window) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::map<std::string, Rational> params{{"c", Rational(1)}};
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("character parameter '" + item + "' lacks '='");
      params[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
  }
  if (kind == "nested") return nested_character(params["c"], window);
  if (kind == "mixed") return mixed_character(params["c"], window);
  if (kind == "scaled") return scaled_character(nested_character(params["c"], window), params["logmu"]);
  throw ValidationError("unknown character '" + kind + "' (expected nested, mixed or scaled)");
}

LaurentSeries convolution(HopfAlgebra& h, const LinearForm& f, const LinearForm& g, const HopfElement& x) {
  LaurentSeries r;
  bool first = true;
  for (const auto& [k, c] : h.coproduct(x)) {
    LaurentSeries term = Rational(c) * (f(k.first) * g(k.second));
    if (first) {
      r = term;
      first = false;
    } else {
      r += term;
    }
  }
  return r;
}

LinearForm counit_form(LaurentWindow window) {
  return [window](const GraphMonomial& m) {
    return m.empty() ? LaurentSeries::constant(1, window) : LaurentSeries(window);
  };
}

LaurentSeries BirkhoffSession::prepared(const GraphMonomial& m) {
  if (auto it = prepared_.find(m); it != prepared_.end()) return it->second;
  LaurentSeries r = phi(m);
  for (const auto& [k, c] : h_.reduced_coproduct(m)) r += Rational(c) * (negative(k.first) * phi(k.second));
  prepared_.emplace(m, r);
  return r;
}

LaurentSeries BirkhoffSession::negative(const GraphMonomial& m) {
  if (m.empty()) return LaurentSeries::constant(1, phi_.window());
  return -rota_baxter_T(prepared(m));
}

LaurentSeries BirkhoffSession::positive(const GraphMonomial& m) {
  if (m.empty()) return LaurentSeries::constant(1, phi_.window());
  LaurentSeries p = prepared(m);
  return p - rota_baxter_T(p);
}

LaurentSeries BirkhoffSession::negative(const HopfElement& x) {
  LaurentSeries r(phi_.window());
  for (const auto& [m, c] : x) r += Rational(c) * negative(m);
  return r;
}

LaurentSeries BirkhoffSession::positive(const HopfElement& x) {
  LaurentSeries r(phi_.window());
  for (const auto& [m, c] : x) r += Rational(c) * positive(m);
  return r;
}

namespace {

struct BphzMemo {
  const Character& phi;
  const Theory& theory;
  std::map<std::string, BphzResult> done;

  const BphzResult& run(const Graph& g) {
    std::string key = canonical_key(g);
    if (auto it = done.find(key); it != done.end()) return it->second;
    LaurentSeries rbar = phi.on_graph(g);
    for (const Subgraph& sub : subdivergences(g, theory)) {
      LaurentSeries term = phi.on_graph(quotient(g, sub));
      for (const auto& comp : subgraph_components(g, sub)) term = run(extract_component(g, comp)).counterterm * term;
      rbar += term;
    }
    LaurentSeries c = -rbar.polar_part();
    BphzResult r{rbar, c, rbar + c};
    return done.emplace(std::move(key), std::move(r)).first->second;
  }
};

}  // namespace

BphzResult bphz_renormalize(const Character& phi, const Graph& g, const Theory& theory) {
  if (!g.is_connected() || !is_1pi(g)) throw ValidationError("bphz_renormalize: graph must be connected and 1PI");
  g.validate(theory);
  BphzMemo memo{phi, theory, {}};
  return memo.run(g);
}

}  // namespace feynmot
