#include "feynmot/corpus.hpp"

#include "feynmot/errors.hpp"

namespace feynmot {

std::string origin_name(Origin o) {
  switch (o) {
    case Origin::Literature: return "literature";
    case Origin::Derived: return "derived";
    case Origin::Trivial: return "trivial";
  }
  return "derived";
}

namespace {

Theory valences(std::set<int> v, int dim = 4, bool mass_insertions = false) { return Theory{std::move(v), dim, mass_insertions}; }

std::vector<Fixture> build_corpus() {
  std::vector<Fixture> c;
  for (std::size_t n = 2; n <= 6; ++n) {
    std::optional<Theory> th;
    if (n >= 3) th = valences({static_cast<int>(n)});
    c.push_back({"banana:" + std::to_string(n), make_banana(n), th, Origin::Literature,
                 "two vertices joined by " + std::to_string(n) + " parallel edges"});
  }
  for (std::size_t n = 3; n <= 6; ++n)
    c.push_back({"cycle:" + std::to_string(n), make_cycle(n), std::nullopt, Origin::Literature,
                 "polygon with " + std::to_string(n) + " edges, planar dual of banana:" + std::to_string(n)});
  c.push_back({"K4", make_complete(4), Theory::phi3(), Origin::Derived, "complete graph on four vertices"});
  c.push_back({"wheel:4", make_wheel(4), valences({3, 4}), Origin::Derived, "four-spoke wheel"});
  c.push_back({"wheel:5", make_wheel(5), valences({3, 5}), Origin::Derived, "five-spoke wheel"});
  c.push_back({"K5", make_complete(5), Theory::phi4(), Origin::Derived, "complete graph on five vertices"});

  const Theory phi4 = Theory::phi4(), phi3 = Theory::phi3();
  c.push_back({"phi4-bubble", Graph(2, {{0, 1}, {0, 1}}, {0, 0, 1, 1}), phi4, Origin::Trivial,
               "one-loop four-point bubble"});
  c.push_back({"double-bubble", Graph(3, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}, {0, 1, 2, 2}), phi4, Origin::Derived,
               "bubble inserted at a vertex of a bubble; exactly one subdivergence"});
  c.push_back({"bubble-chain", Graph(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}, {0, 0, 2, 2}), phi4, Origin::Derived,
               "two bubbles in series; two disjoint subdivergences"});
  c.push_back({"bubble-chain-3", Graph(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}}, {0, 0, 3, 3}), phi4,
               Origin::Derived, "three bubbles in series"});
  c.push_back({"sunset", Graph(2, {{0, 1}, {0, 1}, {0, 1}}, {0, 1}), phi4, Origin::Derived,
               "two-loop self-energy; primitive without mass insertions"});
  c.push_back({"phi3-triangle", Graph(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}), phi3, Origin::Trivial,
               "one-loop three-point triangle"});
  c.push_back({"phi3-self-energy", Graph(2, {{0, 1}, {0, 1}}, {0, 1}), phi3, Origin::Trivial,
               "one-loop self-energy"});
  // Vertices A=0, X=1 (2-valent), C=2, B=3; edges e1 A->X, e2 X->C, e3 B->A, e4 C->B, e5 B->C.
  c.push_back({"two-loop-example", Graph(4, {{0, 1}, {1, 2}, {3, 0}, {2, 3}, {3, 2}}, {0, 3}),
               valences({3, 4}, 4, true), Origin::Literature,
               "two-loop graph with a doubled propagator (a 2-valent vertex on one edge)"});
  return c;
}

}  // namespace

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> c = build_corpus();
  return c;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : corpus())
    if (f.name == name) return f;
  throw ValidationError("unknown corpus graph '" + name + "'");
}

std::optional<Fixture> resolve_graph_name(const std::string& text) {
  for (const auto& f : corpus())
    if (f.name == text) return f;
  auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string family = text.substr(0, colon);
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    long v = std::stol(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1 || v < 0) throw ValidationError("bad size");
    n = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ValidationError("graph shortcut '" + text + "' needs a non-negative integer size");
  }
  if (n > 12) throw BudgetError("graph shortcut '" + text + "' exceeds the supported size 12");
  Fixture f;
  f.name = text;
  f.origin = Origin::Derived;
  if (family == "banana") {
    f.graph = make_banana(n);
  } else if (family == "cycle") {
    f.graph = make_cycle(n);
  } else if (family == "wheel") {
    f.graph = make_wheel(n);
  } else if (family == "complete") {
    f.graph = make_complete(n);
  } else {
    return std::nullopt;
  }
  return f;
}

}  // namespace feynmot
