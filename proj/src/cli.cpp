#include "feynmot/cli.hpp"

#include "feynmot/corpus.hpp"
#include "feynmot/errors.hpp"
#include "feynmot/io.hpp"
#include "feynmot/motive.hpp"
#include "feynmot/param.hpp"
#include "feynmot/renorm.hpp"
#include "feynmot/rg.hpp"
#include "feynmot/symanzik.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

namespace feynmot {

namespace {

struct ResolvedGraph {
  std::string name;
  Graph graph;
  std::optional<Theory> theory;
};

ResolvedGraph resolve(const std::string& text) {
  if (auto f = resolve_graph_name(text)) return {f->name, f->graph, f->theory};
  if (std::filesystem::exists(text)) {
    auto doc = read_graph_file(text);
    return {text, doc.graph, doc.theory};
  }
  throw ValidationError("unknown graph '" + text + "' (use a corpus name, banana:n, cycle:n, wheel:n, complete:n or a JSON file)");
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 2) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(v));
    } catch (const std::exception&) {
      throw ValidationError("'" + item + "' is not a valid prime");
    }
    PrimeField check(out.back());
  }
  return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<unsigned> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": '" + item + "' is not a non-negative integer");
    }
  }
  if (expected && out.size() != expected)
    throw ValidationError(std::string(what) + " expects " + std::to_string(expected) + " comma-separated values");
  return out;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

Json class_checks(const ClassPoly& affine, const Polynomial& poly, std::size_t n, const std::vector<std::uint64_t>& primes) {
  Json checks = Json::array();
  for (auto q : primes) {
    PrimeField f(q);
    BigInt formula = affine.evaluate(BigInt(q));
    BigInt brute = point_count_hypersurface(poly, n, f);
    checks.push_back({{"q", q}, {"formula", to_string(formula)}, {"bruteforce", to_string(brute)},
                      {"match", formula == brute}});
  }
  return checks;
}

Json value_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feynman graph polynomials, motivic classes and renormalization", "feynmot"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads (default: FEYNMOT_THREADS or hardware)");
  std::function<Json()> action;

  // psi
  std::string graph_arg, dual_arg, method = "trees";
  auto* psi = app.add_subcommand("psi", "first Symanzik polynomial");
  psi->add_option("--graph", graph_arg)->required();
  psi->add_option("--method", method)->check(CLI::IsMember({"trees", "det"}));
  psi->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg);
      Polynomial p = method == "trees" ? psi_spanning_trees(g.graph) : psi_determinant(g.graph);
      auto d = p.homogeneity_degree();
      return Json{{"graph", g.name}, {"method", method}, {"psi", p.to_string()},
                  {"degree", d ? Json(*d) : Json(nullptr)}, {"loops", loop_number(g.graph)},
                  {"terms", polynomial_terms_json(p)}};
    };
  });

  // symanzik2
  std::string p2_text = "1";
  auto* sym2 = app.add_subcommand("symanzik2", "second Symanzik polynomial of a two-leg graph");
  sym2->add_option("--graph", graph_arg)->required();
  sym2->add_option("--p2", p2_text, "squared momentum through the graph");
  sym2->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg);
      Rational p2 = parse_rational(p2_text);
      RationalPolynomial P = p2 * second_symanzik(g.graph, Momenta::unit_two_point(g.graph));
      auto d = P.homogeneity_degree();
      return Json{{"graph", g.name}, {"p2", to_string(p2)}, {"P", P.to_string()},
                  {"degree", d ? Json(*d) : Json(nullptr)}, {"terms", polynomial_terms_json(P)}};
    };
  });

  // class banana
  unsigned banana_n = 3;
  std::string primes_text;
  auto* cls = app.add_subcommand("class", "classes in Z[L]");
  cls->require_subcommand(1);
  auto* banana = cls->add_subcommand("banana", "class of the banana graph hypersurface");
  banana->add_option("--n", banana_n)->required();
  banana->add_option("--check-primes", primes_text, "comma-separated primes for point-count checks");
  banana->callback([&] {
    action = [&] {
      ClassPoly c = banana_class(banana_n);
      ClassPoly cone = affine_cone_class(c);
      Json j{{"n", banana_n}, {"class", c.to_string()}, {"affine_cone", cone.to_string()},
             {"euler", to_string(c.evaluate(BigInt(1)))}};
      j["checks"] = class_checks(cone, psi_spanning_trees(make_banana(banana_n)), banana_n, parse_primes(primes_text));
      return j;
    };
  });

  // frame
  std::string dims2, dims3;
  auto* frame = app.add_subcommand("frame", "class of a manifold of frames");
  auto* dims2_opt = frame->add_option("--dims", dims2, "d1,d2,d12");
  frame->add_option("--dims3", dims3, "d1,d2,d3,d12,d13,d23,d123,D")->excludes(dims2_opt);
  frame->add_option("--check-primes", primes_text, "primes at which to evaluate the class");
  frame->callback([&] {
    action = [&] {
      ClassPoly c;
      Json j;
      if (!dims2.empty()) {
        auto d = parse_unsigned_list(dims2, 3, "--dims");
        c = frame_class_2(d[0], d[1], d[2]);
        j["dims"] = d;
      } else if (!dims3.empty()) {
        auto d = parse_unsigned_list(dims3, 8, "--dims3");
        c = frame_class_3(FrameDims3{d[0], d[1], d[2], d[3], d[4], d[5], d[6], d[7]});
        j["dims"] = d;
      } else {
        throw ValidationError("frame needs --dims or --dims3");
      }
      j["class"] = c.to_string();
      Json values = Json::array();
      for (auto q : parse_primes(primes_text)) values.push_back({{"q", q}, {"value", to_string(c.evaluate(BigInt(q)))}});
      j["values"] = values;
      return j;
    };
  });

  // count
  std::uint64_t q = 2;
  auto* count = app.add_subcommand("count", "points of the graph hypersurface complement over F_q");
  count->add_option("--graph", graph_arg)->required();
  count->add_option("--q", q)->required();
  count->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg);
      PrimeField f(q);
      BigInt complement = motivic_feynman_rule(g.graph, f);
      BigInt total = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(g.graph.num_edges()));
      return Json{{"graph", g.name}, {"q", q}, {"edges", g.graph.num_edges()},
                  {"complement", to_string(complement)}, {"hypersurface", to_string(BigInt(total - complement))}};
    };
  });

  // upsilon
  auto* ups = app.add_subcommand("upsilon", "linear map from edge variables to symmetric matrices");
  ups->add_option("--graph", graph_arg)->required();
  ups->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg);
      LoopBasis basis = loop_basis(g.graph);
      UpsilonMap u = upsilon_map(g.graph, basis);
      Polynomial det = determinant(u.matrix());
      return Json{{"graph", g.name}, {"loops", u.loops}, {"edges", g.graph.num_edges()}, {"rank", u.rank()},
                  {"injective", u.injective()}, {"det", det.to_string()},
                  {"det_equals_psi", det == psi_spanning_trees(g.graph)}};
    };
  });

  // det-count
  unsigned l = 2;
  bool bruteforce = false;
  auto* detc = app.add_subcommand("det-count", "singular l x l matrices over F_q");
  detc->add_option("--l", l)->required();
  detc->add_option("--q", q)->required();
  detc->add_flag("--bruteforce", bruteforce, "also enumerate all matrices");
  detc->callback([&] {
    action = [&] {
      PrimeField f(q);
      Json j{{"l", l}, {"q", q}, {"closed_form", to_string(det_hypersurface_count(l, f))}};
      j["bruteforce"] = bruteforce ? Json(to_string(det_hypersurface_count_bruteforce(l, f))) : Json(nullptr);
      return j;
    };
  });

  // divisor-count
  unsigned genus = 0;
  std::string components_text;
  auto* divc = app.add_subcommand("divisor-count", "nonsingular matrices on an intersection of divisor components");
  divc->add_option("--l", l)->required();
  divc->add_option("--genus", genus);
  divc->add_option("--components", components_text, "comma-separated component indices (0-based)");
  divc->add_option("--q", q)->required();
  divc->callback([&] {
    action = [&] {
      PrimeField f(q);
      std::vector<std::size_t> comps;
      if (!components_text.empty())
        for (auto c : parse_unsigned_list(components_text, 0, "--components")) comps.push_back(c);
      return Json{{"l", l}, {"genus", genus}, {"components", comps}, {"q", q},
                  {"equations", divisor_equations(l, genus).size()},
                  {"count", to_string(divisor_stratum_count(l, genus, comps, f))}};
    };
  });

  // cremona
  auto* crem = app.add_subcommand("cremona", "check Psi_G(t) = (prod t) Psi_dual(1/t)");
  crem->add_option("--graph", graph_arg)->required();
  crem->add_option("--dual", dual_arg)->required();
  crem->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg), d = resolve(dual_arg);
      return Json{{"graph", g.name}, {"dual", d.name}, {"holds", cremona_check(g.graph, d.graph)}};
    };
  });

  // renormalize
  std::string character_arg = "nested:c=1";
  int order = 12;
  auto* ren = app.add_subcommand("renormalize", "BPHZ renormalization and Birkhoff factorization");
  ren->add_option("--graph", graph_arg)->required();
  ren->add_option("--character", character_arg, "nested:c=..., mixed:c=..., scaled:c=...,logmu=...");
  ren->add_option("--order", order, "Laurent window (pole depth and regular order)");
  ren->callback([&] {
    action = [&] {
      if (order < 1) throw ValidationError("--order must be positive");
      auto g = resolve(graph_arg);
      if (!g.theory) throw ValidationError("graph '" + g.name + "' carries no theory; supply a JSON file with one");
      LaurentWindow window{order, order};
      Character phi = parse_character(character_arg, window);
      BphzResult r = bphz_renormalize(phi, g.graph, *g.theory);
      HopfAlgebra h(*g.theory);
      BirkhoffSession session(h, phi);
      GraphMonomial m = h.generator(g.graph);
      LaurentSeries neg = session.negative(m), pos = session.positive(m);
      return Json{{"graph", g.name},
                  {"character", phi.name()},
                  {"subdivergences", subdivergences(g.graph, *g.theory).size()},
                  {"prepared", laurent_to_json(r.prepared)},
                  {"counterterm", laurent_to_json(r.counterterm)},
                  {"renormalized", laurent_to_json(r.renormalized)},
                  {"birkhoff_negative", laurent_to_json(neg)},
                  {"birkhoff_positive", laurent_to_json(pos)},
                  {"agree", neg == r.counterterm && pos == r.renormalized}};
    };
  });

  // rg-frame
  unsigned max_degree = 4;
  std::string v_text = "1";
  auto* rgf = app.add_subcommand("rg-frame", "coefficients of the universal singular frame");
  rgf->add_option("--max-degree", max_degree);
  rgf->add_option("--v", v_text, "evaluation point v (rational)");
  rgf->callback([&] {
    action = [&] {
      Rational v = parse_rational(v_text);
      Json coeffs = Json::object();
      for (const auto& [w, c] : universal_singular_frame(max_degree)) coeffs[word_to_string(w)] = to_string(c * pow(v, static_cast<int>(word_degree(w))));
      return Json{{"max_degree", max_degree}, {"v", to_string(v)}, {"coefficients", coeffs}};
    };
  });

  // param
  double D = 3.0, samples = 1e6, alpha = 0.25;
  std::string mode = "massless", mass_text = "1";
  std::uint64_t seed = SimplexOptions{}.seed;
  auto* par = app.add_subcommand("param", "Monte-Carlo evaluation of the parametric integral");
  par->add_option("--graph", graph_arg)->required();
  par->add_option("--D", D);
  par->add_option("--p2", p2_text);
  par->add_option("--mode", mode)->check(CLI::IsMember({"massless", "massive"}));
  par->add_option("--mass", mass_text);
  par->add_option("--samples", samples);
  par->add_option("--seed", seed);
  par->add_option("--alpha", alpha, "Dirichlet concentration of the sampler");
  par->callback([&] {
    action = [&] {
      auto g = resolve(graph_arg);
      if (!(samples >= 2) || samples > 1e10) throw ValidationError("--samples must lie in [2, 1e10]");
      // Vacuum fixtures such as banana:n get a momentum in at vertex 0 and out at the last vertex.
      if (g.graph.num_legs() == 0 && g.graph.num_vertices() >= 2)
        g.graph = g.graph.with_legs({0, g.graph.num_vertices() - 1});
      ParametricIntegrand pi;
      Json exact = nullptr;
      const bool bubble = g.graph.num_edges() == 2 && g.graph.num_vertices() == 2;
      if (mode == "massless") {
        Rational p2 = parse_rational(p2_text);
        pi = build_parametric_two_point(g.graph, p2, D);
        if (bubble)
          exact = std::pow(to_double(p2), D / 2 - 2) * std::pow(std::tgamma(D / 2 - 1), 2) / std::tgamma(D - 2);
      } else {
        Momenta zero;
        for (std::size_t leg = 0; leg < g.graph.num_legs(); ++leg) zero.p[leg] = {Rational(0)};
        pi = build_parametric(g.graph, zero, D, parse_rational(mass_text));
        // Psi = t1 + t2 = 1 on the simplex, so the integrand is constant.
        if (bubble) exact = std::pow(to_double(pi.mass2), pi.p_exponent);
      }
      SimplexOptions opt;
      opt.samples = static_cast<std::uint64_t>(std::llround(samples));
      opt.seed = seed;
      opt.alpha = alpha;
      SimplexEstimate est = integrate_simplex(pi, opt);
      return Json{{"graph", g.name}, {"mode", mode}, {"D", D}, {"estimate", est.estimate}, {"stderr", est.stderr_},
                  {"samples", est.samples}, {"seed", est.seed}, {"alpha", alpha}, {"exact_if_known", exact},
                  {"p_exponent", pi.p_exponent}, {"psi_exponent", pi.psi_exponent},
                  {"prefactor", value_or_null(pi.prefactor)}};
    };
  });

  // master
  int laurent_order = 2;
  auto* mas = app.add_subcommand("master", "closed-form two-loop example");
  mas->add_option("--D", D)->required();
  mas->add_option("--p2", p2_text);
  mas->add_option("--laurent-order", laurent_order, "order of the z-expansion reported at poles");
  mas->callback([&] {
    action = [&] {
      double p2 = to_double(parse_rational(p2_text));
      MasterValue v = eval_master_two_loop(D, p2);
      Json j{{"D", D}, {"p2", p2}};
      if (v.value) {
        j["value"] = *v.value;
        j["pole"] = nullptr;
      } else {
        j["value"] = nullptr;
        j["pole"] = {{"factors", v.pole->singular_factors}, {"order", v.pole->pole_order}};
        NumericLaurent s = master_two_loop_laurent(D, p2, laurent_order);
        Json coeffs = Json::object();
        for (int k = s.low; k <= s.order(); ++k) coeffs[std::to_string(k)] = s.coeff(k);
        j["laurent"] = {{"variable", "z with D = D0 - z"}, {"coefficients", coeffs}};
      }
      return j;
    };
  });

  // gamma
  double a = 0.0;
  auto* gam = app.add_subcommand("gamma", "Laurent expansion of the Gamma function");
  gam->add_option("--a", a)->required();
  gam->add_option("--order", laurent_order);
  gam->callback([&] {
    action = [&] {
      NumericLaurent s = gamma_laurent(a, laurent_order);
      Json coeffs = Json::object();
      for (int k = s.low; k <= s.order(); ++k) coeffs[std::to_string(k)] = s.coeff(k);
      return Json{{"a", a}, {"pole", s.low < 0}, {"coefficients", coeffs}};
    };
  });

  // corpus list
  auto* corp = app.add_subcommand("corpus", "built-in graph fixtures");
  corp->require_subcommand(1);
  auto* list = corp->add_subcommand("list", "list fixtures with graph statistics");
  list->callback([&] {
    action = [&] {
      Json graphs = Json::array();
      for (const auto& f : corpus()) {
        const Graph& g = f.graph;
        Json tec = g.has_looping_edge() ? Json(nullptr) : Json(is_3_edge_connected(g));
        graphs.push_back({{"name", f.name}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()},
                          {"legs", g.num_legs()}, {"b1", loop_number(g)}, {"one_pi", is_1pi(g)},
                          {"three_edge_connected", tec}, {"origin", origin_name(f.origin)},
                          {"description", f.description}, {"graph", graph_to_json(g, f.theory)}});
      }
      return Json{{"graphs", graphs}};
    };
  });

  // sum
  unsigned N = 2;
  std::vector<int> theory_valences{4};
  primes_text = "";
  auto* sum = app.add_subcommand("sum", "graph sum of projective hypersurface classes, fitted in q");
  sum->add_option("--N", N, "number of vertices (<= 4)");
  sum->add_option("--valences", theory_valences, "allowed vertex valences")->delimiter(',');
  sum->add_option("--primes", primes_text, "comma-separated primes; the last one is held out");
  sum->callback([&] {
    action = [&] {
      Theory th{std::set<int>(theory_valences.begin(), theory_valences.end()), 4, false};
      auto primes = parse_primes(primes_text.empty() ? "2,3,5,7" : primes_text);
      GraphSumResult r = graph_sum_class(N, th, primes);
      Json values = Json::array();
      for (const auto& [qq, v] : r.values) values.push_back({{"q", qq}, {"value", to_string(v)}});
      Json poly = nullptr;
      if (r.polynomial) {
        poly = Json::array();
        for (const auto& c : *r.polynomial) poly.push_back(to_string(c));
      }
      return Json{{"N", N}, {"graphs", r.graphs}, {"values", values}, {"polynomial", poly},
                  {"verdict", r.polynomial ? "evidence: polynomial in q" : "non-polynomial"}};
    };
  });

  // feynman-trick
  std::string q_values;
  auto* ft = app.add_subcommand("feynman-trick", "quadrature check of the Feynman parameter identity");
  ft->add_option("--q", q_values, "comma-separated positive rationals")->required();
  ft->callback([&] {
    action = [&] {
      std::vector<Rational> qs;
      std::stringstream in(q_values);
      std::string item;
      while (std::getline(in, item, ',')) qs.push_back(parse_rational(item));
      FeynmanTrickReport r = feynman_trick_check(qs);
      return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"relative_error", r.relative_error}, {"ok", r.ok}};
    };
  });

  std::vector<std::string> storage{"feynmot"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what()).dump() << "\n";
    return kExitValidation;
  }
  try {
    if (threads) set_default_threads(threads);
    if (!action) throw ValidationError("no command given");
    out << action().dump(2) << "\n";
    return kExitOk;
  } catch (const BudgetError& e) {
    out << error_json("budget", e.what()).dump() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    out << error_json("validation", e.what()).dump() << "\n";
    return kExitValidation;
  } catch (const TruncationError& e) {
    out << error_json("truncation", e.what()).dump() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    out << error_json("internal", e.what()).dump() << "\n";
    return kExitInternal;
  }
}

}  // namespace feynmot
