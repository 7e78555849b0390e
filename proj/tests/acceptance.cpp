// Acceptance run: one PASS/FAIL line per criterion. `acceptance --only N` runs
// criterion N alone; the exit status is nonzero when any criterion fails.

#include "feynmot/corpus.hpp"
#include "feynmot/errors.hpp"
#include "feynmot/hopf.hpp"
#include "feynmot/motive.hpp"
#include "feynmot/param.hpp"
#include "feynmot/renorm.hpp"
#include "feynmot/rg.hpp"
#include "feynmot/symanzik.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace feynmot {
namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (condition) return;
    if (ok) detail << "failed: ";
    else detail << "; ";
    detail << what;
    ok = false;
  }
};

BigInt at(const ClassPoly& c, std::uint64_t q) { return c.evaluate(BigInt(q)); }

// ---- 1 -------------------------------------------------------------------------

void matrix_tree(Outcome& out) {
  std::mt19937_64 rng(1);
  std::size_t graphs = 0, trials = 0;
  for (const auto& f : corpus()) {
    out.require(f.graph.num_edges() <= 12, f.name + " has more than 12 edges");
    const Polynomial trees = psi_spanning_trees(f.graph);
    for (int trial = 0; trial < 10; ++trial) {
      Graph g = f.graph.with_reversed(oracle::random_flips(f.graph.num_edges(), rng));
      LoopBasis basis = loop_basis(g, oracle::random_permutation(g.num_edges(), rng));
      out.require(psi_determinant(g, basis) == trees, f.name);
      ++trials;
    }
    ++graphs;
  }
  out.require(graphs >= 10, "corpus has fewer than 10 graphs");
  if (out.ok) out.detail << graphs << " graphs, " << trials << " basis/orientation choices";
}

// ---- 2 -------------------------------------------------------------------------

// Class of the banana hypersurface evaluated at L = q, retyped from the closed form.
Rational banana_formula(unsigned n, std::uint64_t q) {
  const Rational L(static_cast<long long>(q));
  auto pw = [](Rational x, unsigned k) {
    Rational r = 1;
    while (k--) r *= x;
    return r;
  };
  const Rational sign = n % 2 ? Rational(-1) : Rational(1);
  return (pw(L, n) - 1) / (L - 1) - (pw(L - 1, n) - sign) / L - Rational(n) * pw(L - 1, n - 2);
}

void banana_counts(Outcome& out) {
  for (unsigned n = 2; n <= 5; ++n) {
    const Polynomial psi = psi_spanning_trees(make_banana(n));
    for (std::uint64_t q : {2, 3, 5, 7}) {
      const BigInt cls = at(banana_class(n), q);
      out.require(Rational(cls) == banana_formula(n, q), "class formula n=" + std::to_string(n));
      const BigInt count = point_count_hypersurface(psi, n, PrimeField(q));
      out.require(count == BigInt(q - 1) * cls + 1, "n=" + std::to_string(n) + " q=" + std::to_string(q));
    }
  }
  if (out.ok) out.detail << "16 (n, q) pairs exact";
}

// ---- 3 -------------------------------------------------------------------------

void euler_characteristic(Outcome& out) {
  std::string held;
  for (unsigned n = 2; n <= 10; ++n) {
    const BigInt chi = at(banana_class(n), 1);
    const BigInt expected = BigInt(n) + (n % 2 ? -1 : 1);
    if (chi == expected) held += (held.empty() ? "" : ",") + std::to_string(n);
    else out.require(false, "n=" + std::to_string(n) + " gives " + to_string(chi) + ", expected " + to_string(expected));
  }
  out.detail << (out.ok ? "" : "; ") << "holds for n=" << held;
}

// ---- 4 -------------------------------------------------------------------------

void cremona(Outcome& out) {
  for (std::size_t n = 2; n <= 6; ++n) out.require(cremona_check(make_banana(n), make_cycle(n)), "n=" + std::to_string(n));
  if (out.ok) out.detail << "n=2..6";
}

// ---- 5 -------------------------------------------------------------------------

SubspaceFamily random_family(std::size_t arity, std::size_t ambient, const PrimeField& f, std::mt19937_64& rng) {
  SubspaceFamily fam{ambient, {}};
  for (std::size_t k = 0; k < arity; ++k) {
    const std::size_t d = 1 + rng() % std::min<std::size_t>(ambient, 3);
    std::vector<VectorModQ> basis;
    while (basis.size() < d) {
      VectorModQ v(ambient);
      for (auto& x : v) x = rng() % f.q();
      basis.push_back(v);
      if (rank_mod(basis, f) != basis.size()) basis.pop_back();
    }
    // Reuse a vector of an earlier subspace a third of the time to force intersections.
    if (k > 0 && rng() % 3 == 0) basis.front() = fam.bases[rng() % k].front();
    if (rank_mod(basis, f) != basis.size()) basis.resize(1);
    fam.bases.push_back(basis);
  }
  return fam;
}

void frames(Outcome& out) {
  std::mt19937_64 rng(5);
  std::size_t configs = 0, zero_cases = 0;
  for (std::uint64_t q : {2, 3}) {
    const PrimeField f(q);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t ambient = 2 + rng() % 3;
      SubspaceFamily two = random_family(2, ambient, f, rng);
      const auto d12 = static_cast<unsigned>(two.intersection({0, 1}, f).size());
      out.require(at(frame_class_2(two.dim(0), two.dim(1), d12), q) == frame_count_bruteforce(two, f), "arity 2");
      SubspaceFamily three = random_family(3, ambient, f, rng);
      const BigInt brute = frame_count_bruteforce(three, f);
      out.require(at(frame_class_3(three.dims3(f)), q) == brute, "arity 3");
      if (brute == 0) ++zero_cases;
      configs += 2;
    }
    SubspaceFamily coplanar{3, {{VectorModQ{1, 0, 0}}, {VectorModQ{0, 1, 0}}, {VectorModQ{1, 1, 0}}}};
    out.require(frame_count_bruteforce(coplanar, f) == 0, "coplanar lines brute force");
    out.require(frame_class_3(coplanar.dims3(f)).is_zero(), "coplanar lines class");
    ++configs;
  }
  out.require(configs >= 40, "too few configurations");
  if (out.ok) out.detail << configs << " configurations over F2 and F3, " << zero_cases << " random zero cases";
}

// ---- 6 -------------------------------------------------------------------------

void determinant_hypersurface(Outcome& out) {
  for (std::uint64_t q : {2, 3})
    out.require(det_hypersurface_count(2, PrimeField(q)) == det_hypersurface_count_bruteforce(2, PrimeField(q)),
                "l=2 q=" + std::to_string(q));
  std::size_t graphs = 0;
  for (const auto& f : corpus()) {
    if (f.graph.has_looping_edge()) continue;  // no injective Upsilon exists
    out.require(determinant(upsilon_map(f.graph, loop_basis(f.graph)).matrix()) == psi_spanning_trees(f.graph), f.name);
    ++graphs;
  }
  if (out.ok) out.detail << "counts l=2 q=2,3; det = Psi on " << graphs << " graphs";
}

// ---- 7 -------------------------------------------------------------------------

std::vector<const Fixture*> generator_fixtures() {
  std::vector<const Fixture*> out;
  for (const auto& f : corpus())
    if (f.theory && is_1pi(f.graph) && loop_number(f.graph) >= 1) out.push_back(&f);
  return out;
}

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

void hopf_axioms(Outcome& out) {
  std::size_t checked = 0;
  for (const Fixture* f : generator_fixtures()) {
    HopfAlgebra h(*f->theory);
    h.intern(f->graph);
    for (const auto& m : low_degree_monomials(h)) {
      HopfElement x{{m, 1}};
      HopfElement eps;
      if (counit(x) != 0) eps[GraphMonomial{}] = counit(x);
      out.require(h.left_iterated_coproduct(x) == h.right_iterated_coproduct(x), "coassociativity " + h.to_string(m));
      out.require(h.antipode_left(x) == eps, "S*id " + h.to_string(m));
      out.require(h.antipode_right(x) == eps, "id*S " + h.to_string(m));
      ++checked;
    }
  }
  if (out.ok) out.detail << checked << " elements";
}

// ---- 8 -------------------------------------------------------------------------

std::vector<Character> toy_characters(LaurentWindow w) {
  return {nested_character(1, w), nested_character(Rational(3, 2), w), mixed_character(1, w), mixed_character(-2, w),
          scaled_character(nested_character(1, w), Rational(1, 2)), scaled_character(mixed_character(2, w), 3)};
}

void bphz_birkhoff(Outcome& out) {
  const LaurentWindow w{12, 12};
  std::size_t pairs = 0;
  for (const Character& phi : toy_characters(w)) {
    for (const Fixture* f : generator_fixtures()) {
      HopfAlgebra h(*f->theory);
      BirkhoffSession session(h, phi);
      GraphMonomial m = h.generator(f->graph);
      BphzResult r = bphz_renormalize(phi, f->graph, *f->theory);
      const std::string tag = phi.name() + " " + f->name;
      out.require(session.positive(m) == r.renormalized, "phi_+ " + tag);
      out.require(session.negative(m) == r.counterterm, "phi_- " + tag);
      out.require(session.positive(m).is_regular(), "phi_+ regular " + tag);
      out.require(session.negative(m).is_pure_polar(), "phi_- polar " + tag);
      ++pairs;
    }
    const Fixture& a = fixture("double-bubble");
    HopfAlgebra h(*a.theory);
    BirkhoffSession session(h, phi);
    std::vector<GraphMonomial> gens{h.generator(a.graph), h.generator(fixture("bubble-chain").graph),
                                    h.generator(fixture("phi4-bubble").graph), h.generator(fixture("sunset").graph)};
    for (const auto& x : gens)
      for (const auto& y : gens)
        out.require(session.positive(multiply(x, y)) == session.positive(x) * session.positive(y),
                    "multiplicativity " + phi.name());
  }
  if (out.ok) out.detail << pairs << " character/graph pairs";
}

// ---- 9 -------------------------------------------------------------------------

void rota_baxter(Outcome& out) {
  std::mt19937_64 rng(9);
  const LaurentWindow w{12, 12};
  auto random_series = [&] {
    LaurentSeries s(w);
    const int low = -static_cast<int>(rng() % 4), high = static_cast<int>(rng() % 5);
    for (int k = low; k <= high; ++k) s.set(k, Rational(static_cast<long long>(rng() % 11) - 5, 1 + rng() % 4));
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    LaurentSeries x = random_series(), y = random_series();
    LaurentSeries lhs = rota_baxter_T(x) * rota_baxter_T(y);
    LaurentSeries rhs = rota_baxter_T(x * rota_baxter_T(y)) + rota_baxter_T(rota_baxter_T(x) * y) - rota_baxter_T(x * y);
    out.require(lhs == rhs, "trial " + std::to_string(trial));
  }
  if (out.ok) out.detail << "100 random pairs";
}

// ---- 10 ------------------------------------------------------------------------

double iterated_integral_quadrature(const GradedWord& w) {
  boost::math::quadrature::exp_sinh<double> integrator;
  std::function<double(std::size_t, double)> level = [&](std::size_t j, double lower) -> double {
    const double k = w[j];
    auto f = [&](double u) { return std::exp(-k * (lower + u)) * (j == 0 ? 1.0 : level(j - 1, lower + u)); };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
  };
  return level(w.size() - 1, 0.0);
}

void rg_coefficients(Outcome& out) {
  std::size_t words = 0;
  for (const auto& w : words_up_to(12)) {
    if (w.size() > 3 || *std::max_element(w.begin(), w.end()) > 4) continue;
    const double exact = to_double(iterated_integral_coeff(w));
    out.require(std::abs(iterated_integral_quadrature(w) / exact - 1.0) <= 1e-6, word_to_string(w));
    ++words;
  }
  const auto frame = universal_singular_frame(4);
  const LieSeries ones = gamma_minus(BetaElement{{1, 1, 1, 1}}, 4);
  out.require(frame.size() == ones.d.size(), "frame size");
  for (const auto& [w, c] : frame) out.require(ones.d.count(w) && ones.d.at(w) == c, "frame " + word_to_string(w));
  for (const auto& beta : {BetaElement{{1}}, BetaElement{{1, 1}}, BetaElement{{Rational(1, 2), Rational(-2), Rational(3)}}})
    out.require(scaling_check(beta, Rational(1), 4).ok(), "scaling_check");
  if (out.ok) out.detail << words << " words within 1e-6";
}

// ---- 11 ------------------------------------------------------------------------

void parametric_bubble(Outcome& out) {
  const Graph g = make_banana(2).with_legs({0, 1});
  for (double D : {2.5, 3.0, 3.5}) {
    const SimplexEstimate est = integrate_simplex(build_parametric_two_point(g, 1, D));
    const double exact = std::pow(std::tgamma(D / 2 - 1), 2) / std::tgamma(D - 2);
    const double diff = std::abs(est.estimate - exact);
    out.require(diff <= 3 * est.stderr_, "3 sigma at D=" + std::to_string(D));
    out.require(diff / exact <= 5e-3, "0.5% at D=" + std::to_string(D));
    out.detail << (out.ok ? "" : " ") << "D=" << D << ": " << est.estimate << " vs " << exact << "; ";
  }
  out.require(std::abs(std::pow(std::tgamma(0.5), 2) / std::tgamma(1.0) - std::numbers::pi) < 1e-14, "pi at D=3");
}

// ---- 12 ------------------------------------------------------------------------

double master_oracle(double D) {
  using std::tgamma;
  return std::pow(4 * std::numbers::pi, -D) * tgamma(2 - D / 2) * std::pow(tgamma(D / 2 - 1), 3) * tgamma(5 - D) *
         tgamma(D - 4) / (tgamma(D - 2) * tgamma(4 - D / 2) * tgamma(3 * D / 2 - 5));
}

void master_formula(Outcome& out) {
  const MasterValue at4 = eval_master_two_loop(4.0, 1.0);
  out.require(!at4.value && at4.pole.has_value(), "no pole reported at D=4");
  if (at4.pole) {
    const auto& f = at4.pole->singular_factors;
    out.require(std::find(f.begin(), f.end(), "Gamma(D-4)") != f.end(), "pole not attributed to Gamma(D-4)");
  }
  for (double D : {3.999, 4.001, 4.5}) out.require(eval_master_two_loop(D, 1.0).value.has_value(), "pole away from 4");
  // g(z) = z^2 f(4 - z) is smooth at 0; the residue is g'(0) by Richardson-extrapolated differences.
  auto g = [](double z) { return z * z * master_oracle(4.0 - z); };
  auto central = [&](double h) { return (g(h) - g(-h)) / (2 * h); };
  const double residue_fd = (4 * central(5e-4) - central(1e-3)) / 3;
  const NumericLaurent s = master_two_loop_laurent(4.0, 1.0, 1);
  const double rel = std::abs(s.coeff(-1) / residue_fd - 1.0);
  out.require(rel <= 1e-6, "residue mismatch " + std::to_string(rel));
  out.detail << (out.ok ? "" : "; ") << "residue " << s.coeff(-1) << ", relative difference " << rel;
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&);
  double time_limit_s;  // 0 = none
};

const Criterion kCriteria[] = {
    {"matrix-tree equivalence", matrix_tree, 10},
    {"banana class vs point count", banana_counts, 60},
    {"Euler characteristic", euler_characteristic, 0},
    {"Cremona identity", cremona, 0},
    {"frame formulas", frames, 0},
    {"determinant hypersurface", determinant_hypersurface, 0},
    {"Hopf axioms", hopf_axioms, 30},
    {"BPHZ equals Birkhoff", bphz_birkhoff, 0},
    {"Rota-Baxter identity", rota_baxter, 0},
    {"RG coefficients", rg_coefficients, 0},
    {"parametric bubble", parametric_bubble, 60},
    {"two-loop master formula", master_formula, 0},
};

bool run_criterion(std::size_t index) {
  const Criterion& c = kCriteria[index];
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.time_limit_s > 0) out.require(seconds < c.time_limit_s, "exceeded " + std::to_string(c.time_limit_s) + " s");
  std::cout << "criterion " << index + 1 << " (" << c.name << "): " << (out.ok ? "PASS" : "FAIL") << " [" << seconds
            << " s] " << out.detail.str() << std::endl;
  return out.ok;
}

}  // namespace
}  // namespace feynmot

int main(int argc, char** argv) {
  CLI::App app{"feynmot acceptance run"};
  std::size_t only = 0;
  app.add_option("--only", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  bool all = true;
  for (std::size_t i = 0; i < std::size(feynmot::kCriteria); ++i)
    if (only == 0 || only == i + 1) all = feynmot::run_criterion(i) && all;
  return all ? 0 : 1;
}
