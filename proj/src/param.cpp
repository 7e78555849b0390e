#include "feynmot/param.hpp"

#include "feynmot/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

namespace feynmot {

// ---- momentum space ----------------------------------------------------------

std::string Propagator::to_string() const {
  std::string body;
  auto append = [&body](int c, const std::string& name) {
    if (c == 0) return;
    if (body.empty())
      body += c < 0 ? "-" : "";
    else
      body += c < 0 ? " - " : " + ";
    if (std::abs(c) != 1) body += std::to_string(std::abs(c)) + "*";
    body += name;
  };
  for (std::size_t k = 0; k < loop.size(); ++k) append(loop[k], "l" + std::to_string(k + 1));
  for (std::size_t j = 0; j < leg.size(); ++j) append(leg[j], "p" + std::to_string(j + 1));
  if (body.empty()) body = "0";
  std::string out = "(" + body + ")^2";
  if (mass2 != 0) out += " + " + feynmot::to_string(mass2);
  return out;
}

MomentumIntegrand momentum_integrand(const Graph& g, const Momenta& p, const Rational& mass) {
  if (!g.is_connected()) throw ValidationError("momentum_integrand: graph is disconnected");
  if (mass < 0) throw ValidationError("mass must be non-negative");
  p.validate(g);
  MomentumIntegrand mi;
  LoopBasis basis = loop_basis(g);
  mi.loops = basis.num_loops();
  mi.constraints = incidence_matrix(g);
  mi.momenta = p;
  std::vector<bool> in_tree(g.num_edges(), false);
  for (auto e : basis.tree_edges) in_tree[e] = true;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    Propagator prop;
    prop.edge = e;
    prop.loop = basis.eta[e];
    prop.leg.assign(g.num_legs(), 0);
    prop.mass2 = mass * mass;
    if (in_tree[e]) {
      // Vertices reached from the target without crossing e inside the tree.
      std::vector<bool> side(g.num_vertices(), false);
      std::queue<std::size_t> todo;
      side[g.edge(e).target] = true;
      todo.push(g.edge(e).target);
      while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop();
        for (auto f : basis.tree_edges) {
          if (f == e) continue;
          const Edge& edge = g.edge(f);
          std::size_t w = edge.source == v ? edge.target : edge.target == v ? edge.source : SIZE_MAX;
          if (w != SIZE_MAX && !side[w]) {
            side[w] = true;
            todo.push(w);
          }
        }
      }
      for (std::size_t j = 0; j < g.num_legs(); ++j)
        if (side[g.legs()[j]]) prop.leg[j] = -1;
    }
    mi.propagators.push_back(std::move(prop));
  }
  return mi;
}

// ---- parametric representation ------------------------------------------------

namespace {

bool near_nonpositive_integer(double a) {
  double r = std::round(a);
  return r <= 0 && std::abs(a - r) < 1e-12;
}

void fill_exponents(ParametricIntegrand& pi) {
  const double n = static_cast<double>(pi.n), l = static_cast<double>(pi.loops);
  pi.p_exponent = -n + pi.D * l / 2.0;
  pi.psi_exponent = -n + (l + 1.0) * pi.D / 2.0;
  pi.gamma_argument = n - pi.D * l / 2.0;
  if (near_nonpositive_integer(pi.gamma_argument))
    pi.prefactor.reset();
  else
    pi.prefactor = std::tgamma(pi.gamma_argument) / std::pow(4.0 * std::numbers::pi, l * pi.D / 2.0);
}

}  // namespace

ParametricIntegrand build_parametric(const Graph& g, const Momenta& p, double D, const Rational& mass) {
  if (!(D > 0)) throw ValidationError("spacetime dimension must be positive");
  if (mass < 0) throw ValidationError("mass must be non-negative");
  if (!g.is_connected()) throw ValidationError("build_parametric: graph is disconnected");
  p.validate(g);
  bool zero_momenta = true;
  for (const auto& [leg, vec] : p.p)
    for (const auto& x : vec)
      if (x != 0) zero_momenta = false;
  ParametricIntegrand pi;
  pi.psi = psi_spanning_trees(g);
  pi.n = g.num_edges();
  pi.loops = loop_number(g);
  pi.D = D;
  if (mass > 0) {
    if (!zero_momenta) throw ValidationError("unsupported case: nonzero mass with nonzero external momenta");
    pi.massive = true;
    pi.mass2 = mass * mass;
  } else {
    pi.P = second_symanzik(g, p);
  }
  fill_exponents(pi);
  return pi;
}

ParametricIntegrand build_parametric_two_point(const Graph& g, const Rational& p2, double D) {
  if (p2 <= 0) throw ValidationError("p2 must be positive");
  ParametricIntegrand pi = build_parametric(g, Momenta::unit_two_point(g), D, Rational(0));
  pi.P = p2 * pi.P;
  return pi;
}

ParametricIntegrand dimreg_shift(const ParametricIntegrand& pi, double z) {
  ParametricIntegrand out = pi;
  out.D = pi.D + z;
  fill_exponents(out);
  return out;
}

std::complex<double> dimreg_gaussian(double lambda, std::complex<double> z) {
  if (!(lambda > 0)) throw ValidationError("dimreg_gaussian: lambda must be positive");
  return std::exp(z / 2.0 * (std::log(std::numbers::pi) - std::log(lambda)));
}

// ---- simplex integration ---------------------------------------------------------

namespace {

constexpr std::size_t kSampleChunks = 64;

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

SimplexEstimate integrate_simplex(std::size_t n, const std::function<double(const double*)>& f,
                                  const SimplexOptions& options) {
  if (n == 0) throw ValidationError("integrate_simplex: no variables");
  if (!(options.alpha > 0)) throw ValidationError("integrate_simplex: alpha must be positive");
  if (options.samples < 2) throw ValidationError("integrate_simplex: need at least two samples");
  SimplexEstimate out;
  out.seed = options.seed;
  out.samples = options.samples;
  if (n == 1) {
    double one = 1.0;
    out.estimate = f(&one);
    return out;
  }
  const double alpha = options.alpha;
  const double log_norm = std::lgamma(n * alpha) - static_cast<double>(n) * std::lgamma(alpha);
  std::vector<double> sums(kSampleChunks, 0.0), squares(kSampleChunks, 0.0);
  std::vector<bool> finite(kSampleChunks, true);
  parallel_for(kSampleChunks, options.threads, [&](std::size_t c) {
    const std::uint64_t begin = options.samples * c / kSampleChunks, end = options.samples * (c + 1) / kSampleChunks;
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::gamma_distribution<double> gamma(alpha + 1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> logs(n), x(n);
    Neumaier s, s2;
    for (std::uint64_t i = begin; i < end; ++i) {
      // Gamma(alpha) = Gamma(alpha + 1) U^{1/alpha}, kept in log space.
      double top = -INFINITY;
      for (std::size_t k = 0; k < n; ++k) {
        double u = unit(rng);
        while (u == 0.0) u = unit(rng);
        logs[k] = std::log(gamma(rng)) + std::log(u) / alpha;
        top = std::max(top, logs[k]);
      }
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) total += std::exp(logs[k] - top);
      const double log_sum = top + std::log(total);
      double log_density = log_norm;
      for (std::size_t k = 0; k < n; ++k) {
        double lx = logs[k] - log_sum;
        x[k] = std::exp(lx);
        log_density += (alpha - 1.0) * lx;
      }
      double w = f(x.data()) * std::exp(-log_density);
      if (!std::isfinite(w)) finite[c] = false;
      s.add(w);
      s2.add(w * w);
    }
    sums[c] = s.value();
    squares[c] = s2.value();
  });
  if (std::find(finite.begin(), finite.end(), false) != finite.end())
    throw ValidationError("integrate_simplex: integrand is not finite on the sampled points");
  Neumaier s, s2;
  for (std::size_t c = 0; c < kSampleChunks; ++c) {
    s.add(sums[c]);
    s2.add(squares[c]);
  }
  const double m = static_cast<double>(options.samples);
  const double mean = s.value() / m;
  const double var = std::max(0.0, s2.value() / m - mean * mean) * m / (m - 1.0);
  out.estimate = mean;
  out.stderr_ = std::sqrt(var / m);
  if (options.max_relative_error > 0 && !(out.stderr_ <= options.max_relative_error * std::abs(out.estimate))) {
    std::ostringstream msg;
    msg << "integrate_simplex: no convergence within " << options.samples << " samples (estimate " << out.estimate
        << ", stderr " << out.stderr_ << ")";
    throw BudgetError(msg.str());
  }
  return out;
}

SimplexEstimate integrate_simplex(const ParametricIntegrand& pi, const SimplexOptions& options) {
  CompiledPolynomial psi(pi.psi), P(pi.P);
  const double mass_factor = pi.massive ? std::pow(to_double(pi.mass2), pi.p_exponent) : 1.0;
  const double a = pi.p_exponent, b = pi.psi_exponent;
  const bool massive = pi.massive;
  return integrate_simplex(pi.n, [&](const double* t) {
    double value = std::pow(psi(t), -b);
    if (massive) return value * mass_factor;
    return value * std::pow(P(t), a);
  }, options);
}

namespace {

void quadrature_level(std::size_t level, std::size_t n, double remaining, double weight, std::vector<double>& t,
                      const std::function<double(const double*)>& f, double& total) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  if (level + 1 == n) {
    t[level] = remaining;
    total += weight * f(t.data());
    return;
  }
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  // Rule is symmetric on [-1, 1]; nodes are stored for the non-negative half.
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    for (int sign : {1, -1}) {
      if (sign < 0 && abscissa[i] == 0.0) continue;
      double u = 0.5 * (1.0 + sign * abscissa[i]);
      t[level] = remaining * u;
      quadrature_level(level + 1, n, remaining * (1.0 - u), weight * 0.5 * weights[i] * remaining, t, f, total);
    }
  }
}

}  // namespace

double simplex_quadrature(std::size_t n, const std::function<double(const double*)>& f) {
  if (n == 0) throw ValidationError("simplex_quadrature: no variables");
  if (n > 6) throw BudgetError("simplex_quadrature: more than 6 variables");
  std::vector<double> t(n);
  double total = 0.0;
  quadrature_level(0, n, 1.0, 1.0, t, f, total);
  return total;
}

FeynmanTrickReport feynman_trick_check(const std::vector<Rational>& q) {
  if (q.empty()) throw ValidationError("feynman_trick_check: no factors");
  std::vector<double> qd;
  for (const auto& x : q) {
    if (x <= 0) throw ValidationError("feynman_trick_check: factors must be positive");
    qd.push_back(to_double(x));
  }
  const std::size_t n = qd.size();
  FeynmanTrickReport r;
  r.lhs = 1.0;
  for (double x : qd) r.lhs /= x;
  double integral = simplex_quadrature(n, [&](const double* t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += t[i] * qd[i];
    return std::pow(s, -static_cast<double>(n));
  });
  r.rhs = std::tgamma(static_cast<double>(n)) * integral;
  r.relative_error = std::abs(r.rhs - r.lhs) / std::abs(r.lhs);
  r.ok = r.relative_error <= 1e-8;
  return r;
}

// ---- Gamma functions ----------------------------------------------------------------

double NumericLaurent::coeff(int j) const {
  if (j > order()) throw TruncationError("NumericLaurent: coefficient beyond the kept order");
  if (j < low) return 0.0;
  return c[static_cast<std::size_t>(j - low)];
}

int NumericLaurent::valuation(double tol) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > tol) return low + static_cast<int>(i);
  return order() + 1;
}

NumericLaurent operator*(const NumericLaurent& a, const NumericLaurent& b) {
  NumericLaurent r;
  r.low = a.low + b.low;
  const int order = std::min(a.order() + b.low, b.order() + a.low);
  r.c.assign(static_cast<std::size_t>(order - r.low + 1), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      std::size_t k = i + j;
      if (k < r.c.size()) r.c[k] += a.c[i] * b.c[j];
    }
  return r;
}

namespace {

// exp(s(w)) for s(w) = sum_{k>=1} s_k w^k, through w^order.
std::vector<double> exp_series(const std::vector<double>& s, int order) {
  std::vector<double> e(static_cast<std::size_t>(order + 1), 0.0);
  e[0] = 1.0;
  for (int m = 1; m <= order; ++m) {
    double acc = 0.0;
    for (int k = 1; k <= m && k < static_cast<int>(s.size()); ++k) acc += k * s[k] * e[m - k];
    e[m] = acc / m;
  }
  return e;
}

// log Gamma(a + w) - log Gamma(a) = sum_k psi^{(k-1)}(a) w^k / k! at a regular point.
std::vector<double> log_gamma_shift(double a, int order) {
  std::vector<double> s(static_cast<std::size_t>(order + 1), 0.0);
  double fact = 1.0;
  for (int k = 1; k <= order; ++k) {
    fact *= k;
    s[k] = boost::math::polygamma(k - 1, a) / fact;
  }
  return s;
}

// prod_{j=1}^{k} 1 / (w - j) through w^order.
NumericLaurent inverse_shifted_product(int k, int order) {
  NumericLaurent r{0, std::vector<double>(static_cast<std::size_t>(order + 1), 0.0)};
  r.c[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    NumericLaurent f{0, std::vector<double>(static_cast<std::size_t>(order + 1))};
    for (int m = 0; m <= order; ++m) f.c[m] = -std::pow(1.0 / j, m + 1);
    r = r * f;
  }
  return r;
}

}  // namespace

NumericLaurent gamma_laurent(double a, int order) {
  if (order < 0) throw ValidationError("gamma_laurent: order must be non-negative");
  if (near_nonpositive_integer(a)) {
    const int k = static_cast<int>(-std::round(a));
    // Gamma(w - k) = Gamma(1 + w) / (w (w - 1) ... (w - k)).
    NumericLaurent g1{0, exp_series(log_gamma_shift(1.0, order + 1), order + 1)};
    NumericLaurent r = g1 * inverse_shifted_product(k, order + 1);
    r.low = -1;
    return r;
  }
  auto e = exp_series(log_gamma_shift(a, order), order);
  const double g = boost::math::tgamma(a);
  for (auto& x : e) x *= g;
  return NumericLaurent{0, e};
}

NumericLaurent reciprocal_gamma_series(double a, int order) {
  if (near_nonpositive_integer(a)) {
    const int k = static_cast<int>(-std::round(a));
    auto s = log_gamma_shift(1.0, order);
    for (auto& x : s) x = -x;
    NumericLaurent r{0, exp_series(s, order)};
    // Multiply by w (w - 1) ... (w - k).
    for (int j = 0; j <= k; ++j) {
      NumericLaurent f{0, std::vector<double>(static_cast<std::size_t>(order + 1), 0.0)};
      f.c[0] = -j;
      if (order >= 1) f.c[1] = 1.0;
      r = r * f;
    }
    return r;
  }
  auto s = log_gamma_shift(a, order);
  for (auto& x : s) x = -x;
  auto e = exp_series(s, order);
  const double g = boost::math::tgamma(a);
  for (auto& x : e) x /= g;
  return NumericLaurent{0, e};
}

// ---- master formula -----------------------------------------------------------

namespace {

struct GammaFactor {
  double alpha, beta;  // Gamma(alpha + beta D)
  const char* name;
};

constexpr GammaFactor kNumerator[] = {
    {2.0, -0.5, "Gamma(2-D/2)"}, {-1.0, 0.5, "Gamma(D/2-1)"}, {-1.0, 0.5, "Gamma(D/2-1)"},
    {-1.0, 0.5, "Gamma(D/2-1)"}, {5.0, -1.0, "Gamma(5-D)"},   {-4.0, 1.0, "Gamma(D-4)"},
};
constexpr GammaFactor kDenominator[] = {
    {-2.0, 1.0, "Gamma(D-2)"}, {4.0, -0.5, "Gamma(4-D/2)"}, {-5.0, 1.5, "Gamma(3D/2-5)"}};

// Substitute w = -beta z into a series in w.
NumericLaurent rescale(NumericLaurent s, double beta) {
  for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] *= std::pow(-beta, s.low + static_cast<int>(i));
  return s;
}

NumericLaurent exp_linear_series(double rate, double scale, int order) {
  NumericLaurent r{0, std::vector<double>(static_cast<std::size_t>(order + 1))};
  double term = scale;
  for (int m = 0; m <= order; ++m) {
    r.c[m] = term;
    term *= rate / (m + 1);
  }
  return r;
}

}  // namespace

double master_two_loop_direct(double D, double p2) {
  double num = 1.0, den = 1.0;
  for (const auto& f : kNumerator) num *= std::tgamma(f.alpha + f.beta * D);
  for (const auto& f : kDenominator) den *= std::tgamma(f.alpha + f.beta * D);
  return std::pow(4.0 * std::numbers::pi, -D) * num / den * std::pow(p2, D - 5.0);
}

NumericLaurent master_two_loop_laurent(double D0, double p2, int order) {
  if (!(p2 > 0)) throw ValidationError("p2 must be positive");
  const int work = order + 8;
  NumericLaurent r{0, {1.0}};
  r.c.assign(static_cast<std::size_t>(work + 1), 0.0);
  r.c[0] = 1.0;
  for (const auto& f : kNumerator) r = r * rescale(gamma_laurent(f.alpha + f.beta * D0, work), f.beta);
  for (const auto& f : kDenominator) r = r * rescale(reciprocal_gamma_series(f.alpha + f.beta * D0, work), f.beta);
  const double four_pi = 4.0 * std::numbers::pi;
  r = r * exp_linear_series(std::log(four_pi), std::pow(four_pi, -D0), work);
  r = r * exp_linear_series(-std::log(p2), std::pow(p2, D0 - 5.0), work);
  if (r.order() < order) throw InternalError("master_two_loop_laurent: lost precision");
  r.c.resize(static_cast<std::size_t>(order - r.low + 1));
  return r;
}

MasterValue eval_master_two_loop(double D, double p2) {
  if (!(p2 > 0)) throw ValidationError("p2 must be positive");
  MasterValue out;
  std::vector<std::string> singular;
  bool any_singular = false;
  for (const auto& f : kNumerator)
    if (near_nonpositive_integer(f.alpha + f.beta * D)) {
      any_singular = true;
      if (std::find(singular.begin(), singular.end(), f.name) == singular.end()) singular.emplace_back(f.name);
    }
  for (const auto& f : kDenominator)
    if (near_nonpositive_integer(f.alpha + f.beta * D)) any_singular = true;
  if (!any_singular) {
    out.value = master_two_loop_direct(D, p2);
    return out;
  }
  NumericLaurent s = master_two_loop_laurent(D, p2, 2);
  const int v = s.valuation();
  if (v < 0) {
    out.pole = MasterPoleReport{D, singular, -v};
  } else {
    out.value = s.coeff(0);
  }
  return out;
}

}  // namespace feynmot
