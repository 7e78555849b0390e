#pragma once

#include "feynmot/graph.hpp"
#include "feynmot/parallel.hpp"
#include "feynmot/polynomial.hpp"
#include "feynmot/symanzik.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace feynmot {

// ---- momentum space ----------------------------------------------------------

/// Edge momentum k_e = sum_k loop[k] l_k + sum_j leg[j] p_j with propagator k_e^2 + m^2.
struct Propagator {
  std::size_t edge = 0;
  std::vector<int> loop;
  std::vector<int> leg;
  Rational mass2 = 0;
  /// e.g. "(l1 - p1)^2 + m^2".
  std::string to_string() const;
};

struct MomentumIntegrand {
  std::size_t loops = 0;
  std::vector<Propagator> propagators;
  /// One delta row per vertex (incidence matrix transposed).
  IncidenceMatrix constraints;
  Momenta momenta;
};

/// Loop momenta follow loop_basis(g); external momenta are routed along its tree.
MomentumIntegrand momentum_integrand(const Graph& g, const Momenta& p, const Rational& mass);

// ---- parametric representation ------------------------------------------------

struct ParametricIntegrand {
  Polynomial psi;
  /// Second Symanzik polynomial (massless case); unused when massive.
  RationalPolynomial P;
  bool massive = false;
  /// m^2 standing in for P in the massive zero-momentum case.
  Rational mass2 = 0;
  std::size_t n = 0;
  std::size_t loops = 0;
  double D = 4.0;
  /// Integrand P^{p_exponent} / Psi^{psi_exponent}.
  double p_exponent = 0.0;
  double psi_exponent = 0.0;
  /// Gamma(n - D l / 2) / (4 pi)^{l D / 2}; nullopt when the Gamma factor sits on a pole.
  std::optional<double> prefactor;
  /// n - D l / 2.
  double gamma_argument = 0.0;
};

/// Massless (mass == 0, momenta from the second Symanzik polynomial) or massive
/// zero-momentum (mass > 0, all momenta zero). Mixed input is rejected.
ParametricIntegrand build_parametric(const Graph& g, const Momenta& p, double D, const Rational& mass);
/// Two-leg graph with squared momentum flow p2 (massless).
ParametricIntegrand build_parametric_two_point(const Graph& g, const Rational& p2, double D);
/// The same integrand in D + z dimensions.
ParametricIntegrand dimreg_shift(const ParametricIntegrand& pi, double z);

/// pi^{z/2} lambda^{-z/2}; throws ValidationError unless lambda > 0.
std::complex<double> dimreg_gaussian(double lambda, std::complex<double> z);

// ---- simplex integration ---------------------------------------------------------

struct SimplexOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20240601;
  /// Dirichlet concentration of the importance sampler (1 = uniform).
  double alpha = 0.25;
  std::size_t threads = default_threads();
  /// Fail when stderr / |estimate| exceeds this (0 disables the check).
  double max_relative_error = 0.0;
};

struct SimplexEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo estimate of the integral of P^a / Psi^b over the simplex
/// sum t = 1 against dt_1 ... dt_{n-1} (volume 1/(n-1)!). Sample streams are
/// seeded per chunk, so the estimate does not depend on the thread count.
SimplexEstimate integrate_simplex(const ParametricIntegrand& pi, const SimplexOptions& options = {});

/// Same estimator for an arbitrary integrand f(t) with t on the simplex.
SimplexEstimate integrate_simplex(std::size_t n, const std::function<double(const double*)>& f,
                                  const SimplexOptions& options = {});

/// Tensor Gauss-Legendre rule on the simplex via collapsed coordinates.
double simplex_quadrature(std::size_t n, const std::function<double(const double*)>& f);

struct FeynmanTrickReport {
  double lhs = 0.0;  // 1 / prod q_i
  double rhs = 0.0;  // (n-1)! int dt / (sum t_i q_i)^n
  double relative_error = 0.0;
  bool ok = false;   // relative_error <= 1e-8
};
FeynmanTrickReport feynman_trick_check(const std::vector<Rational>& q);

// ---- Gamma functions and the two-loop master formula ------------------------------

/// Numeric Laurent series sum_{j >= low} c_j x^j kept through x^order.
struct NumericLaurent {
  int low = 0;
  std::vector<double> c;  // c[i] is the coefficient of x^{low + i}

  double coeff(int j) const;
  int order() const { return low + static_cast<int>(c.size()) - 1; }
  /// Lowest exponent with a coefficient whose magnitude exceeds tol.
  int valuation(double tol = 0.0) const;
};
NumericLaurent operator*(const NumericLaurent& a, const NumericLaurent& b);

/// Gamma(a + w) around w = 0 through w^order; a simple pole iff a is a
/// non-positive integer, with residue (-1)^k / k! at a = -k.
NumericLaurent gamma_laurent(double a, int order);

/// 1 / Gamma(a + w) through w^order (entire).
NumericLaurent reciprocal_gamma_series(double a, int order);

struct MasterPoleReport {
  double D = 0.0;
  /// Numerator Gamma factors that are singular at D, e.g. "Gamma(D-4)".
  std::vector<std::string> singular_factors;
  int pole_order = 0;
};

struct MasterValue {
  std::optional<double> value;
  std::optional<MasterPoleReport> pole;
};

/// (4 pi)^{-D} G(2-D/2) G(D/2-1)^3 G(5-D) G(D-4) / (G(D-2) G(4-D/2) G(3D/2-5)) (p^2)^{D-5}.
double master_two_loop_direct(double D, double p2);
MasterValue eval_master_two_loop(double D, double p2);
/// Expansion in z of the master formula at D = D0 - z, through z^order.
NumericLaurent master_two_loop_laurent(double D0, double p2, int order);

}  // namespace feynmot
