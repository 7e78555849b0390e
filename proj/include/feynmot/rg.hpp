#pragma once

#include "feynmot/hopf.hpp"
#include "feynmot/laurent.hpp"
#include "feynmot/renorm.hpp"

#include <map>
#include <memory>
#include <vector>

namespace feynmot {

/// Word (k1, ..., kn) standing for beta_{k1} ... beta_{kn}.
using GradedWord = std::vector<unsigned>;

unsigned word_degree(const GradedWord& w);
std::string word_to_string(const GradedWord& w);

/// All nonempty words of total degree <= max_degree, in length-then-lex order.
std::vector<GradedWord> words_up_to(unsigned max_degree);

/// prod_j 1 / (k1 + ... + kj): the ordered-simplex integral of prod e^{-s_j k_j}
/// over s1 >= ... >= sn >= 0. The empty word gives 1.
Rational iterated_integral_coeff(const GradedWord& w);

/// Multipliers beta_1, ..., beta_N (index k-1 holds beta_k).
struct BetaElement {
  std::vector<Rational> weights;
  unsigned max_degree() const { return static_cast<unsigned>(weights.size()); }
  /// prod_j beta_{k_j}; zero when a letter exceeds max_degree().
  Rational multiplier(const GradedWord& w) const;
};

/// gamma_-(z) = 1 + sum_n d_n / z^n with d_n = sum_{|w| = n} c_w beta_w.
/// `d` holds c_w beta_w for every word of degree <= N.
struct LieSeries {
  unsigned truncation = 0;
  std::map<GradedWord, Rational> d;
  /// d_n as a scalar: the sum of the coefficients of words of length n.
  Rational level_sum(unsigned n) const;
};

LieSeries gamma_minus(const BetaElement& beta, unsigned N);

/// Coefficient table of the universal singular frame: word -> c_w, meaning
/// the term v^{deg w} / z^{|w|} * c_w e_{-k1} ... e_{-kn}.
std::map<GradedWord, Rational> universal_singular_frame(unsigned N);
/// c_w v^{deg w}.
Rational frame_coefficient(const GradedWord& w, const Rational& v);

/// Shuffles of u and v with multiplicity.
std::map<GradedWord, BigInt> shuffle(const GradedWord& u, const GradedWord& v);

/// Group element of the truncated word group with Laurent-series coefficients.
/// Product: (g ⋄ h)_w = sum_{uv = w} g_v h_u.
using WordSeries = std::map<GradedWord, LaurentSeries>;

WordSeries word_product(const WordSeries& g, const WordSeries& h, unsigned N, LaurentWindow window);
WordSeries word_inverse(const WordSeries& g, unsigned N, LaurentWindow window);

/// Te^{-(1/z) int_0^inf theta_{-t}(beta) dt}: coefficient (-1/z)^n c_w beta_w.
WordSeries counterterm_series(const BetaElement& beta, LaurentWindow window);
/// Te^{-(1/z) int_0^S theta_{-t}(beta) dt} at S = -z log_mu; regular in z.
WordSeries finite_range_series(const BetaElement& beta, const Rational& log_mu, LaurentWindow window);
/// gamma_mu(z) = gamma_-^{-1} ⋄ Te_{[0, -z log mu]} (regular representative 1).
WordSeries loop_series(const BetaElement& beta, const Rational& log_mu, LaurentWindow window);
/// theta_u with u = t z: multiplies the coefficient of w by exp(t z deg w).
WordSeries theta(const WordSeries& g, const Rational& t, LaurentWindow window);
/// Negative part of the Birkhoff factorization g = g_-^{-1} ⋄ g_+.
WordSeries word_birkhoff_negative(const WordSeries& g, unsigned N, LaurentWindow window);

struct ScalingReport {
  bool scaling_holds = false;      // gamma_{l + t} = theta_{tz}(gamma_l)
  bool negative_part_fixed = false;  // Birkhoff negative parts agree at l and l + t
  bool ok() const { return scaling_holds && negative_part_fixed; }
};

/// Checks the scaling identity and mu-independence of the negative part at
/// log mu = base_log_mu and base_log_mu + t, keeping z^M. With
/// fake_counterterm the loop is built from a mu-dependent counterterm
/// (a negative control that must fail). Throws TruncationError when M is too
/// small for the comparisons to be meaningful.
ScalingReport scaling_check(const BetaElement& beta, const Rational& t, int M,
                            const Rational& base_log_mu = Rational(1, 3), bool fake_counterterm = false);

/// Character phi(X) = sum_w gamma_w(z) beta_w(X) attached to the loop at
/// log_mu, with beta_k the infinitesimal character that takes the value
/// beta.weights[k-1] on generators[k-1] (loop number k) and vanishes elsewhere.
/// beta_w = beta_{kn} ⋆ ... ⋆ beta_{k1}.
class BetaBridge {
 public:
  BetaBridge(const BetaElement& beta, const std::vector<Graph>& generators, const Theory& theory,
             const Rational& log_mu, LaurentWindow window);

  Character character() const;
  /// sum_w (gamma_-)_w beta_w(X): the predicted Birkhoff negative part.
  LaurentSeries predicted_negative(const Graph& g);
  LaurentSeries predicted_negative(const GraphMonomial& m);
  /// The Hopf algebra the bridge interns graphs into.
  HopfAlgebra& algebra();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace feynmot
