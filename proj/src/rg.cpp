#include "feynmot/rg.hpp"

#include "feynmot/errors.hpp"

#include <numeric>

namespace feynmot {

unsigned word_degree(const GradedWord& w) { return std::accumulate(w.begin(), w.end(), 0u); }

std::string word_to_string(const GradedWord& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

std::vector<GradedWord> words_up_to(unsigned max_degree) {
  std::vector<GradedWord> out, frontier{{}};
  while (!frontier.empty()) {
    std::vector<GradedWord> next;
    for (const auto& w : frontier) {
      unsigned d = word_degree(w);
      for (unsigned k = 1; d + k <= max_degree; ++k) {
        GradedWord x = w;
        x.push_back(k);
        out.push_back(x);
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Rational iterated_integral_coeff(const GradedWord& w) {
  Rational c = 1;
  unsigned partial = 0;
  for (unsigned k : w) {
    if (k == 0) throw ValidationError("word letters must be positive degrees");
    partial += k;
    c /= partial;
  }
  return c;
}

Rational BetaElement::multiplier(const GradedWord& w) const {
  Rational m = 1;
  for (unsigned k : w) {
    if (k == 0 || k > weights.size()) return 0;
    m *= weights[k - 1];
  }
  return m;
}

Rational LieSeries::level_sum(unsigned n) const {
  Rational total = 0;
  for (const auto& [w, c] : d)
    if (w.size() == n) total += c;
  return total;
}

LieSeries gamma_minus(const BetaElement& beta, unsigned N) {
  if (N < 1) throw ValidationError("gamma_minus: truncation must be at least 1");
  LieSeries s;
  s.truncation = N;
  for (const auto& w : words_up_to(N)) {
    Rational c = iterated_integral_coeff(w) * beta.multiplier(w);
    if (c != 0) s.d[w] = c;
  }
  return s;
}

std::map<GradedWord, Rational> universal_singular_frame(unsigned N) {
  if (N < 1) throw ValidationError("universal_singular_frame: truncation must be at least 1");
  std::map<GradedWord, Rational> table;
  for (const auto& w : words_up_to(N)) table[w] = iterated_integral_coeff(w);
  return table;
}

Rational frame_coefficient(const GradedWord& w, const Rational& v) {
  return iterated_integral_coeff(w) * pow(v, static_cast<int>(word_degree(w)));
}

std::map<GradedWord, BigInt> shuffle(const GradedWord& u, const GradedWord& v) {
  if (u.empty()) return {{v, BigInt(1)}};
  if (v.empty()) return {{u, BigInt(1)}};
  std::map<GradedWord, BigInt> out;
  GradedWord u_tail(u.begin() + 1, u.end()), v_tail(v.begin() + 1, v.end());
  for (auto& [w, c] : shuffle(u_tail, v)) {
    GradedWord x{u.front()};
    x.insert(x.end(), w.begin(), w.end());
    out[x] += c;
  }
  for (auto& [w, c] : shuffle(u, v_tail)) {
    GradedWord x{v.front()};
    x.insert(x.end(), w.begin(), w.end());
    out[x] += c;
  }
  return out;
}

namespace {

LaurentSeries get(const WordSeries& g, const GradedWord& w, LaurentWindow window) {
  if (w.empty()) return LaurentSeries::constant(1, window);
  auto it = g.find(w);
  return it == g.end() ? LaurentSeries(window) : it->second;
}

std::vector<GradedWord> words_with_unit(unsigned N) {
  std::vector<GradedWord> all{{}};
  for (auto& w : words_up_to(N)) all.push_back(std::move(w));
  return all;
}

}  // namespace

WordSeries word_product(const WordSeries& g, const WordSeries& h, unsigned N, LaurentWindow window) {
  WordSeries out;
  for (const auto& w : words_with_unit(N)) {
    LaurentSeries total(window);
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
      GradedWord u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
      total += get(g, v, window) * get(h, u, window);
    }
    out[w] = total;
  }
  return out;
}

WordSeries word_inverse(const WordSeries& g, unsigned N, LaurentWindow window) {
  WordSeries inv;
  inv[{}] = LaurentSeries::constant(1, window);
  // words_up_to lists shorter words first, so every prefix is ready.
  for (const auto& w : words_up_to(N)) {
    LaurentSeries total(window);
    for (std::size_t cut = 0; cut < w.size(); ++cut) {
      GradedWord u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
      total -= get(g, v, window) * get(inv, u, window);
    }
    inv[w] = total;
  }
  return inv;
}

WordSeries counterterm_series(const BetaElement& beta, LaurentWindow window) {
  WordSeries s;
  s[{}] = LaurentSeries::constant(1, window);
  for (const auto& w : words_up_to(beta.max_degree())) {
    Rational c = iterated_integral_coeff(w) * beta.multiplier(w);
    if (w.size() % 2) c = -c;
    s[w] = LaurentSeries::monomial(c, -static_cast<int>(w.size()), window);
  }
  return s;
}

namespace {

// Power series in S of the ordered integral over S >= s1 >= ... >= sn >= 0 of
// prod e^{-s_j k_j}, kept through S^degree.
std::vector<Rational> finite_range_integral(const GradedWord& w, std::size_t degree) {
  std::vector<Rational> inner(degree + 1, Rational(0));
  inner[0] = 1;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    // exp(-k s) * inner(s), then integrate from 0 to S.
    std::vector<Rational> e(degree + 1), prod(degree + 1, Rational(0)), out(degree + 1, Rational(0));
    Rational term = 1;
    for (std::size_t m = 0; m <= degree; ++m) {
      e[m] = term;
      term = term * Rational(-static_cast<long long>(*it)) / Rational(static_cast<long long>(m + 1));
    }
    for (std::size_t a = 0; a <= degree; ++a)
      for (std::size_t b = 0; a + b <= degree; ++b) prod[a + b] += e[a] * inner[b];
    for (std::size_t m = 0; m < degree; ++m) out[m + 1] = prod[m] / Rational(static_cast<long long>(m + 1));
    inner = std::move(out);
  }
  return inner;
}

}  // namespace

WordSeries finite_range_series(const BetaElement& beta, const Rational& log_mu, LaurentWindow window) {
  WordSeries s;
  s[{}] = LaurentSeries::constant(1, window);
  for (const auto& w : words_up_to(beta.max_degree())) {
    const int n = static_cast<int>(w.size());
    const Rational mult = beta.multiplier(w);
    LaurentSeries coeff(window);
    if (mult != 0) {
      auto series = finite_range_integral(w, static_cast<std::size_t>(window.M + n));
      // (-1/z)^n a_m S^m with S = -z log_mu gives z^{m-n}.
      for (std::size_t m = static_cast<std::size_t>(n); m < series.size(); ++m) {
        Rational c = series[m] * pow(-log_mu, static_cast<int>(m)) * mult;
        if (n % 2) c = -c;
        coeff.set(static_cast<int>(m) - n, c);
      }
    }
    s[w] = coeff;
  }
  return s;
}

WordSeries loop_series(const BetaElement& beta, const Rational& log_mu, LaurentWindow window) {
  const unsigned N = beta.max_degree();
  return word_product(word_inverse(counterterm_series(beta, window), N, window),
                      finite_range_series(beta, log_mu, window), N, window);
}

WordSeries theta(const WordSeries& g, const Rational& t, LaurentWindow window) {
  WordSeries out;
  for (const auto& [w, c] : g)
    out[w] = LaurentSeries::exp_linear(t * Rational(static_cast<long long>(word_degree(w))), window) * c;
  return out;
}

WordSeries word_birkhoff_negative(const WordSeries& g, unsigned N, LaurentWindow window) {
  WordSeries neg;
  neg[{}] = LaurentSeries::constant(1, window);
  for (const auto& w : words_up_to(N)) {
    LaurentSeries bar = get(g, w, window);
    for (std::size_t cut = 1; cut < w.size(); ++cut) {
      GradedWord u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
      bar += get(neg, v, window) * get(g, u, window);
    }
    neg[w] = -rota_baxter_T(bar);
  }
  return neg;
}

namespace {

bool same(const WordSeries& a, const WordSeries& b, unsigned N, LaurentWindow window) {
  for (const auto& w : words_up_to(N))
    if (!(get(a, w, window) == get(b, w, window))) return false;
  return true;
}

WordSeries fake_loop(const BetaElement& beta, const Rational& log_mu, LaurentWindow window) {
  const unsigned N = beta.max_degree();
  WordSeries fake = counterterm_series(beta, window);
  for (auto& [w, c] : fake) c = pow(1 + log_mu, static_cast<int>(w.size())) * c;
  return word_product(word_inverse(fake, N, window), finite_range_series(beta, log_mu, window), N, window);
}

}  // namespace

ScalingReport scaling_check(const BetaElement& beta, const Rational& t, int M, const Rational& base_log_mu,
                            bool fake_counterterm) {
  const unsigned N = beta.max_degree();
  if (N < 1) throw ValidationError("scaling_check: beta has no components");
  if (M < 1) throw TruncationError("scaling_check: order M must be at least 1");
  LaurentWindow window{static_cast<int>(2 * N), M};
  auto build = [&](const Rational& l) {
    return fake_counterterm ? fake_loop(beta, l, window) : loop_series(beta, l, window);
  };
  WordSeries g0 = build(base_log_mu), g1 = build(base_log_mu + t);
  ScalingReport r;
  r.scaling_holds = same(g1, theta(g0, t, window), N, window);
  r.negative_part_fixed =
      same(word_birkhoff_negative(g0, N, window), word_birkhoff_negative(g1, N, window), N, window);
  return r;
}

struct BetaBridge::Impl {
  BetaElement beta;
  std::shared_ptr<HopfAlgebra> h;
  std::vector<std::size_t> generator_ids;
  LaurentWindow window;
  WordSeries loop;
  WordSeries counterterm;
  std::map<std::pair<GradedWord, GraphMonomial>, Rational> memo;

  // (beta_{a1} ⋆ beta_{a2} ⋆ ...)(m) for letters a = (a1, a2, ...).
  Rational functional(const GradedWord& letters, const GraphMonomial& m) {
    if (letters.empty()) return m.empty() ? Rational(1) : Rational(0);
    if (word_degree(letters) != h->degree(m)) return 0;
    auto key = std::make_pair(letters, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const unsigned k = letters.front();
    const GraphMonomial target{generator_ids[k - 1]};
    GradedWord rest(letters.begin() + 1, letters.end());
    Rational total = 0;
    for (const auto& [pair, c] : h->coproduct(m)) {
      if (pair.first != target) continue;
      total += Rational(c) * beta.weights[k - 1] * functional(rest, pair.second);
    }
    memo.emplace(std::move(key), total);
    return total;
  }

  LaurentSeries pair(const WordSeries& series, const GraphMonomial& m) {
    LaurentSeries total(window);
    if (m.empty()) return LaurentSeries::constant(1, window);
    for (const auto& w : words_up_to(beta.max_degree())) {
      if (word_degree(w) != h->degree(m)) continue;
      GradedWord reversed(w.rbegin(), w.rend());
      Rational f = functional(reversed, m);
      if (f != 0) total += f * get(series, w, window);
    }
    return total;
  }
};

BetaBridge::BetaBridge(const BetaElement& beta, const std::vector<Graph>& generators, const Theory& theory,
                       const Rational& log_mu, LaurentWindow window)
    : impl_(std::make_shared<Impl>()) {
  if (generators.size() != beta.max_degree())
    throw ValidationError("beta_to_character: need one generator per degree of beta");
  impl_->beta = beta;
  impl_->h = std::make_shared<HopfAlgebra>(theory, Grading::LoopNumber);
  impl_->window = window;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (loop_number(generators[k]) != k + 1)
      throw ValidationError("beta_to_character: generator for degree " + std::to_string(k + 1) +
                            " has loop number " + std::to_string(loop_number(generators[k])));
    impl_->generator_ids.push_back(impl_->h->intern(generators[k]));
  }
  // The word series carry universal coefficients; the weights of beta enter once, through functional().
  const BetaElement universal{std::vector<Rational>(beta.max_degree(), Rational(1))};
  impl_->loop = loop_series(universal, log_mu, window);
  impl_->counterterm = counterterm_series(universal, window);
}

Character BetaBridge::character() const {
  auto impl = impl_;
  return Character("beta-bridge", [impl](const Graph& g) {
    return impl->pair(impl->loop, GraphMonomial{impl->h->intern(g)});
  }, impl_->window);
}

LaurentSeries BetaBridge::predicted_negative(const Graph& g) {
  return predicted_negative(GraphMonomial{impl_->h->intern(g)});
}

LaurentSeries BetaBridge::predicted_negative(const GraphMonomial& m) { return impl_->pair(impl_->counterterm, m); }

HopfAlgebra& BetaBridge::algebra() { return *impl_->h; }

}  // namespace feynmot
