#include "feynmot/motive.hpp"

#include "feynmot/errors.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <string>

namespace feynmot {

// ---- closed-form classes ---------------------------------------------------

ClassPoly banana_class(unsigned n) {
  if (n < 2) throw ValidationError("banana_class: n must be at least 2");
  const ClassPoly L = ClassPoly::L(), one(1);
  const ClassPoly sign(n % 2 ? -1 : 1);
  ClassPoly result = exact_divide(L.pow(n) - one, L - one) - exact_divide((L - one).pow(n) - sign, L) -
                     ClassPoly(static_cast<long long>(n)) * (L - one).pow(n - 2);
  if (!result.is_polynomial()) throw InternalError("banana_class: result has negative powers of L");
  return result;
}

ClassPoly affine_cone_class(const ClassPoly& projective_class) {
  return (ClassPoly::L() - ClassPoly(1)) * projective_class + ClassPoly(1);
}

ClassPoly projective_space_class(unsigned n) {
  ClassPoly p;
  for (unsigned k = 0; k <= n; ++k) p += ClassPoly::L(static_cast<int>(k));
  return p;
}

ClassPoly coordinate_simplex_class(unsigned n) {
  if (n < 2) throw ValidationError("coordinate simplex needs n >= 2");
  return projective_space_class(n - 1) - ClassPoly::T(static_cast<int>(n - 1));
}

ClassPoly simplex_singular_class(unsigned n) {
  if (n < 2) throw ValidationError("coordinate simplex needs n >= 2");
  return coordinate_simplex_class(n) - ClassPoly(static_cast<long long>(n)) * ClassPoly::T(static_cast<int>(n - 2));
}

ClassPoly hyperplane_torus_class(unsigned n) {
  if (n < 2) throw ValidationError("coordinate simplex needs n >= 2");
  const ClassPoly sign((n - 1) % 2 ? -1 : 1);
  return exact_divide(ClassPoly::T(static_cast<int>(n - 1)) - sign, ClassPoly::L());
}

// ---- point counting ----------------------------------------------------------

namespace {

struct ModPoly {
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;
  };
  std::vector<Term> terms;

  ModPoly(const Polynomial& p, const PrimeField& f) {
    const BigInt q = f.q();
    for (const auto& [m, c] : p.terms()) {
      BigInt r = c % q;
      if (r < 0) r += q;
      Term t{static_cast<std::uint64_t>(r), {}};
      if (t.coeff == 0) continue;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t.factors.emplace_back(i, m[i]);
      terms.push_back(std::move(t));
    }
  }

  std::uint64_t operator()(const std::uint64_t* x, const PrimeField& f) const {
    std::uint64_t total = 0;
    for (const Term& t : terms) {
      std::uint64_t v = t.coeff;
      for (auto [i, e] : t.factors)
        for (std::uint32_t k = 0; k < e; ++k) v = f.mul(v, x[i]);
      total = f.add(total, v);
    }
    return total;
  }
};

constexpr std::size_t kChunks = 64;

// Counts digit vectors x in [lo, lo+base)^n with pred(x). Work is split into a
// fixed number of contiguous index ranges, so the result never depends on threads.
std::uint64_t count_grid(std::size_t n, std::uint64_t base, std::uint64_t lo, std::size_t threads,
                         const std::function<bool(const std::uint64_t*)>& pred, const char* what) {
  const std::uint64_t total = checked_power(base, n, kEnumerationBudget, what);
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(kChunks, total));
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = total * c / chunks, end = total * (c + 1) / chunks;
    std::vector<std::uint64_t> x(n);
    std::uint64_t idx = begin;
    for (std::size_t i = 0; i < n; ++i, idx /= base) x[i] = lo + idx % base;
    std::uint64_t hits = 0;
    for (std::uint64_t k = begin; k < end; ++k) {
      if (pred(x.data())) ++hits;
      for (std::size_t i = 0; i < n; ++i) {
        if (++x[i] < lo + base) break;
        x[i] = lo;
      }
    }
    partial[c] = hits;
  });
  std::uint64_t sum = 0;
  for (auto p : partial) sum += p;
  return sum;
}

}  // namespace

BigInt point_count_hypersurface(const Polynomial& poly, std::size_t n, const PrimeField& f, std::size_t threads) {
  if (poly.num_variables() > n) throw ValidationError("polynomial uses more variables than the ambient space");
  ModPoly mp(poly, f);
  return count_grid(n, f.q(), 0, threads, [&](const std::uint64_t* x) { return mp(x, f) == 0; },
                    "point_count_hypersurface");
}

BigInt torus_zero_count(const Polynomial& poly, std::size_t n, const PrimeField& f, std::size_t threads) {
  if (poly.num_variables() > n) throw ValidationError("polynomial uses more variables than the ambient space");
  if (!poly.is_zero() && !poly.homogeneity_degree()) throw ValidationError("torus_zero_count: polynomial is inhomogeneous");
  ModPoly mp(poly, f);
  std::uint64_t zeros = count_grid(n, f.q() - 1, 1, threads, [&](const std::uint64_t* x) { return mp(x, f) == 0; },
                                   "torus_zero_count");
  return BigInt(zeros / (f.q() - 1));
}

BigInt motivic_feynman_rule(const Graph& g, const PrimeField& f, std::size_t threads) {
  const std::size_t n = g.num_edges();
  BigInt all = checked_power(f.q(), n, kEnumerationBudget, "motivic_feynman_rule");
  Polynomial psi(BigInt(1));
  // Psi of a disconnected graph is the product over components.
  auto labels = g.component_labels();
  const std::size_t comps = g.num_components();
  for (std::size_t c = 0; c < comps; ++c) {
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < n; ++e)
      if (labels[g.edge(e).source] == c) edges.push_back(e);
    if (edges.empty()) continue;
    Graph piece = extract_component(g, edges);
    Polynomial local = psi_spanning_trees(piece.with_legs({}));
    Polynomial mapped;
    for (const auto& [m, coeff] : local.terms()) {
      std::vector<std::uint32_t> exps(n, 0);
      for (std::size_t i = 0; i < m.size(); ++i) exps[edges[i]] = m[i];
      mapped.add_term(Monomial(std::move(exps)), coeff);
    }
    psi *= mapped;
  }
  return all - point_count_hypersurface(psi, n, f, threads);
}

BigInt projective_hypersurface_count(const Graph& g, const PrimeField& f, std::size_t threads) {
  if (loop_number(g) == 0) throw ValidationError("projective hypersurface of a forest is empty");
  BigInt all = checked_power(f.q(), g.num_edges(), kEnumerationBudget, "projective_hypersurface_count");
  BigInt affine = all - motivic_feynman_rule(g, f, threads);
  BigInt q1 = f.q() - 1;
  if ((affine - 1) % q1 != 0) throw InternalError("affine cone count is not 1 mod q-1");
  return (affine - 1) / q1;
}

// ---- frames ------------------------------------------------------------------

ClassPoly frame_class_2(unsigned d1, unsigned d2, unsigned d12) {
  if (d12 > std::min(d1, d2)) throw ValidationError("frame_class_2: d12 exceeds min(d1, d2)");
  auto L = [](unsigned k) { return ClassPoly::L(static_cast<int>(k)); };
  return L(d1 + d2) - L(d1) - L(d2) - L(d12 + 1) + L(d12) + L(1);
}

ClassPoly frame_class_3(const FrameDims3& d) {
  const unsigned di[3] = {d.d1, d.d2, d.d3};
  const unsigned dpair[3] = {d.d23, d.d13, d.d12};  // pair opposite to index i
  for (int i = 0; i < 3; ++i) {
    if (dpair[i] < d.d123) throw ValidationError("frame_class_3: triple intersection exceeds a pairwise one");
    if (di[i] > d.span) throw ValidationError("frame_class_3: subspace larger than the span");
  }
  if (d.d12 > std::min(d.d1, d.d2) || d.d13 > std::min(d.d1, d.d3) || d.d23 > std::min(d.d2, d.d3))
    throw ValidationError("frame_class_3: pairwise intersection exceeds a member");
  if (d.d1 + d.d2 + d.d3 < d.span) throw ValidationError("frame_class_3: span exceeds the sum of dimensions");
  auto L = [](unsigned k) { return ClassPoly::L(static_cast<int>(k)); };
  const ClassPoly one(1), T = L(1) - one;
  ClassPoly product = (L(d.d1) - one) * (L(d.d2) - one) * (L(d.d3) - one);
  ClassPoly a;
  for (int i = 0; i < 3; ++i) a += (L(di[i]) - L(1)) * (L(dpair[i]) - one);
  ClassPoly dependent = a + T * (L(d.d1 + d.d2 + d.d3 - d.span) - L(d.d123 + 1)) + T * T;
  return product - T * dependent;
}

void SubspaceFamily::validate(const PrimeField& f) const {
  for (const auto& basis : bases) {
    for (const auto& v : basis)
      if (v.size() != ambient) throw ValidationError("subspace basis vector has the wrong length");
    if (rank_mod(basis, f) != basis.size()) throw ValidationError("subspace basis vectors are dependent");
  }
}

std::vector<VectorModQ> SubspaceFamily::intersection(const std::vector<std::size_t>& which,
                                                     const PrimeField& f) const {
  if (which.empty()) throw ValidationError("intersection of no subspaces");
  std::vector<VectorModQ> current = bases.at(which.front());
  for (std::size_t w = 1; w < which.size(); ++w) {
    const auto& other = bases.at(which[w]);
    const std::size_t cols = current.size() + other.size();
    // Solve sum x_i b_i - sum y_j c_j = 0 coordinatewise.
    std::vector<VectorModQ> rows(ambient, VectorModQ(cols, 0));
    for (std::size_t k = 0; k < ambient; ++k) {
      for (std::size_t i = 0; i < current.size(); ++i) rows[k][i] = current[i][k] % f.q();
      for (std::size_t j = 0; j < other.size(); ++j) rows[k][current.size() + j] = f.sub(0, other[j][k] % f.q());
    }
    std::vector<VectorModQ> next;
    for (const auto& sol : nullspace_mod(rows, cols, f)) {
      VectorModQ v(ambient, 0);
      for (std::size_t i = 0; i < current.size(); ++i)
        for (std::size_t k = 0; k < ambient; ++k) v[k] = f.add(v[k], f.mul(sol[i], current[i][k] % f.q()));
      next.push_back(std::move(v));
    }
    current = std::move(next);
  }
  return current;
}

std::size_t SubspaceFamily::span_dim(const std::vector<std::size_t>& which, const PrimeField& f) const {
  std::vector<VectorModQ> all;
  for (auto i : which) all.insert(all.end(), bases.at(i).begin(), bases.at(i).end());
  return rank_mod(all, f);
}

FrameDims3 SubspaceFamily::dims3(const PrimeField& f) const {
  if (bases.size() != 3) throw ValidationError("dims3 needs exactly three subspaces");
  FrameDims3 d;
  d.d1 = static_cast<unsigned>(dim(0));
  d.d2 = static_cast<unsigned>(dim(1));
  d.d3 = static_cast<unsigned>(dim(2));
  d.d12 = static_cast<unsigned>(intersection({0, 1}, f).size());
  d.d13 = static_cast<unsigned>(intersection({0, 2}, f).size());
  d.d23 = static_cast<unsigned>(intersection({1, 2}, f).size());
  d.d123 = static_cast<unsigned>(intersection({0, 1, 2}, f).size());
  d.span = static_cast<unsigned>(span_dim({0, 1, 2}, f));
  return d;
}

BigInt frame_count_bruteforce(const SubspaceFamily& fam, const PrimeField& f) {
  fam.validate(f);
  std::vector<std::size_t> offsets;
  std::size_t total_dim = 0;
  for (const auto& b : fam.bases) {
    offsets.push_back(total_dim);
    total_dim += b.size();
  }
  const std::size_t k = fam.bases.size();
  return count_grid(total_dim, f.q(), 0, 1, [&](const std::uint64_t* c) {
    std::vector<VectorModQ> vectors(k, VectorModQ(fam.ambient, 0));
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t j = 0; j < fam.bases[s].size(); ++j)
        for (std::size_t a = 0; a < fam.ambient; ++a)
          vectors[s][a] = f.add(vectors[s][a], f.mul(c[offsets[s] + j], fam.bases[s][j][a] % f.q()));
    return rank_mod(std::move(vectors), f) == k;
  }, "frame_count_bruteforce");
}

// ---- Upsilon and determinant hypersurface ---------------------------------------

UpsilonMap upsilon_map(const Graph& g, const LoopBasis& basis) {
  if (g.has_looping_edge()) throw ValidationError("upsilon_map: graph has a looping edge");
  UpsilonMap u;
  u.loops = basis.num_loops();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    std::vector<std::vector<int>> c(u.loops, std::vector<int>(u.loops, 0));
    for (std::size_t k = 0; k < u.loops; ++k)
      for (std::size_t r = 0; r < u.loops; ++r) c[k][r] = basis.eta[i][k] * basis.eta[i][r];
    u.contributions.push_back(std::move(c));
  }
  return u;
}

GraphMatrix UpsilonMap::matrix() const {
  GraphMatrix m(loops, std::vector<Polynomial>(loops));
  for (std::size_t i = 0; i < contributions.size(); ++i)
    for (std::size_t k = 0; k < loops; ++k)
      for (std::size_t r = 0; r < loops; ++r)
        if (contributions[i][k][r]) m[k][r].add_term(Monomial::variable(i), BigInt(contributions[i][k][r]));
  return m;
}

std::size_t UpsilonMap::rank() const {
  std::vector<std::vector<Rational>> rows;
  for (const auto& c : contributions) {
    std::vector<Rational> row;
    for (const auto& line : c)
      for (int x : line) row.emplace_back(x);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  const std::size_t cols = loops * loops;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational factor = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

BigInt det_hypersurface_count(unsigned l, const PrimeField& f) {
  const BigInt q = f.q();
  BigInt ql = boost::multiprecision::pow(q, l);
  BigInt invertible = 1;
  for (unsigned k = 0; k < l; ++k) invertible *= ql - boost::multiprecision::pow(q, k);
  return boost::multiprecision::pow(q, l * l) - invertible;
}

BigInt det_hypersurface_count_bruteforce(unsigned l, const PrimeField& f, std::size_t threads) {
  return count_grid(l * l, f.q(), 0, threads, [&](const std::uint64_t* x) {
    std::vector<VectorModQ> rows(l, VectorModQ(l));
    for (unsigned i = 0; i < l; ++i)
      for (unsigned j = 0; j < l; ++j) rows[i][j] = x[i * l + j];
    return rank_mod(std::move(rows), f) < l;
  }, "det_hypersurface_count_bruteforce");
}

std::vector<std::vector<int>> divisor_equations(unsigned l, unsigned genus) {
  if (l < 1 || 2 * genus + 1 > l) throw ValidationError("divisor_equations: need l >= 2 genus + 1");
  const unsigned f = l - 2 * genus + 1;
  std::vector<std::vector<int>> eqs;
  auto entry = [l](unsigned i, unsigned j) { return (i - 1) * l + (j - 1); };
  for (unsigned i = 1; i <= f - 1; ++i)
    for (unsigned j = i + 1; j <= f - 1; ++j) {
      std::vector<int> row(l * l, 0);
      row[entry(i, j)] = 1;
      eqs.push_back(std::move(row));
    }
  for (unsigned i = 1; i <= f - 1; ++i) {
    std::vector<int> row(l * l, 0);
    for (unsigned j = 1; j <= f - 1; ++j) row[entry(i, j)] = 1;
    eqs.push_back(std::move(row));
  }
  return eqs;
}

BigInt divisor_stratum_count(unsigned l, unsigned genus, const std::vector<std::size_t>& components,
                             const PrimeField& f, std::size_t threads) {
  auto eqs = divisor_equations(l, genus);
  std::vector<VectorModQ> rows;
  for (auto i : components) {
    if (i >= eqs.size()) throw ValidationError("divisor component index out of range");
    VectorModQ row;
    for (int c : eqs[i]) row.push_back(f.reduce(c));
    rows.push_back(std::move(row));
  }
  auto basis = nullspace_mod(rows, l * l, f);
  const std::size_t k = basis.size();
  return count_grid(k, f.q(), 0, threads, [&](const std::uint64_t* c) {
    std::vector<VectorModQ> m(l, VectorModQ(l, 0));
    for (std::size_t b = 0; b < k; ++b)
      for (unsigned e = 0; e < l * l; ++e) m[e / l][e % l] = f.add(m[e / l][e % l], f.mul(c[b], basis[b][e]));
    return rank_mod(std::move(m), f) == l;
  }, "divisor_stratum_count");
}

// ---- graph sums --------------------------------------------------------------

std::vector<Graph> vacuum_graphs(unsigned N, const Theory& theory) {
  theory.validate();
  if (N < 1) throw ValidationError("vacuum_graphs: N must be positive");
  if (N > 4) throw BudgetError("vacuum_graphs: N > 4 exceeds the enumeration budget");
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (u, v), u == v for looping edges
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t v = u; v < N; ++v) slots.emplace_back(u, v);
  std::vector<int> valences(theory.valences.begin(), theory.valences.end());
  std::set<std::string> seen;
  std::vector<Graph> out;
  std::vector<int> target(N);
  std::vector<int> remaining(N);
  std::vector<int> mult(slots.size(), 0);

  std::function<void(std::size_t)> fill = [&](std::size_t s) {
    if (s == slots.size()) {
      if (std::any_of(remaining.begin(), remaining.end(), [](int r) { return r != 0; })) return;
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < slots.size(); ++i)
        for (int k = 0; k < mult[i]; ++k) edges.push_back({slots[i].first, slots[i].second});
      Graph g(N, std::move(edges));
      if (!g.is_connected()) return;
      if (seen.insert(canonical_key(g)).second) out.push_back(canonical_form(g));
      return;
    }
    auto [u, v] = slots[s];
    const int cost = u == v ? 2 : 1;
    const int max_k = u == v ? remaining[u] / 2 : std::min(remaining[u], remaining[v]);
    for (int k = 0; k <= max_k; ++k) {
      mult[s] = k;
      remaining[u] -= k * cost;
      if (u != v) remaining[v] -= k;
      fill(s + 1);
      remaining[u] += k * cost;
      if (u != v) remaining[v] += k;
    }
    mult[s] = 0;
  };

  std::function<void(std::size_t)> choose = [&](std::size_t v) {
    if (v == N) {
      remaining = target;
      fill(0);
      return;
    }
    for (int val : valences) {
      target[v] = val;
      choose(v + 1);
    }
  };
  choose(0);
  return out;
}

std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw ValidationError("interpolate: need matching nonempty point lists");
  std::vector<Rational> result(xs.size(), Rational(0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw ValidationError("interpolate: repeated abscissa");
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) result[k] += ys[i] * basis[k] / denom;
  }
  while (result.size() > 1 && result.back() == 0) result.pop_back();
  return result;
}

GraphSumResult graph_sum_family(const std::vector<Graph>& family, unsigned N, const std::vector<std::uint64_t>& primes,
                                std::size_t threads) {
  if (primes.size() < 2) throw ValidationError("graph_sum: need at least two primes");
  GraphSumResult r;
  r.graphs = family.size();
  const Rational n_factorial(factorial(N));
  for (auto q : primes) {
    PrimeField f(q);
    Rational total = 0;
    for (const Graph& g : family)
      total += Rational(projective_hypersurface_count(g, f, threads)) * n_factorial /
               Rational(BigInt(automorphism_count(g)));
    r.values.emplace_back(q, total);
  }
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i + 1 < r.values.size(); ++i) {
    xs.emplace_back(BigInt(r.values[i].first));
    ys.push_back(r.values[i].second);
  }
  auto fit = interpolate(xs, ys);
  Rational at_last = 0, x = Rational(BigInt(r.values.back().first)), power = 1;
  for (const auto& c : fit) {
    at_last += c * power;
    power *= x;
  }
  if (at_last == r.values.back().second) r.polynomial = fit;
  return r;
}

GraphSumResult graph_sum_class(unsigned N, const Theory& theory, const std::vector<std::uint64_t>& primes,
                               std::size_t threads) {
  return graph_sum_family(vacuum_graphs(N, theory), N, primes, threads);
}

}  // namespace feynmot
