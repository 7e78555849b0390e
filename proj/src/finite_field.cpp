#include "feynmot/finite_field.hpp"

#include "feynmot/errors.hpp"

#include <string>

namespace feynmot {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q > (std::uint64_t{1} << 31) || !is_prime(q))
    throw ValidationError("field size " + std::to_string(q) + " is not a prime <= 2^31");
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % q_ == 0) throw ValidationError("inverse of zero in F_q");
  std::uint64_t result = 1, base = a % q_, e = q_ - 2;
  while (e) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<VectorModQ>& rows, std::size_t columns, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] % f.q() == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    std::uint64_t inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x % f.q(), inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] % f.q() == 0) continue;
      std::uint64_t factor = rows[i][c] % f.q();
      for (std::size_t j = 0; j < columns; ++j) rows[i][j] = f.sub(rows[i][j] % f.q(), f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_mod(std::vector<VectorModQ> rows, const PrimeField& f) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size(), f).size();
}

std::vector<VectorModQ> nullspace_mod(std::vector<VectorModQ> rows, std::size_t columns, const PrimeField& f) {
  for (const auto& row : rows)
    if (row.size() != columns) throw ValidationError("nullspace_mod: ragged rows");
  auto pivots = rref(rows, columns, f);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VectorModQ> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    VectorModQ x(columns, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = f.sub(0, rows[i][free]);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::uint64_t checked_power(std::uint64_t q, std::size_t n, std::uint64_t budget, const char* what) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / q)
      throw BudgetError(std::string(what) + ": " + std::to_string(q) + "^" + std::to_string(n) +
                        " points exceed the enumeration budget; use a smaller q");
    total *= q;
  }
  return total;
}

}  // namespace feynmot
