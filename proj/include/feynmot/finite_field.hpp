#pragma once

#include <cstdint>
#include <vector>

namespace feynmot {

/// Arithmetic modulo a prime q <= 2^31.
class PrimeField {
 public:
  /// Throws ValidationError unless q is a prime <= 2^31.
  explicit PrimeField(std::uint64_t q);

  std::uint64_t q() const { return q_; }
  std::uint64_t reduce(long long v) const {
    long long r = v % static_cast<long long>(q_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(q_) : r);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b) % q_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % q_; }
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t q_;
};

bool is_prime(std::uint64_t n);

using VectorModQ = std::vector<std::uint64_t>;

/// Rank of the row set over F_q.
std::size_t rank_mod(std::vector<VectorModQ> rows, const PrimeField& f);

/// Basis of {x : sum_j rows[i][j] x_j = 0 for all i} over F_q, x of length `columns`.
std::vector<VectorModQ> nullspace_mod(std::vector<VectorModQ> rows, std::size_t columns, const PrimeField& f);

/// q^n, or BudgetError if it exceeds `budget`.
std::uint64_t checked_power(std::uint64_t q, std::size_t n, std::uint64_t budget, const char* what);

inline constexpr std::uint64_t kEnumerationBudget = 1'000'000'000;

}  // namespace feynmot
