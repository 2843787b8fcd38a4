#pragma once

#include "primpairs/arith/bigint.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace primpairs::arith {

/// Raised when a cofactor survives the configured Pollard-rho effort.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its complete prime factorization.
/// Primes are strictly increasing and every exponent is at least one.
class FactoredInteger {
 public:
  /// The unit 1 (empty factor list).
  FactoredInteger() : value_(1) {}

  /// Builds from prime powers in any order; merges repeated primes, checks
  /// primality of every entry. Throws std::invalid_argument on a composite
  /// or non-positive entry.
  static FactoredInteger from_factors(std::vector<PrimePower> factors);

  /// Same as from_factors but skips the primality check. For callers that
  /// have already certified their primes (the factorizer itself).
  static FactoredInteger from_trusted_factors(std::vector<PrimePower> factors);

  const BigInt& value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  std::vector<BigInt> primes() const;

  std::size_t omega() const { return factors_.size(); }
  /// W(n) = 2^omega(n), the number of squarefree divisors.
  BigInt squarefree_divisor_count() const;
  BigInt euler_phi() const;
  int moebius() const;
  bool is_squarefree() const;
  /// Product of the distinct primes.
  FactoredInteger radical() const;
  /// All squarefree divisors, ascending by value.
  std::vector<FactoredInteger> squarefree_divisors() const;
  /// Factorization of a divisor d of value(), read off from this one.
  /// Throws std::invalid_argument when d does not divide value().
  FactoredInteger divisor(const BigInt& d) const;

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.factors_ == b.factors_;
  }

 private:
  BigInt value_;
  std::vector<PrimePower> factors_;
};

inline std::size_t omega(const FactoredInteger& f) { return f.omega(); }
inline BigInt squarefree_divisor_count(const FactoredInteger& f) { return f.squarefree_divisor_count(); }
inline BigInt euler_phi(const FactoredInteger& f) { return f.euler_phi(); }
inline int moebius(const FactoredInteger& f) { return f.moebius(); }
inline std::vector<FactoredInteger> squarefree_divisors(const FactoredInteger& f) {
  return f.squarefree_divisors();
}

struct FactorConfig {
  /// Trial division bound.
  std::uint32_t trial_limit = 1'000'000;
  /// Miller-Rabin bases used above 2^64 (first `mr_rounds` primes).
  unsigned mr_rounds = 24;
  /// Total Pollard-rho iterations allowed for one call to factor().
  std::uint64_t rho_budget = std::uint64_t{1} << 34;
};

/// Miller-Rabin. Deterministic below 2^64 (first twelve prime bases);
/// above that, uses the first `rounds` prime bases.
bool is_probable_prime(const BigInt& n, unsigned rounds = 24);
bool is_prime_u64(std::uint64_t n);

/// Complete factorization: trial division, then Pollard rho (Brent) on the
/// cofactor with a fixed seed sequence. Deterministic for fixed input.
/// Precondition n >= 1 (std::invalid_argument otherwise).
FactoredInteger factor(const BigInt& n, const FactorConfig& config = {});

/// Factorization of q^m - 1, split first along the cyclotomic values
/// Phi_d(q), d | m.
FactoredInteger factor_power_minus_one(std::uint64_t q, unsigned m, const FactorConfig& config = {});

/// Product of two factorizations.
FactoredInteger multiply(const FactoredInteger& a, const FactoredInteger& b);

std::string to_string(const FactoredInteger& f);

}  // namespace primpairs::arith
