#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace primpairs::arith {

/// All primes p <= limit, by the sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Shared read-only table of the primes below a fixed bound.
class PrimeTable {
 public:
  static constexpr std::uint32_t kDefaultLimit = 1'000'000;

  explicit PrimeTable(std::uint32_t limit = kDefaultLimit);

  /// Process-wide table with kDefaultLimit, built on first use.
  static const PrimeTable& shared();

  std::uint32_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  /// The first k primes. Throws std::out_of_range when the sieve does not
  /// cover k primes.
  std::vector<std::uint32_t> first(std::size_t k) const;

  /// The i-th prime, 1-based (nth(1) == 2).
  std::uint32_t nth(std::size_t i) const;

  bool is_prime(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<bool> composite_;
};

/// First k primes from the shared table.
std::vector<std::uint32_t> nth_primes(std::size_t k);

}  // namespace primpairs::arith
