#include "primpairs/arith/primes.hpp"

#include <stdexcept>
#include <string>

namespace primpairs::arith {

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

PrimeTable::PrimeTable(std::uint32_t limit) : limit_(limit), composite_(static_cast<std::size_t>(limit) + 1, false) {
  composite_[0] = true;
  if (limit >= 1) composite_[1] = true;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite_[i]) continue;
    primes_.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
  }
}

const PrimeTable& PrimeTable::shared() {
  static const PrimeTable table;
  return table;
}

std::vector<std::uint32_t> PrimeTable::first(std::size_t k) const {
  if (k > primes_.size()) {
    throw std::out_of_range("prime sieve up to " + std::to_string(limit_) + " holds only " +
                            std::to_string(primes_.size()) + " primes, " + std::to_string(k) + " requested");
  }
  return {primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::uint32_t PrimeTable::nth(std::size_t i) const {
  if (i == 0 || i > primes_.size()) throw std::out_of_range("prime index outside sieve");
  return primes_[i - 1];
}

bool PrimeTable::is_prime(std::uint32_t n) const {
  if (n > limit_) throw std::out_of_range("value outside sieve");
  return !composite_[n];
}

std::vector<std::uint32_t> nth_primes(std::size_t k) { return PrimeTable::shared().first(k); }

}  // namespace primpairs::arith
