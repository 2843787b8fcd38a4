#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace primpairs {

/// Arbitrary-precision integer used throughout the library.
using BigInt = mpz_class;

inline BigInt big(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == 8, "LP64 platform expected");
  return BigInt(static_cast<unsigned long>(v));
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt pow(std::uint64_t base, unsigned long exp) { return pow(big(base), exp); }

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& v) {
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

inline bool fits_u128(const BigInt& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 128; }

inline unsigned __int128 to_u128(const BigInt& v) {
  BigInt hi = v >> 64;
  BigInt lo = v - (hi << 64);
  return (static_cast<unsigned __int128>(to_u64(hi)) << 64) | to_u64(lo);
}

inline BigInt from_u128(unsigned __int128 v) {
  BigInt r = big(static_cast<std::uint64_t>(v >> 64));
  r <<= 64;
  r += big(static_cast<std::uint64_t>(v));
  return r;
}

}  // namespace primpairs
