#pragma once

// Montgomery arithmetic modulo an odd n < 2^127, R = 2^128.

#include <cstdint>

namespace primpairs::arith::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Wide {
  u128 hi;
  u128 lo;
};

inline Wide mul_wide(u128 a, u128 b) {
  const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
  const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (mid << 64) | static_cast<u64>(p00)};
}

class Montgomery128 {
 public:
  explicit Montgomery128(u128 n) : n_(n) {
    u128 inv = n;  // correct to 3 bits for odd n
    for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
    neg_inv_ = -inv;
    u128 r = (u128{0} - n) % n;  // R mod n
    one_ = r;
    for (int i = 0; i < 128; ++i) {
      r <<= 1;
      if (r >= n) r -= n;
    }
    r2_ = r;  // R^2 mod n
  }

  u128 modulus() const { return n_; }
  u128 one() const { return one_; }

  u128 mul(u128 a, u128 b) const {
    const Wide t = mul_wide(a, b);
    return reduce(t);
  }

  u128 to_mont(u128 a) const { return mul(a % n_, r2_); }
  u128 from_mont(u128 a) const { return reduce({0, a}); }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + n_ - b; }

  u128 pow(u128 base, u128 exp) const {
    u128 result = one_;
    while (exp) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

 private:
  u128 reduce(Wide t) const {
    const u128 m = t.lo * neg_inv_;
    const Wide mn = mul_wide(m, n_);
    const u128 carry = t.lo != 0 ? 1 : 0;
    u128 u = t.hi + mn.hi + carry;
    return u >= n_ ? u - n_ : u;
  }

  u128 n_;
  u128 neg_inv_;
  u128 r2_;
  u128 one_;
};

inline u128 gcd128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace primpairs::arith::detail
