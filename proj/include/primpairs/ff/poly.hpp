#pragma once

#include "primpairs/ff/field.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace primpairs::ff {

// Coefficient-field adapters for PolyRing.

struct PrimeFieldOps {
  using value_type = Code;
  std::uint64_t p;

  std::uint64_t size() const { return p; }
  Code zero() const { return 0; }
  Code one() const { return 1; }
  bool is_zero(Code a) const { return a == 0; }
  Code add(Code a, Code b) const { return (a + b) % p; }
  Code sub(Code a, Code b) const { return (a + p - b) % p; }
  Code mul(Code a, Code b) const {
    return static_cast<Code>(static_cast<unsigned __int128>(a) * b % p);
  }
  Code inv(Code a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    Code r = 1, base = a;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
    }
    return r;
  }
};

struct BaseFieldOps {
  using value_type = Code;
  const FieldCtx* ctx;

  std::uint64_t size() const { return ctx->q(); }
  Code zero() const { return 0; }
  Code one() const { return 1; }
  bool is_zero(Code a) const { return a == 0; }
  Code add(Code a, Code b) const { return ctx->base_add(a, b); }
  Code sub(Code a, Code b) const { return ctx->base_sub(a, b); }
  Code mul(Code a, Code b) const { return ctx->base_mul(a, b); }
  Code inv(Code a) const { return ctx->base_inv(a); }
};

struct ExtFieldOps {
  using value_type = FieldElement;
  const FieldCtx* ctx;

  std::uint64_t size() const { return ctx->size(); }
  FieldElement zero() const { return ctx->zero(); }
  FieldElement one() const { return ctx->one(); }
  bool is_zero(FieldElement a) const { return a.code == 0; }
  FieldElement add(FieldElement a, FieldElement b) const { return ctx->add(a, b); }
  FieldElement sub(FieldElement a, FieldElement b) const { return ctx->sub(a, b); }
  FieldElement mul(FieldElement a, FieldElement b) const { return ctx->mul(a, b); }
  FieldElement inv(FieldElement a) const { return ctx->inv(a); }
};

/// Dense univariate polynomials, coefficients low to high, no trailing
/// zeros (the zero polynomial is empty).
template <class Ops>
class PolyRing {
 public:
  using T = typename Ops::value_type;
  using Poly = std::vector<T>;

  explicit PolyRing(Ops ops) : ops_(std::move(ops)) {}

  const Ops& ops() const { return ops_; }

  void trim(Poly& f) const {
    while (!f.empty() && ops_.is_zero(f.back())) f.pop_back();
  }

  static int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

  Poly x() const { return {ops_.zero(), ops_.one()}; }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops_.add(r[i], b[i]);
    trim(r);
    return r;
  }

  Poly sub(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops_.sub(r[i], b[i]);
    trim(r);
    return r;
  }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, ops_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (ops_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ops_.add(r[i + j], ops_.mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  /// (quotient, remainder). Throws std::domain_error for a zero divisor.
  std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    trim(a);
    if (a.size() < b.size()) return {{}, std::move(a)};
    const T lead_inv = ops_.inv(b.back());
    Poly quot(a.size() - b.size() + 1, ops_.zero());
    for (std::size_t i = a.size(); i-- >= b.size();) {
      if (ops_.is_zero(a[i])) continue;
      const T c = ops_.mul(a[i], lead_inv);
      const std::size_t shift = i - (b.size() - 1);
      quot[shift] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = ops_.sub(a[shift + j], ops_.mul(c, b[j]));
    }
    trim(a);
    trim(quot);
    return {std::move(quot), std::move(a)};
  }

  Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }

  Poly monic(Poly f) const {
    trim(f);
    if (f.empty()) return f;
    const T lead_inv = ops_.inv(f.back());
    for (auto& c : f) c = ops_.mul(c, lead_inv);
    return f;
  }

  /// Monic gcd (empty when both inputs are zero).
  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(std::move(a));
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly result = mod({ops_.one()}, m);
    base = mod(base, m);
    while (e) {
      if (e & 1) result = mulmod(result, base, m);
      e >>= 1;
      if (e) base = mulmod(base, base, m);
    }
    return result;
  }

  T eval(const Poly& f, T x) const {
    T r = ops_.zero();
    for (std::size_t i = f.size(); i-- > 0;) r = ops_.add(ops_.mul(r, x), f[i]);
    return r;
  }

  /// Ben-Or: f of degree d is irreducible iff gcd(x^(S^i) - x, f) = 1 for
  /// i = 1..d/2, S the size of the coefficient field. Degree <= 3 reduces to
  /// the absence of roots.
  bool is_irreducible(const Poly& f_in) const {
    Poly f = monic(f_in);
    const int d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    const Poly xp = x();
    Poly h = mod(xp, f);
    for (int i = 1; i <= d / 2; ++i) {
      h = powmod(h, ops_.size(), f);
      if (degree(gcd(sub(h, xp), f)) > 0) return false;
    }
    return true;
  }

 private:
  Ops ops_;
};

using ExtPoly = std::vector<FieldElement>;

}  // namespace primpairs::ff
