#pragma once

#include "primpairs/arith/factor.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace primpairs::ff {

/// Canonical integer encoding of a field element. For F_q = F_p[y]/(g) an
/// element sum d_j y^j encodes as sum d_j p^j; for F_{q^m} = F_q[x]/(h) an
/// element sum c_i x^i encodes as sum code(c_i) q^i.
using Code = std::uint64_t;

/// Element of F_{q^m}, stored by its canonical encoding. The coefficient
/// vector over F_q is FieldCtx::coefficients(e).
struct FieldElement {
  Code code = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

struct BuildOptions {
  /// Discrete-log tables are built when q^m <= dlog_limit.
  std::uint64_t dlog_limit = std::uint64_t{1} << 22;
  /// Largest q^m accepted at all.
  std::uint64_t max_order = std::uint64_t{1} << 62;
  /// Largest q accepted for a non-prime base field (k > 1).
  std::uint64_t max_base_order = std::uint64_t{1} << 20;
  arith::FactorConfig factor_config{};
};

/// The tower F_p <= F_q = F_{p^k} <= F_{q^m}: defining polynomials, a fixed
/// primitive element, the factored group order, and (for small fields) a
/// discrete-log table. Immutable after build; copies share the tables.
class FieldCtx {
 public:
  /// Deterministic construction. Both defining polynomials are the monic
  /// irreducibles with the smallest encoding of their non-leading
  /// coefficients; the generator is the primitive element with the smallest
  /// code. Throws std::invalid_argument for composite p or k, m == 0, and
  /// std::length_error when size limits are exceeded.
  static FieldCtx build(std::uint64_t p, unsigned k, unsigned m, const BuildOptions& options = {});

  /// Rebuilds a context from to_json() output, validating every field.
  static FieldCtx from_json(const std::string& text, const BuildOptions& options = {});
  /// p, k, m, both defining polynomials (coefficients low to high) and the
  /// generator code, as a JSON object.
  std::string to_json() const;

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return q_; }
  /// Number of elements q^m.
  std::uint64_t size() const { return size_; }
  /// q^m - 1 as a machine integer.
  std::uint64_t group_order_u64() const { return size_ - 1; }
  const arith::FactoredInteger& group_order() const { return *group_order_; }
  /// Monic degree-k polynomial over F_p defining F_q (low to high).
  const std::vector<Code>& base_modulus() const { return base_modulus_; }
  /// Monic degree-m polynomial over F_q defining F_{q^m} (low to high).
  const std::vector<Code>& modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }
  bool has_dlog() const { return static_cast<bool>(tables_); }

  // F_q arithmetic on codes < q.
  Code base_add(Code a, Code b) const;
  Code base_neg(Code a) const;
  Code base_sub(Code a, Code b) const { return base_add(a, base_neg(b)); }
  Code base_mul(Code a, Code b) const;
  Code base_inv(Code a) const;
  /// Tr_{F_q/F_p}(a) as an integer in [0, p).
  std::uint64_t base_absolute_trace(Code a) const;

  // F_{q^m} arithmetic.
  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Embeds c in F_q as a constant polynomial.
  FieldElement from_base(Code c) const;
  FieldElement from_coefficients(std::span<const Code> coeffs) const;
  std::vector<Code> coefficients(FieldElement a) const;
  bool contains(FieldElement a) const { return a.code < size_; }
  bool in_base_field(FieldElement a) const { return a.code < q_; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws std::domain_error for zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// a^q.
  FieldElement frobenius(FieldElement a) const { return pow(a, q_); }

  /// Tr_{F_{q^m}/F_q}(a) = a + a^q + ... + a^(q^(m-1)), returned as a
  /// degree-0 element.
  FieldElement trace_to_base(FieldElement a) const;
  /// Same value as trace_to_base(a).code, through precomputed traces of the
  /// polynomial basis.
  Code trace_value(FieldElement a) const;

  /// Multiplicative order; throws std::domain_error for zero.
  std::uint64_t order(FieldElement a) const;
  bool is_primitive(FieldElement a) const;
  /// True iff gcd(u, (q^m-1)/ord(a)) = 1. Throws std::domain_error for zero
  /// and std::invalid_argument when u does not divide q^m - 1.
  bool is_u_free(FieldElement a, std::uint64_t u) const;

  /// Discrete log to the base generator(); requires has_dlog().
  std::uint64_t dlog(FieldElement a) const;
  FieldElement exp(std::uint64_t i) const;
  /// Raw tables (generator powers and their inverse map); requires has_dlog().
  std::span<const std::uint32_t> exp_table() const;
  std::span<const std::uint32_t> log_table() const;

 private:
  struct BaseTables;
  struct DlogTables;

  FieldCtx() = default;
  static FieldCtx assemble(std::uint64_t p, unsigned k, unsigned m, const BuildOptions& options,
                           const std::vector<Code>* base_modulus, const std::vector<Code>* modulus,
                           const FieldElement* generator);

  Code digit_add(Code a, Code b) const;
  Code digit_neg(Code a) const;
  Code base_mul_poly(Code a, Code b) const;
  FieldElement mul_slow(FieldElement a, FieldElement b) const;
  FieldElement pow_slow(FieldElement a, std::uint64_t e) const;
  bool is_power_of_prime(FieldElement a, std::uint64_t r) const;
  void require_dlog() const;

  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  unsigned m_ = 0;
  std::uint64_t q_ = 0;
  std::uint64_t size_ = 0;
  std::vector<Code> base_modulus_;
  std::vector<Code> modulus_;
  FieldElement generator_;
  std::vector<std::uint64_t> group_primes_;
  std::shared_ptr<const arith::FactoredInteger> group_order_;
  std::shared_ptr<const BaseTables> base_tables_;
  std::shared_ptr<const DlogTables> tables_;
  std::vector<Code> basis_trace_;
};

}  // namespace primpairs::ff
