#pragma once

#include "primpairs/ff/field.hpp"
#include "primpairs/ff/rational_function.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace primpairs::characters {

using ff::Code;
using ff::FieldCtx;
using ff::FieldElement;
using ff::RationalFunction;

using ComplexVal = std::complex<double>;

/// Comparison tolerance for a sum of `summands` unit-modulus terms.
inline double tolerance(std::uint64_t summands) { return 1e-6 * static_cast<double>(summands); }

/// e^(2 pi i k / n) for k in [0, n).
class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::uint64_t n);
  std::uint64_t n() const { return n_; }
  ComplexVal operator[](std::uint64_t k) const { return table_[k % n_]; }

 private:
  std::uint64_t n_;
  std::vector<ComplexVal> table_;
};

/// chi(g^i) = e^(2 pi i * exponent * i / (q^m - 1)), g the context generator.
struct MultChar {
  std::uint64_t exponent = 0;
  /// (q^m - 1) / gcd(exponent, q^m - 1)
  std::uint64_t order = 1;

  bool trivial() const { return exponent == 0; }
  friend bool operator==(MultChar, MultChar) = default;
};

/// Character evaluation over one field. Requires a discrete-log table.
class CharacterTables {
 public:
  /// Throws std::logic_error when ctx has no discrete-log table.
  explicit CharacterTables(FieldCtx ctx);

  const FieldCtx& ctx() const { return ctx_; }

  MultChar character(std::uint64_t exponent) const;
  /// The phi(d) characters of exact order d, exponents j (q^m-1)/d with
  /// gcd(j, d) = 1, j ascending. Throws std::invalid_argument unless d | q^m-1.
  std::vector<MultChar> all_chars_of_order(std::uint64_t d) const;
  /// chi(x); 0 at x = 0.
  ComplexVal eval(MultChar chi, FieldElement x) const;

  /// psi_0(x) = e^(2 pi i Tr_{F_q/F_p}(x) / p) for x in F_q.
  ComplexVal psi0(Code x) const { return p_roots_[abs_trace_[x]]; }
  /// psi_0(Tr_{F_{q^m}/F_q}(y)).
  ComplexVal psi0_hat(FieldElement y) const { return psi0(ctx_.trace_value(y)); }

  /// theta(u) sum_{d | u} mu(d)/phi(d) sum_{ord chi = d} chi(alpha).
  ComplexVal rho_u(FieldElement alpha, std::uint64_t u) const;
  /// (1/q) sum_{w in F_q} psi_0(w (Tr(alpha) - a)).
  ComplexVal tau_a(FieldElement alpha, Code a) const;

  /// sum_{u,v in F_q} psi_0(-au - bv) sum_{alpha not in S} chi1(alpha) chi2(f(alpha))
  ///   psi0_hat(u alpha + v / alpha), S = {0} with the zeros and poles of f.
  /// Inner sums are grouped by the trace pair (Tr alpha, Tr 1/alpha).
  ComplexVal chi_fab(const RationalFunction& f, Code a, Code b, MultChar chi1, MultChar chi2) const;
  /// Same sum evaluated term by term; reference for chi_fab.
  ComplexVal chi_fab_direct(const RationalFunction& f, Code a, Code b, MultChar chi1, MultChar chi2) const;

  /// theta(l1) theta(l2) / q^2 * sum_{d1 | l1, d2 | l2} mu(d1) mu(d2) / (phi(d1) phi(d2))
  ///   * sum over characters of orders d1, d2 of chi_fab.
  double count_via_characters(const RationalFunction& f, Code a, Code b, std::uint64_t l1, std::uint64_t l2) const;
  /// OpenMP over character pairs; identical result (per-pair terms are
  /// summed in a fixed order).
  double count_via_characters_parallel(const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                                       std::uint64_t l2) const;

 private:
  struct Prepared;
  Prepared prepare(const RationalFunction& f) const;
  ComplexVal chi_fab_prepared(const Prepared& pre, Code a, Code b, MultChar chi1, MultChar chi2) const;
  double count_impl(const RationalFunction& f, Code a, Code b, std::uint64_t l1, std::uint64_t l2,
                    bool parallel) const;

  FieldCtx ctx_;
  std::uint64_t order_;  // q^m - 1
  RootsOfUnity mult_roots_;
  RootsOfUnity p_roots_;
  std::vector<std::uint64_t> abs_trace_;  // Tr_{F_q/F_p} by code
};

/// phi(d) and mu(d) for the squarefree divisors of u, ascending.
struct DivisorTerm {
  std::uint64_t d;
  std::uint64_t phi;
  int mu;
};
std::vector<DivisorTerm> squarefree_divisor_terms(std::uint64_t u);

/// phi(u) / u.
double theta(std::uint64_t u);

}  // namespace primpairs::characters
