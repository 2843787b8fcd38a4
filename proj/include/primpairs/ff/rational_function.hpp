#pragma once

#include "primpairs/ff/field.hpp"
#include "primpairs/ff/poly.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>

namespace primpairs::ff {

/// f = scale * numerator / denominator over F_{q^m}, both polynomials monic
/// and irreducible (a degree-0 side is the constant 1), coprime, with
/// deg numerator + deg denominator = n >= 1.
struct RationalFunction {
  FieldElement scale{1};
  ExtPoly numerator;    // monic, low to high
  ExtPoly denominator;  // monic, low to high

  unsigned n1() const { return static_cast<unsigned>(numerator.size() - 1); }
  unsigned n2() const { return static_cast<unsigned>(denominator.size() - 1); }
  unsigned degree() const { return n1() + n2(); }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

/// Throws std::invalid_argument unless f satisfies every RationalFunction
/// invariant in ctx.
void validate(const FieldCtx& ctx, const RationalFunction& f);
bool is_valid(const FieldCtx& ctx, const RationalFunction& f);

/// f(alpha), or nullopt at a pole.
std::optional<FieldElement> eval_rational(const FieldCtx& ctx, const RationalFunction& f, FieldElement alpha);

/// True when alpha is 0, a zero of f, or a pole of f.
bool in_exceptional_set(const FieldCtx& ctx, const RationalFunction& f, FieldElement alpha);

/// Human-readable form, coefficients as codes, e.g. "3*(x^2 + 1)/(x + 5)".
std::string to_string(const RationalFunction& f);

// Monic irreducible polynomials over F_{q^m}.

bool is_irreducible(const FieldCtx& ctx, const ExtPoly& f);

/// Number of monic irreducibles of the given degree over a field of size Q.
BigInt count_monic_irreducibles(std::uint64_t Q, unsigned degree);

/// Visits monic irreducibles of the given degree in canonical order
/// (non-leading coefficients read as base-Q digits, constant term least
/// significant). The visitor returns false to stop. Returns the number visited.
std::uint64_t for_each_irreducible(const FieldCtx& ctx, unsigned degree,
                                   const std::function<bool(const ExtPoly&)>& visit);

/// First `limit` irreducibles in canonical order (limit 0 = all).
std::vector<ExtPoly> find_irreducibles(const FieldCtx& ctx, unsigned degree, std::uint64_t limit = 0);

/// Uniform-by-rejection random monic irreducible.
ExtPoly random_irreducible(const FieldCtx& ctx, unsigned degree, std::mt19937_64& rng);

/// Random member of R_{n1,n2}: nonzero scale, independent random monic
/// irreducibles (redrawn while equal). Throws for n1 = n2 = 0.
RationalFunction random_rational_function(const FieldCtx& ctx, unsigned n1, unsigned n2, std::mt19937_64& rng);

}  // namespace primpairs::ff
