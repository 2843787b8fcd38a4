#pragma once

#include "primpairs/bounds/bounds.hpp"
#include "primpairs/ff/field.hpp"
#include "primpairs/ff/rational_function.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace primpairs::verify {

using ff::Code;
using ff::FieldCtx;
using ff::FieldElement;
using ff::RationalFunction;

enum class Status { certified_main, certified_sieve, exception_witness, verified_exhaustive, verified_sampled, undecided };
std::string to_string(Status s);

/// q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q);

/// Per-element lookup tables for one field: primitivity and the traces of
/// alpha and 1/alpha.
class FieldTables {
 public:
  explicit FieldTables(FieldCtx ctx);

  const FieldCtx& ctx() const { return ctx_; }
  bool primitive(FieldElement a) const { return primitive_[a.code] != 0; }
  Code trace(FieldElement a) const { return trace_[a.code]; }
  /// Trace of 1/a; a != 0.
  Code trace_inv(FieldElement a) const { return trace_inv_[a.code]; }

 private:
  FieldCtx ctx_;
  std::vector<std::uint8_t> primitive_;
  std::vector<std::uint32_t> trace_;
  std::vector<std::uint32_t> trace_inv_;
};

/// q x q grid of N_{f,a,b}(q^m-1, q^m-1), row a, column b.
struct CountTable {
  RationalFunction f;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(Code a, Code b) const { return counts[a * q + b]; }
  std::uint64_t total() const;
  /// First (a, b) in row-major order with a zero count.
  std::optional<std::pair<Code, Code>> first_zero() const;
};

CountTable count_table(const FieldTables& tables, const RationalFunction& f);
/// Same grid; the alpha range is split across OpenMP threads.
CountTable count_table_parallel(const FieldTables& tables, const RationalFunction& f);

/// #{alpha not in S : alpha l1-free, f(alpha) l2-free, Tr alpha = a,
/// Tr 1/alpha = b}, evaluated element by element.
std::uint64_t brute_force_count(const FieldCtx& ctx, const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                                std::uint64_t l2);

// ---------------------------------------------------------------------------
// Enumeration of R_{n1,n2}

struct EnumMode {
  bool exhaustive = true;
  std::uint64_t count = 0;  // sample size
  std::uint64_t seed = 0;

  static EnumMode all() { return {true, 0, 0}; }
  static EnumMode sample(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
};

/// (q^m - 1) I(n1) I(n2), less the pairs with equal polynomials when n1 = n2;
/// I(0) = 1.
BigInt count_representatives(const FieldCtx& ctx, unsigned n1, unsigned n2);

/// Exhaustive: scale c, then numerator, then denominator, each in canonical
/// order. Sample: `count` independent draws from mt19937_64(seed). The
/// visitor returns false to stop. Throws std::invalid_argument for
/// n1 = n2 = 0.
void enumerate_R(const FieldCtx& ctx, unsigned n1, unsigned n2, const EnumMode& mode,
                 const std::function<bool(const RationalFunction&)>& visit);

// ---------------------------------------------------------------------------
// Witness search and pair resolution

struct Witness {
  RationalFunction f;
  Code a = 0;
  Code b = 0;
};

struct SearchResult {
  std::optional<Witness> witness;
  std::uint64_t functions_checked = 0;
  bool exhaustive = false;
};

/// Looks for f in R_{n1,n2} and (a, b) with no primitive pair. Exhaustive
/// when count_representatives fits f_limit, else `samples` seeded draws. The
/// witness reported is the first in enumeration order.
SearchResult witness_search_serial(const FieldTables& tables, unsigned n1, unsigned n2, std::uint64_t f_limit,
                                   std::uint64_t samples, std::uint64_t seed);
SearchResult witness_search_parallel(const FieldTables& tables, unsigned n1, unsigned n2, std::uint64_t f_limit,
                                     std::uint64_t samples, std::uint64_t seed);

struct Budget {
  std::uint64_t alpha_limit = std::uint64_t{1} << 20;  // largest q^m enumerated
  std::uint64_t f_limit = 10'000'000;                  // largest exhaustive representative count
  std::uint64_t samples = 1000;                        // per (n1, n2) split when sampling
  std::uint64_t seed = 1;
  bool parallel = true;
  arith::FactorConfig factor_config{};
  arith::FactorCache* cache = nullptr;
};

struct PairVerdict {
  std::uint64_t q = 0;
  unsigned m = 0;
  unsigned n = 0;
  Status status = Status::undecided;
  std::optional<bounds::SieveCertificate> certificate;
  std::optional<Witness> witness;
  std::string coverage;
  std::uint64_t functions_checked = 0;
};

/// Main condition, then certificate search, then brute force over every
/// split n1 + n2 = n when q^m fits the budget.
PairVerdict resolve_pair(std::uint64_t q, unsigned m, unsigned n, const Budget& budget = {});

/// Recomputes a witness: true iff the count at (a, b) is zero.
bool check_witness(const FieldCtx& ctx, const Witness& w);

// ---------------------------------------------------------------------------
// Character-sum cross-check

struct CrosscheckTrial {
  RationalFunction f;
  Code a, b;
  std::uint64_t l1, l2;
  double via_characters;
  std::uint64_t brute_force;
  double deviation;
};

struct CrosscheckReport {
  std::vector<CrosscheckTrial> trials;
  double max_deviation = 0;
  bool all_within = true;       // every deviation < 0.5
  bool all_rounded_equal = true;
};

/// Random (f, a, b, l1, l2) with deg f = n split at random, l1, l2 random
/// divisors of q^m - 1. Requires a discrete-log table.
CrosscheckReport crosscheck_identity(const FieldCtx& ctx, std::uint64_t trials, std::uint64_t seed, unsigned n = 2);

// ---------------------------------------------------------------------------
// Serialization (one JSON object per line)

std::string rational_function_json(const RationalFunction& f);
std::string verdict_json(const PairVerdict& v);
std::string count_table_json(const CountTable& t);
std::string crosscheck_json(const CrosscheckReport& r);

}  // namespace primpairs::verify
