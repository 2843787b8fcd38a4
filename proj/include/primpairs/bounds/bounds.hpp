#pragma once

#include "primpairs/arith/factor.hpp"
#include "primpairs/arith/factor_cache.hpp"
#include "primpairs/arith/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace primpairs::bounds {

using arith::FactoredInteger;

enum class Comparison { less, equal, greater };
std::string to_string(Comparison c);

/// q^(m-4) against ((n+2) W^2)^2. Throws std::invalid_argument for m < 5.
Comparison compare_main(std::uint64_t q, unsigned m, unsigned n, const BigInt& W);
/// Strict: equality fails.
bool main_condition(std::uint64_t q, unsigned m, unsigned n, const BigInt& W);

// ---------------------------------------------------------------------------
// 473 primes

/// 2^(10 omega) < M, i.e. W(M) < M^(1/10) for W = 2^omega.
bool w_below_tenth_root(const BigInt& M, unsigned omega);

struct Lemma473Report {
  bool holds_at_473 = false;   // 2^4730 < p_1 ... p_473
  bool fails_at_472 = false;   // 2^4720 >= p_1 ... p_472
  double log2_margin_473 = 0;  // log2(product) - 4730
  double log2_margin_472 = 0;
  bool passes() const { return holds_at_473 && fails_at_472; }
};
Lemma473Report lemma_473_boundary();

// ---------------------------------------------------------------------------
// Sieve

struct SieveParams {
  unsigned s = 0;
  ExactRational delta;
  /// (2s-1)/delta + 2, present only when delta > 0.
  std::optional<ExactRational> Delta;
};

/// s counts the primes of group_order not dividing l_radical. Throws
/// std::invalid_argument unless l_radical is squarefree and divides group_order.
SieveParams sieve_params(const FactoredInteger& group_order, const FactoredInteger& l_radical);

struct SieveCertificate {
  std::uint64_t q = 0;
  unsigned m = 0;
  unsigned n = 0;
  FactoredInteger l_radical;
  unsigned s = 0;
  ExactRational delta;
  std::optional<ExactRational> Delta;
  bool passes = false;
};

/// den^2 q^(m-4) > (num (n+2) W(l)^2)^2 with Delta = num/den; false when
/// Delta is absent.
bool sieve_condition(std::uint64_t q, unsigned m, unsigned n, const SieveCertificate& cert);

SieveCertificate make_certificate(std::uint64_t q, unsigned m, unsigned n, const FactoredInteger& group_order,
                                  const FactoredInteger& l_radical);

/// Candidate l: products of subsets of the min(omega, max_primes) smallest
/// primes of q^m - 1, by (subset size, product). First passing certificate.
std::optional<SieveCertificate> certificate_search(std::uint64_t q, unsigned m, unsigned n,
                                                   const FactoredInteger& group_order, unsigned max_primes = 6);

std::string certificate_json(const SieveCertificate& cert);
/// sr, q, l, s, delta (truncated, 10 places), Delta (rounded up, 10 places).
std::string certificate_csv_row(const SieveCertificate& cert, std::size_t sr);
inline constexpr const char* kCertificateCsvHeader = "sr,q,l,s,delta_lower,Delta_upper";

// ---------------------------------------------------------------------------
// Worst-case windows

struct Window {
  unsigned a;
  unsigned b;
};

/// The seven windows applied in sequence; rows 1-5 bound every m >= 7,
/// rows 6-7 every m >= 8.
inline constexpr std::array<Window, 7> kTable1Windows{{{10, 61}, {7, 29}, {6, 23}, {6, 22}, {6, 21}, {5, 19}, {5, 18}}};
inline constexpr std::size_t kLastRowAllM = 4;
inline constexpr std::size_t kLastRowM8 = 6;
inline constexpr Window kOmegaWindow{31, 472};

struct WorstCaseRow {
  unsigned a = 0;
  unsigned b = 0;
  unsigned n = 0;
  BigInt W_l;  // 2^a
  ExactRational delta_lower;
  std::optional<ExactRational> Delta_upper;  // absent when delta_lower <= 0
  ExactRational bound;                       // (n+2) Delta W_l^2
  BigInt bound_value;                        // ceil(bound)
  bool usable() const { return Delta_upper.has_value(); }
};

/// delta over the (a+1)-th .. b-th primes, s = b - a.
WorstCaseRow worst_case_row(unsigned a, unsigned b, unsigned n);

struct CascadeEntry {
  unsigned m_from;
  unsigned m_to;
  std::uint64_t q_limit;  // q < q_limit remain
  friend bool operator==(const CascadeEntry&, const CascadeEntry&) = default;
};

/// m = 7: q^3 > B7^2 certifies q; m >= 8: q^m > B8^4. Entries with equal
/// limits are merged; the list stops when the limit reaches 2.
std::vector<CascadeEntry> threshold_cascade(const BigInt& B7, const BigInt& B8);
/// B7, B8 from the final rows of each part of kTable1Windows.
std::vector<CascadeEntry> threshold_cascade(unsigned n);

// ---------------------------------------------------------------------------
// Scan

struct PrimePowerQ {
  std::uint64_t q;
  std::uint64_t p;
  unsigned k;
};

/// Prime powers below limit, ordered by (p, k).
std::vector<PrimePowerQ> prime_powers_below(std::uint64_t limit);

struct ScanEntry {
  unsigned m;
  std::uint64_t q;
  std::uint64_t p;
  unsigned k;
  unsigned omega;
  Comparison comparison;
};

struct ScanOptions {
  unsigned n = 2;
  arith::FactorConfig factor_config{};
  arith::FactorCache* cache = nullptr;
};

/// Pairs inside the cascade failing the main condition, ordered by (m, p, k).
std::vector<ScanEntry> scan_serial(const std::vector<CascadeEntry>& cascade, const ScanOptions& options);
/// Same output, q^m - 1 factored across OpenMP threads.
std::vector<ScanEntry> scan_parallel(const std::vector<CascadeEntry>& cascade, const ScanOptions& options);

/// Factorization of q^m - 1 through the cache when one is given.
FactoredInteger group_order(std::uint64_t q, unsigned m, const arith::FactorConfig& config,
                            arith::FactorCache* cache);

}  // namespace primpairs::bounds
