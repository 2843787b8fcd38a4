#pragma once

#include "primpairs/bounds/bounds.hpp"
#include "primpairs/published/data.hpp"

#include <optional>
#include <string>
#include <vector>

namespace primpairs::published {

// ---------------------------------------------------------------------------
// Sieve certificate rows

struct Appendix2Check {
  Appendix2Row row;
  bounds::SieveCertificate computed;  // at the listed l
  bool s_match = false;
  bool delta_ok = false;  // listed <= delta < listed + tol
  bool Delta_ok = false;  // listed - tol < Delta <= listed
  bool passes() const { return s_match && delta_ok && Delta_ok && computed.passes; }
  /// Space-separated failed checks, empty when the row passes.
  std::string failures() const;
};

/// Recomputes (s, delta, Delta) from q^m - 1 and the listed l. Throws
/// std::invalid_argument when l is not a squarefree divisor of q^m - 1.
Appendix2Check check_appendix2_row(const Appendix2Row& row, unsigned n, const ExactRational& tolerance,
                                   const arith::FactorConfig& config = {}, arith::FactorCache* cache = nullptr);

/// All rows, factored across OpenMP threads; output in input order.
std::vector<Appendix2Check> check_appendix2(const std::vector<Appendix2Row>& rows, unsigned n,
                                            const ExactRational& tolerance, const arith::FactorConfig& config = {},
                                            arith::FactorCache* cache = nullptr);

// ---------------------------------------------------------------------------
// Worst-case table

struct Table1Check {
  Table1Row row;
  bounds::WorstCaseRow computed;
  bool delta_ok = false;  // truncated to the printed places
  bool Delta_ok = false;  // rounded up to the printed places
  bool bound_ok = false;  // ceiling equals the printed integer
  bool passes() const { return delta_ok && Delta_ok && bound_ok; }
};

Table1Check check_table1_row(const Table1Row& row, unsigned n);

struct WindowCheck {
  WindowRow row;
  bounds::WorstCaseRow computed;
  bool delta_ok = false;  // delta > printed
  bool Delta_ok = false;  // Delta < printed
  bool bound_ok = false;  // (n+2) Delta W^2 < printed
  bool passes() const { return delta_ok && Delta_ok && bound_ok; }
};

WindowCheck check_window(const WindowRow& row, unsigned n);

/// Digits after the decimal point of a printed value.
unsigned printed_places(const std::string& decimal);

// ---------------------------------------------------------------------------
// Exception list

struct PairDiff {
  std::vector<PairRow> missing;     // expected, not produced
  std::vector<PairRow> unexpected;  // produced, not expected
  bool exact() const { return missing.empty() && unexpected.empty(); }
};

/// Both sides compared as sets ordered by (m, q).
PairDiff diff_pairs(std::vector<PairRow> expected, std::vector<PairRow> produced);

/// Printed list together with the equality cases, sorted, duplicates removed.
std::vector<PairRow> listed_exceptions(const std::filesystem::path& dir = data_dir());

std::vector<PairRow> to_pairs(const std::vector<bounds::ScanEntry>& scan);

struct ClosureResult {
  std::vector<PairRow> unresolved;  // certificate_search found nothing
  PairDiff diff;                    // unresolved against the expected list
};

/// certificate_search on every pair, factored across OpenMP threads.
ClosureResult closure(const std::vector<PairRow>& pairs, const std::vector<PairRow>& expected_open, unsigned n,
                      const arith::FactorConfig& config = {}, arith::FactorCache* cache = nullptr);

}  // namespace primpairs::published
