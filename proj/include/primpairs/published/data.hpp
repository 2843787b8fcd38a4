#pragma once

#include "primpairs/arith/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace primpairs::published {

/// $PRIMPAIRS_DATA if set, else the data/ directory of the source tree.
std::filesystem::path data_dir();

struct PairRow {
  unsigned m;
  std::uint64_t q;
  friend auto operator<=>(const PairRow&, const PairRow&) = default;
};

struct Appendix2Row {
  unsigned m;
  unsigned sr;
  std::uint64_t q;
  std::uint64_t l;
  unsigned s;
  std::string delta_lower;  // as printed
  std::string Delta_upper;
};

struct Table1Row {
  unsigned sr;
  unsigned a;
  unsigned b;
  unsigned log2_W_l;
  std::string delta_lower;
  std::string Delta_upper;
  std::string bound_upper;
};

struct WindowRow {
  unsigned a;
  unsigned b;
  unsigned log2_W_l;
  std::string delta_lower;
  std::string Delta_upper;
  std::string bound_upper;
};

struct CascadeRow {
  unsigned m_from;
  unsigned m_to;
  std::uint64_t q_limit;
};

/// Printed exception list, in printed order.
std::vector<PairRow> load_appendix1(const std::filesystem::path& dir = data_dir());
std::vector<Appendix2Row> load_appendix2(const std::filesystem::path& dir = data_dir());
/// Pairs left open by the sieve, prime powers expanded.
std::vector<PairRow> load_theorem_exceptions(const std::filesystem::path& dir = data_dir());
/// Pairs where the main condition holds with equality.
std::vector<PairRow> load_equality_cases(const std::filesystem::path& dir = data_dir());
std::vector<Table1Row> load_table1(const std::filesystem::path& dir = data_dir());
WindowRow load_window(const std::filesystem::path& dir = data_dir());
std::vector<CascadeRow> load_cascade(const std::filesystem::path& dir = data_dir());

/// 64-bit FNV-1a of the file contents.
std::uint64_t fnv1a64_file(const std::filesystem::path& file);

struct ChecksumMismatch {
  std::string file;
  std::string expected;
  std::string actual;
};
/// Compares every "<16 hex digits>  <name>" line of dir/CHECKSUMS.
std::vector<ChecksumMismatch> verify_checksums(const std::filesystem::path& dir = data_dir());
/// Rewrites dir/CHECKSUMS for every *.csv in dir.
void write_checksums(const std::filesystem::path& dir = data_dir());

}  // namespace primpairs::published
