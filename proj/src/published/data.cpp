#include "primpairs/published/data.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace primpairs::published {

namespace fs = std::filesystem;

namespace {

using Record = std::map<std::string, std::string>;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<Record> read_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file " + file.string());
  const auto header = split(line);
  std::vector<Record> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("ragged row in " + file.string() + ": " + line);
    Record r;
    for (std::size_t i = 0; i < cells.size(); ++i) r[header[i]] = cells[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

unsigned to_uint(const std::string& s) { return static_cast<unsigned>(std::stoul(s)); }
std::uint64_t to_u64(const std::string& s) { return std::stoull(s); }

std::vector<PairRow> load_pairs(const fs::path& file) {
  std::vector<PairRow> out;
  for (auto& r : read_csv(file)) out.push_back({to_uint(r.at("m")), to_u64(r.at("q"))});
  return out;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv("PRIMPAIRS_DATA"); env && *env) return env;
  return PRIMPAIRS_DATA_DIR;
}

std::vector<PairRow> load_appendix1(const fs::path& dir) { return load_pairs(dir / "appendix1.csv"); }
std::vector<PairRow> load_theorem_exceptions(const fs::path& dir) { return load_pairs(dir / "theorem_exceptions.csv"); }
std::vector<PairRow> load_equality_cases(const fs::path& dir) { return load_pairs(dir / "equality_cases.csv"); }

std::vector<Appendix2Row> load_appendix2(const fs::path& dir) {
  std::vector<Appendix2Row> out;
  for (auto& r : read_csv(dir / "appendix2.csv")) {
    out.push_back({to_uint(r.at("m")), to_uint(r.at("sr")), to_u64(r.at("q")), to_u64(r.at("l")), to_uint(r.at("s")),
                   r.at("delta_lower"), r.at("Delta_upper")});
  }
  return out;
}

std::vector<Table1Row> load_table1(const fs::path& dir) {
  std::vector<Table1Row> out;
  for (auto& r : read_csv(dir / "table1.csv")) {
    out.push_back({to_uint(r.at("sr")), to_uint(r.at("a")), to_uint(r.at("b")), to_uint(r.at("log2_W_l")),
                   r.at("delta_lower"), r.at("Delta_upper"), r.at("bound_upper")});
  }
  return out;
}

WindowRow load_window(const fs::path& dir) {
  const auto rows = read_csv(dir / "window.csv");
  if (rows.size() != 1) throw std::runtime_error("window.csv must hold one row");
  const auto& r = rows.front();
  return {to_uint(r.at("a")), to_uint(r.at("b")), to_uint(r.at("log2_W_l")), r.at("delta_lower"), r.at("Delta_upper"),
          r.at("bound_upper")};
}

std::vector<CascadeRow> load_cascade(const fs::path& dir) {
  std::vector<CascadeRow> out;
  for (auto& r : read_csv(dir / "cascade.csv")) {
    out.push_back({to_uint(r.at("m_from")), to_uint(r.at("m_to")), to_u64(r.at("q_limit"))});
  }
  return out;
}

std::uint64_t fnv1a64_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::vector<ChecksumMismatch> verify_checksums(const fs::path& dir) {
  std::ifstream in(dir / "CHECKSUMS");
  if (!in) throw std::runtime_error("missing " + (dir / "CHECKSUMS").string());
  std::vector<ChecksumMismatch> out;
  std::string hash, name;
  while (in >> hash >> name) {
    const auto path = dir / name;
    const std::string actual = fs::exists(path) ? hex64(fnv1a64_file(path)) : "missing";
    if (actual != hash) out.push_back({name, hash, actual});
  }
  return out;
}

void write_checksums(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".csv") names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  std::ofstream out(dir / "CHECKSUMS", std::ios::trunc);
  for (const auto& n : names) out << hex64(fnv1a64_file(dir / n)) << "  " << n << '\n';
}

}  // namespace primpairs::published
