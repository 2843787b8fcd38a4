#include "primpairs/published/reproduce.hpp"

#include <algorithm>
#include <exception>
#include <optional>

namespace primpairs::published {

namespace {

template <class F>
void parallel_for(std::int64_t n, F&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(primpairs_reproduce_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string Appendix2Check::failures() const {
  std::string out;
  auto add = [&](bool ok, const char* what) {
    if (ok) return;
    if (!out.empty()) out += ' ';
    out += what;
  };
  add(s_match, "s");
  add(delta_ok, "delta");
  add(Delta_ok, "Delta");
  add(computed.passes, "sieve");
  return out;
}

Appendix2Check check_appendix2_row(const Appendix2Row& row, unsigned n, const ExactRational& tolerance,
                                   const arith::FactorConfig& config, arith::FactorCache* cache) {
  const auto order = bounds::group_order(row.q, row.m, config, cache);
  const auto l = order.divisor(big(row.l));
  Appendix2Check c;
  c.row = row;
  c.computed = bounds::make_certificate(row.q, row.m, n, order, l);
  c.s_match = c.computed.s == row.s;
  const auto delta_listed = ExactRational::from_decimal(row.delta_lower);
  const auto Delta_listed = ExactRational::from_decimal(row.Delta_upper);
  c.delta_ok = c.computed.delta >= delta_listed && c.computed.delta - delta_listed < tolerance;
  c.Delta_ok = c.computed.Delta && *c.computed.Delta <= Delta_listed && Delta_listed - *c.computed.Delta < tolerance;
  return c;
}

std::vector<Appendix2Check> check_appendix2(const std::vector<Appendix2Row>& rows, unsigned n,
                                            const ExactRational& tolerance, const arith::FactorConfig& config,
                                            arith::FactorCache* cache) {
  std::vector<Appendix2Check> out(rows.size());
  parallel_for(static_cast<std::int64_t>(rows.size()),
               [&](std::int64_t i) { out[i] = check_appendix2_row(rows[i], n, tolerance, config, cache); });
  return out;
}

unsigned printed_places(const std::string& decimal) {
  const auto dot = decimal.find('.');
  if (dot == std::string::npos) return 0;
  const auto end = decimal.find_first_of("eE", dot);
  return static_cast<unsigned>((end == std::string::npos ? decimal.size() : end) - dot - 1);
}

Table1Check check_table1_row(const Table1Row& row, unsigned n) {
  Table1Check c;
  c.row = row;
  c.computed = bounds::worst_case_row(row.a, row.b, n);
  c.delta_ok = c.computed.delta_lower.to_decimal(printed_places(row.delta_lower)) == row.delta_lower;
  c.Delta_ok = c.computed.Delta_upper &&
               c.computed.Delta_upper->to_decimal_ceil(printed_places(row.Delta_upper)) == row.Delta_upper;
  c.bound_ok = primpairs::to_string(c.computed.bound_value) == row.bound_upper;
  return c;
}

WindowCheck check_window(const WindowRow& row, unsigned n) {
  WindowCheck c;
  c.row = row;
  c.computed = bounds::worst_case_row(row.a, row.b, n);
  c.delta_ok = c.computed.delta_lower > ExactRational::from_decimal(row.delta_lower);
  c.Delta_ok = c.computed.Delta_upper && *c.computed.Delta_upper < ExactRational::from_decimal(row.Delta_upper);
  c.bound_ok = c.computed.usable() && c.computed.bound < ExactRational::from_decimal(row.bound_upper);
  return c;
}

PairDiff diff_pairs(std::vector<PairRow> expected, std::vector<PairRow> produced) {
  for (auto* v : {&expected, &produced}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  PairDiff d;
  std::set_difference(expected.begin(), expected.end(), produced.begin(), produced.end(),
                      std::back_inserter(d.missing));
  std::set_difference(produced.begin(), produced.end(), expected.begin(), expected.end(),
                      std::back_inserter(d.unexpected));
  return d;
}

std::vector<PairRow> listed_exceptions(const std::filesystem::path& dir) {
  auto out = load_appendix1(dir);
  const auto eq = load_equality_cases(dir);
  out.insert(out.end(), eq.begin(), eq.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PairRow> to_pairs(const std::vector<bounds::ScanEntry>& scan) {
  std::vector<PairRow> out;
  out.reserve(scan.size());
  for (const auto& e : scan) out.push_back({e.m, e.q});
  return out;
}

ClosureResult closure(const std::vector<PairRow>& pairs, const std::vector<PairRow>& expected_open, unsigned n,
                      const arith::FactorConfig& config, arith::FactorCache* cache) {
  std::vector<std::uint8_t> resolved(pairs.size());
  parallel_for(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t i) {
    const auto order = bounds::group_order(pairs[i].q, pairs[i].m, config, cache);
    resolved[i] = bounds::certificate_search(pairs[i].q, pairs[i].m, n, order).has_value();
  });
  ClosureResult r;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!resolved[i]) r.unresolved.push_back(pairs[i]);
  }
  r.diff = diff_pairs(expected_open, r.unresolved);
  return r;
}

}  // namespace primpairs::published
