// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 when
// any selected criterion fails. Usage: acceptance [--only N]

#include "primpairs/bounds/bounds.hpp"
#include "primpairs/characters/characters.hpp"
#include "primpairs/published/data.hpp"
#include "primpairs/published/reproduce.hpp"
#include "primpairs/verify/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

using namespace primpairs;
using ff::Code;
using ff::FieldCtx;
using ff::FieldElement;

namespace {

// Tolerances
const ExactRational kGap = ExactRational::from_decimal("1e-9");  // listed certificate bounds
constexpr double kIndicatorTol = 1e-6;                           // rho_u, tau_a against 0/1
constexpr double kCountTol = 0.5;                                // character count against brute force
constexpr std::uint64_t kCrosscheckTrials = 20;
constexpr int kBoundDraws = 100;

// F_4, F_8, F_9, F_81, F_64 over their prime fields
const std::vector<std::array<unsigned, 3>> kSmallFields = {{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {3, 1, 4}, {2, 1, 6}};

std::string pairs_text(const std::vector<published::PairRow>& v) {
  std::ostringstream os;
  for (const auto& p : v) os << " (q=" << p.q << ",m=" << p.m << ")";
  return os.str();
}

bool report(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
  return ok;
}

bool criterion1() {
  const auto rows = published::load_appendix2();
  const auto checks = published::check_appendix2(rows, 2, kGap);
  std::size_t passed = 0;
  for (const auto& c : checks) {
    if (c.passes()) {
      ++passed;
      continue;
    }
    std::cout << "  m=" << c.row.m << " sr=" << c.row.sr << " q=" << c.row.q << " l=" << c.row.l
              << " listed delta=" << c.row.delta_lower << " Delta=" << c.row.Delta_upper
              << " computed delta=" << c.computed.delta.to_decimal(13)
              << " Delta=" << (c.computed.Delta ? c.computed.Delta->to_decimal_ceil(13) : "none")
              << " failed: " << c.failures() << '\n';
  }
  // spot value
  const auto spot = bounds::make_certificate(32, 7, 2, arith::factor_power_minus_one(32, 7), arith::FactoredInteger{});
  const bool spot_ok = spot.delta > ExactRational::from_decimal("0.8915505547") &&
                       spot.delta < ExactRational::from_decimal("0.8915505548");
  std::ostringstream os;
  os << passed << "/" << checks.size() << " listed certificates reproduce (s exact, gaps < 1e-9, sieve exact)"
     << "; q=32 m=7 l=1 delta " << (spot_ok ? "in" : "outside") << " (0.8915505547, 0.8915505548)";
  return report(1, passed == checks.size() && spot_ok, os.str());
}

bool criterion2() {
  const auto scan = bounds::scan_parallel(bounds::threshold_cascade(2), bounds::ScanOptions{});
  const auto produced = published::to_pairs(scan);
  const auto expected = published::listed_exceptions();
  const auto diff = published::diff_pairs(expected, produced);
  bool equality_ok = true;
  for (const auto& e : published::load_equality_cases()) {
    const auto it = std::find_if(scan.begin(), scan.end(), [&](const auto& s) { return s.m == e.m && s.q == e.q; });
    equality_ok = equality_ok && it != scan.end() && it->comparison == bounds::Comparison::equal;
  }
  std::ostringstream os;
  os << "scan produced " << produced.size() << " pairs, listed " << expected.size()
     << "; equality cases " << (equality_ok ? "flagged" : "not flagged");
  if (!diff.missing.empty()) os << "; missing" << pairs_text(diff.missing);
  if (!diff.unexpected.empty()) os << "; not listed" << pairs_text(diff.unexpected);
  return report(2, diff.exact() && equality_ok && produced.size() == expected.size(), os.str());
}

bool criterion3() {
  const auto listed = published::listed_exceptions();
  const auto open = published::load_theorem_exceptions();
  const auto r = published::closure(listed, open, 2);
  std::ostringstream os;
  os << r.unresolved.size() << " of " << listed.size() << " pairs left without a certificate, expected "
     << open.size();
  if (!r.diff.missing.empty()) os << "; certified but expected open" << pairs_text(r.diff.missing);
  if (!r.diff.unexpected.empty()) os << "; open but not expected" << pairs_text(r.diff.unexpected);
  return report(3, r.diff.exact(), os.str());
}

bool criterion4() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& row : published::load_table1()) {
    const auto c = published::check_table1_row(row, 2);
    if (!c.passes()) {
      os << " row " << row.sr << " differs (delta " << c.computed.delta_lower.to_decimal(10) << ")";
      ok = false;
    }
  }
  const auto w = published::check_window(published::load_window(), 2);
  if (!w.passes()) {
    os << " window (31,472) bound check failed";
    ok = false;
  }
  const auto lemma = bounds::lemma_473_boundary();
  if (!lemma.passes()) {
    os << " 473-prime boundary failed";
    ok = false;
  }
  return report(4, ok,
                "7 worst-case rows at printed digits, window (31,472) delta/Delta/bound, 473-prime boundary" +
                    os.str());
}

bool criterion5() {
  bool ok = true;
  std::ostringstream os;
  double worst_indicator = 0, worst_count = 0;
  for (auto [p, k, m] : kSmallFields) {
    const characters::CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    const std::uint64_t N = ctx.group_order_u64();
    for (std::uint64_t u = 1; u <= N; ++u) {
      if (N % u) continue;
      for (Code c = 1; c < ctx.size(); ++c) {
        const double want = ctx.is_u_free({c}, u) ? 1.0 : 0.0;
        worst_indicator = std::max(worst_indicator, std::abs(ch.rho_u({c}, u) - want));
      }
    }
    for (Code a = 0; a < ctx.q(); ++a) {
      for (Code c = 0; c < ctx.size(); ++c) {
        const double want = ctx.trace_value({c}) == a ? 1.0 : 0.0;
        worst_indicator = std::max(worst_indicator, std::abs(ch.tau_a({c}, a) - want));
      }
    }
    const auto r = verify::crosscheck_identity(ctx, kCrosscheckTrials, 1000 + p * 10 + m);
    worst_count = std::max(worst_count, r.max_deviation);
    if (!r.all_within || !r.all_rounded_equal || r.trials.size() < kCrosscheckTrials) {
      os << " F_" << ctx.size() << " crosscheck failed";
      ok = false;
    }
  }
  ok = ok && worst_indicator < kIndicatorTol && worst_count < kCountTol;
  os << " indicator deviation " << worst_indicator << " (< 1e-6), count deviation " << worst_count
     << " (< 0.5) over F_4, F_8, F_9, F_81, F_64, " << kCrosscheckTrials << " trials each";
  return report(5, ok, "character identity:" + os.str());
}

bool criterion6() {
  std::size_t violations = 0, draws = 0;
  double worst_ratio = 0;
  for (auto [p, k, m] : kSmallFields) {
    const characters::CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    std::mt19937_64 rng(7000 + p * 10 + m);
    for (int t = 0; t < kBoundDraws; ++t) {
      const unsigned n = 1 + rng() % 3;
      const unsigned n1 = rng() % (n + 1), n2 = n - n1;
      const auto f = ff::random_rational_function(ctx, n1, n2, rng);
      const Code a = rng() % ctx.q(), b = rng() % ctx.q();
      const auto c1 = ch.character(rng() % ctx.group_order_u64());
      const auto c2 = ch.character(rng() % ctx.group_order_u64());
      const double bound = (n + 2) * std::pow(static_cast<double>(ctx.q()), m / 2.0 + 2.0);
      const double value = std::abs(ch.chi_fab(f, a, b, c1, c2));
      worst_ratio = std::max(worst_ratio, value / bound);
      violations += value > bound;
      ++draws;
    }
  }
  std::ostringstream os;
  os << violations << " violations of |chi_fab| <= (n+2) q^(m/2+2) in " << draws << " draws, largest ratio "
     << worst_ratio;
  return report(6, violations == 0, os.str());
}

bool criterion7() {
  const auto ctx = FieldCtx::build(3, 1, 7);
  const verify::FieldTables tables(ctx);
  const ff::RationalFunction f{ctx.one(), {ctx.one(), ctx.zero(), ctx.one()}, {ctx.one()}};
  const auto first = verify::count_table(tables, f);
  const auto again = verify::count_table(tables, f);
  const auto parallel = verify::count_table_parallel(tables, f);
  std::uint64_t independent = 0;
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement alpha{c};
    const FieldElement v = ctx.add(ctx.mul(alpha, alpha), ctx.one());
    independent += ctx.is_primitive(alpha) && v.code != 0 && ctx.is_primitive(v);
  }
  bool cells_ok = true;
  for (auto n : first.counts) cells_ok = cells_ok && n <= 1092;
  const bool ok = first.counts == again.counts && first.counts == parallel.counts && first.total() == independent &&
                  cells_ok && first.counts.size() == 9;
  std::ostringstream os;
  os << "q=3 m=7 f=(x^2+1)/1 grid";
  for (auto n : first.counts) os << ' ' << n;
  os << ", total " << first.total() << " vs independent " << independent << ", rerun identical, cells <= 1092";
  return report(7, ok, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<bool (*)()> all = {criterion1, criterion2, criterion3, criterion4,
                                       criterion5, criterion6, criterion7};
  bool ok = true;
  for (int i = 1; i <= 7; ++i) {
    if (only != 0 && only != i) continue;
    try {
      ok = all[i - 1]() && ok;
    } catch (const std::exception& e) {
      ok = report(i, false, std::string("threw: ") + e.what()) && false;
    }
  }
  return ok ? 0 : 1;
}
