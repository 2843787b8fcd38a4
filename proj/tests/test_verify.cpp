#include "primpairs/verify/verify.hpp"

#include <doctest.h>

#include <json.hpp>

#include <numeric>
#include <random>

using namespace primpairs;
using namespace primpairs::verify;

namespace {

RationalFunction identity(const FieldCtx& ctx) { return {ctx.one(), {ctx.zero(), ctx.one()}, {ctx.one()}}; }

std::uint64_t enumerated(const FieldCtx& ctx, unsigned n1, unsigned n2) {
  std::uint64_t n = 0;
  enumerate_R(ctx, n1, n2, EnumMode::all(), [&](const RationalFunction& f) {
    CHECK(ff::is_valid(ctx, f));
    ++n;
    return true;
  });
  return n;
}

}  // namespace

TEST_CASE("prime power decomposition") {
  CHECK(prime_power_decompose(32) == std::make_pair<std::uint64_t, unsigned>(2, 5));
  CHECK(prime_power_decompose(19583) == std::make_pair<std::uint64_t, unsigned>(19583, 1));
  CHECK_FALSE(prime_power_decompose(12));
  CHECK_FALSE(prime_power_decompose(1));
}

TEST_CASE("enumerate_R: counts and order") {
  const auto f4 = FieldCtx::build(2, 1, 2);
  CHECK(enumerated(f4, 1, 1) == 36);
  CHECK(count_representatives(f4, 1, 1) == 36);
  CHECK(enumerated(f4, 2, 0) == 18);
  CHECK(enumerated(f4, 0, 2) == 18);
  CHECK(count_representatives(f4, 2, 1) == 3 * 6 * 4);
  CHECK_THROWS_AS(enumerated(f4, 0, 0), std::invalid_argument);

  std::vector<RationalFunction> first;
  enumerate_R(f4, 1, 1, EnumMode::all(), [&](const RationalFunction& f) {
    first.push_back(f);
    return first.size() < 3;
  });
  REQUIRE(first.size() == 3);
  CHECK(first[0].scale == f4.one());
  CHECK(first[0].numerator == ff::ExtPoly{{0}, {1}});
  CHECK(first[0].denominator == ff::ExtPoly{{1}, {1}});
  CHECK(first[1].denominator == ff::ExtPoly{{2}, {1}});

  const auto f37 = FieldCtx::build(3, 1, 7);
  std::vector<std::string> a, b;
  enumerate_R(f37, 1, 1, EnumMode::sample(1000, 1), [&](const RationalFunction& f) {
    a.push_back(ff::to_string(f));
    return true;
  });
  enumerate_R(f37, 1, 1, EnumMode::sample(1000, 1), [&](const RationalFunction& f) {
    b.push_back(ff::to_string(f));
    return true;
  });
  CHECK(a.size() == 1000);
  CHECK(a == b);
}

TEST_CASE("brute force count: F_4 by hand") {
  const auto f4 = FieldCtx::build(2, 1, 2);
  // Tr(y) = y + y^2: Tr(1) = 0, Tr(x) = Tr(x+1) = 1, so only alpha = 1 qualifies
  CHECK(brute_force_count(f4, identity(f4), 0, 0, 1, 1) == 1);
  CHECK(brute_force_count(f4, identity(f4), 1, 1, 1, 1) == 2);
  CHECK(brute_force_count(f4, identity(f4), 1, 1, 3, 3) == 2);
  CHECK(brute_force_count(f4, identity(f4), 0, 0, 3, 3) == 0);
}

TEST_CASE("count table: (3,7), f = x^2 + 1") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  const FieldTables tables(ctx);
  const RationalFunction f{ctx.one(), {ctx.one(), ctx.zero(), ctx.one()}, {ctx.one()}};
  const auto t = count_table(tables, f);
  CHECK(t.q == 3);
  CHECK(t.counts.size() == 9);
  std::uint64_t independent = 0;
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement a{c};
    const FieldElement v = ctx.add(ctx.mul(a, a), ctx.one());
    independent += ctx.order(a) == 2186 && v.code != 0 && ctx.order(v) == 2186;
  }
  CHECK(t.total() == independent);
  CHECK(t.total() <= 1092);
  for (auto c : t.counts) CHECK(c <= 1092);
  CHECK(count_table(tables, f).counts == t.counts);
  CHECK(count_table_parallel(tables, f).counts == t.counts);
  for (Code a = 0; a < 3; ++a) {
    for (Code b = 0; b < 3; ++b) CHECK(brute_force_count(ctx, f, a, b, 2186, 2186) == t.at(a, b));
  }
  const auto j = nlohmann::json::parse(count_table_json(t));
  CHECK(j["total"] == t.total());
  CHECK(j["counts"].size() == 3);
}

TEST_CASE("brute force count: larger l shrinks the count") {
  const auto ctx = FieldCtx::build(3, 1, 4);
  std::mt19937_64 rng(8);
  const std::vector<std::uint64_t> chain = {1, 2, 10, 40, 80};
  for (int t = 0; t < 10; ++t) {
    const auto f = ff::random_rational_function(ctx, 1, 1, rng);
    const Code a = rng() % 3, b = rng() % 3;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      CHECK(brute_force_count(ctx, f, a, b, chain[i - 1], 80) >= brute_force_count(ctx, f, a, b, chain[i], 80));
    }
    // partition check over the grid
    const FieldTables tables(ctx);
    std::uint64_t grid = 0;
    for (Code x = 0; x < 3; ++x) {
      for (Code y = 0; y < 3; ++y) grid += brute_force_count(ctx, f, x, y, 80, 80);
    }
    CHECK(grid == count_table(tables, f).total());
  }
}

TEST_CASE("scaled functions stay within phi") {
  const auto ctx = FieldCtx::build(2, 1, 6);
  const FieldTables tables(ctx);
  std::mt19937_64 rng(12);
  const auto f = ff::random_rational_function(ctx, 2, 0, rng);
  for (Code c = 1; c < ctx.size(); c += 7) {
    auto g = f;
    g.scale = ctx.mul(f.scale, {c});
    const auto t = count_table(tables, g);
    CHECK(t.total() <= 36);  // phi(63)
    CHECK(count_table(tables, g).counts == t.counts);
  }
}

TEST_CASE("witness search: serial and parallel agree") {
  for (auto [p, k, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 1, 4}}) {
    const FieldTables tables(FieldCtx::build(p, k, m));
    for (auto [n1, n2] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 0}, {0, 2}, {1, 0}}) {
      const auto s = witness_search_serial(tables, n1, n2, 10'000'000, 50, 3);
      const auto q = witness_search_parallel(tables, n1, n2, 10'000'000, 50, 3);
      CHECK(s.exhaustive);
      CHECK(s.functions_checked == q.functions_checked);
      REQUIRE(s.witness.has_value() == q.witness.has_value());
      if (s.witness) {
        CHECK(s.witness->f == q.witness->f);
        CHECK(s.witness->a == q.witness->a);
        CHECK(s.witness->b == q.witness->b);
        CHECK(check_witness(tables.ctx(), *s.witness));
      } else {
        CHECK(big(s.functions_checked) == count_representatives(tables.ctx(), n1, n2));
      }
    }
    // sampled mode
    const auto s = witness_search_serial(tables, 1, 1, 0, 40, 9);
    const auto q = witness_search_parallel(tables, 1, 1, 0, 40, 9);
    CHECK_FALSE(s.exhaustive);
    CHECK(s.functions_checked == q.functions_checked);
  }
}

TEST_CASE("resolve_pair") {
  const auto v = resolve_pair(32, 7, 2);
  CHECK(v.status == Status::certified_sieve);
  REQUIRE(v.certificate);
  CHECK(v.certificate->l_radical.value() == 1);
  CHECK(v.certificate->s == 4);

  CHECK(resolve_pair(101, 9, 2).status == Status::certified_main);

  Budget small;
  small.alpha_limit = 1000;
  const auto u = resolve_pair(83, 8, 2, small);
  CHECK(u.status == Status::undecided);

  Budget sampled;
  sampled.samples = 200;
  const auto s = resolve_pair(3, 7, 2, sampled);
  CHECK((s.status == Status::verified_sampled || s.status == Status::exception_witness));
  if (s.witness) CHECK(check_witness(FieldCtx::build(3, 1, 7), *s.witness));
  sampled.parallel = false;
  CHECK(verdict_json(resolve_pair(3, 7, 2, sampled)) == verdict_json(s));

  const auto j = nlohmann::json::parse(verdict_json(v));
  CHECK(j["status"] == "certified_sieve");
  CHECK(j["certificate"]["l"] == "1");

  CHECK_THROWS_AS(resolve_pair(12, 7, 2), std::invalid_argument);
}

TEST_CASE("crosscheck identity") {
  const auto f4 = crosscheck_identity(FieldCtx::build(2, 1, 2), 20, 1);
  CHECK(f4.trials.size() == 20);
  CHECK(f4.max_deviation < 1e-6);
  CHECK(f4.all_rounded_equal);

  const auto f81 = crosscheck_identity(FieldCtx::build(3, 1, 4), 10, 2);
  CHECK(f81.all_within);
  CHECK(f81.all_rounded_equal);

  const auto j = nlohmann::json::parse(crosscheck_json(f81));
  CHECK(j["trials"] == 10);
}
