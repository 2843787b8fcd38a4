#include "primpairs/characters/characters.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace primpairs;
using namespace primpairs::characters;
using ff::FieldCtx;

namespace {

// F_4, F_8, F_9, F_16, F_81, F_64, F_2187 (all with q^m <= 2^12)
const std::vector<std::array<unsigned, 3>> kFields = {{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2},
                                                     {3, 1, 4}, {2, 1, 6}, {3, 1, 7}};

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

// Direct loop over alpha.
std::uint64_t direct_count(const FieldCtx& ctx, const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                           std::uint64_t l2) {
  std::uint64_t n = 0;
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement alpha{c};
    if (ff::in_exceptional_set(ctx, f, alpha)) continue;
    const FieldElement v = *ff::eval_rational(ctx, f, alpha);
    if (ctx.trace_value(alpha) != a || ctx.trace_value(ctx.inv(alpha)) != b) continue;
    if (ctx.is_u_free(alpha, l1) && ctx.is_u_free(v, l2)) ++n;
  }
  return n;
}

std::uint64_t exceptional_count(const FieldCtx& ctx, const RationalFunction& f) {
  std::uint64_t n = 0;
  for (Code c = 0; c < ctx.size(); ++c) n += ff::in_exceptional_set(ctx, f, {c});
  return n;
}

}  // namespace

TEST_CASE("roots of unity") {
  RootsOfUnity r(12);
  CHECK(std::abs(r[0] - ComplexVal(1, 0)) < 1e-15);
  CHECK(std::abs(r[3] - ComplexVal(0, 1)) < 1e-15);
  CHECK(std::abs(r[6] + ComplexVal(1, 0)) < 1e-15);
  CHECK(r[13] == r[1]);
}

TEST_CASE("characters need a dlog table") {
  CHECK_THROWS_AS(CharacterTables(FieldCtx::build(2, 1, 4, ff::BuildOptions{.dlog_limit = 8})), std::logic_error);
}

TEST_CASE("multiplicative characters: orders, orthogonality, multiplicativity") {
  for (auto [p, k, m] : kFields) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    const std::uint64_t N = ctx.group_order_u64();
    std::uint64_t total = 0;
    for (auto d : divisors(N)) {
      const auto chars = ch.all_chars_of_order(d);
      CHECK(big(chars.size()) == arith::factor(big(d)).euler_phi());
      total += chars.size();
      for (const auto& chi : chars) CHECK(chi.order == d);
    }
    CHECK(total == N);

    const auto trivial = ch.all_chars_of_order(1);
    REQUIRE(trivial.size() == 1);
    for (Code c = 1; c < ctx.size(); ++c) CHECK(std::abs(ch.eval(trivial[0], {c}) - 1.0) < 1e-12);

    if (p != 2) {
      const auto quad = ch.all_chars_of_order(2);
      REQUIRE(quad.size() == 1);
      for (Code c = 1; c < ctx.size(); ++c) {
        const bool square = ctx.dlog({c}) % 2 == 0;
        CHECK(std::abs(ch.eval(quad[0], {c}) - (square ? 1.0 : -1.0)) < 1e-12);
      }
    }

    std::mt19937_64 rng(p * 1000 + k * 100 + m);
    const std::uint64_t step = std::max<std::uint64_t>(1, N / 40);
    for (std::uint64_t e = 1; e < N; e += step) {
      const MultChar chi = ch.character(e);
      ComplexVal sum = 0.0;
      for (Code c = 1; c < ctx.size(); ++c) sum += ch.eval(chi, {c});
      CHECK(std::abs(sum) < tolerance(N));
      for (int t = 0; t < 20; ++t) {
        const FieldElement x{1 + rng() % N}, y{1 + rng() % N};
        CHECK(std::abs(ch.eval(chi, ctx.mul(x, y)) - ch.eval(chi, x) * ch.eval(chi, y)) < 1e-9);
      }
    }
  }
}

TEST_CASE("additive characters: homomorphism, orthogonality, subfield restriction") {
  for (auto [p, k, m] : kFields) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    for (Code x = 0; x < ctx.q(); ++x) {
      for (Code y = 0; y < ctx.q(); ++y) {
        CHECK(std::abs(ch.psi0(ctx.base_add(x, y)) - ch.psi0(x) * ch.psi0(y)) < 1e-12);
      }
      // on F_q the lifted character is psi_0^m
      CHECK(std::abs(ch.psi0_hat(ctx.from_base(x)) - std::pow(ch.psi0(x), static_cast<int>(m))) < 1e-9);
    }
    ComplexVal sum = 0.0;
    for (Code c = 0; c < ctx.size(); ++c) sum += ch.psi0_hat({c});
    CHECK(std::abs(sum) < tolerance(ctx.size()));
  }
  const CharacterTables f9(FieldCtx::build(3, 2, 1));
  ComplexVal base_sum = 0.0;
  for (Code x = 0; x < 9; ++x) base_sum += f9.psi0(x);
  CHECK(std::abs(base_sum) < 1e-9);
}

TEST_CASE("rho_u is the u-free indicator") {
  for (auto [p, k, m] : kFields) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    const std::uint64_t N = ctx.group_order_u64();
    for (auto u : divisors(N)) {
      for (Code c = 1; c < ctx.size(); ++c) {
        const ComplexVal r = ch.rho_u({c}, u);
        const double expected = ctx.is_u_free({c}, u) ? 1.0 : 0.0;
        if (std::abs(r - expected) >= 1e-6) FAIL("rho_u mismatch: field " << p << "^" << k * m << " u=" << u);
      }
    }
  }
  const CharacterTables f4(FieldCtx::build(2, 1, 2));
  CHECK(std::abs(f4.rho_u(f4.ctx().generator(), 3) - 1.0) < 1e-12);
  CHECK(std::abs(f4.rho_u(f4.ctx().one(), 3)) < 1e-12);
  CHECK(std::abs(f4.rho_u(f4.ctx().one(), 1) - 1.0) < 1e-12);
}

TEST_CASE("tau_a is the trace indicator") {
  for (auto [p, k, m] : kFields) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    for (Code c = 0; c < ctx.size(); ++c) {
      ComplexVal partition = 0.0;
      for (Code a = 0; a < ctx.q(); ++a) {
        const ComplexVal t = ch.tau_a({c}, a);
        partition += t;
        const double expected = ctx.trace_value({c}) == a ? 1.0 : 0.0;
        if (std::abs(t - expected) >= 1e-6) FAIL("tau_a mismatch");
      }
      CHECK(std::abs(partition - 1.0) < 1e-9);
    }
    for (Code c = 0; c < ctx.q(); ++c) {
      Code ma = 0;
      for (unsigned i = 0; i < m; ++i) ma = ctx.base_add(ma, c);
      CHECK(std::abs(ch.tau_a(ctx.from_base(c), ma) - 1.0) < 1e-9);
    }
  }
  const CharacterTables f64(FieldCtx::build(2, 1, 6));
  ComplexVal sum = 0.0;
  for (Code c = 0; c < 64; ++c) sum += f64.tau_a({c}, 0);
  CHECK(std::abs(sum - 32.0) < 1e-9);
}

TEST_CASE("chi_fab: grouped sum equals term-by-term sum") {
  for (auto [p, k, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {3, 1, 4}}) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    std::mt19937_64 rng(17 + p + m);
    for (int t = 0; t < 12; ++t) {
      const unsigned n1 = rng() % 3, n2 = n1 == 0 ? 1 + rng() % 2 : rng() % 3;
      const auto f = ff::random_rational_function(ctx, n1, n2, rng);
      const Code a = rng() % ctx.q(), b = rng() % ctx.q();
      const MultChar c1 = ch.character(rng() % ctx.group_order_u64());
      const MultChar c2 = ch.character(rng() % ctx.group_order_u64());
      const ComplexVal fast = ch.chi_fab(f, a, b, c1, c2);
      const ComplexVal slow = ch.chi_fab_direct(f, a, b, c1, c2);
      CHECK(std::abs(fast - slow) < tolerance(ctx.size() * ctx.q() * ctx.q()));
    }
  }
}

TEST_CASE("chi_fab: trivial characters isolate the main term") {
  // summing over all (a, b) keeps only u = v = 0: q^2 (q^m - |S|)
  for (auto [p, k, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 2}, {3, 1, 2}, {2, 1, 6}, {3, 1, 4}}) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    const RationalFunction ident{ctx.one(), {ctx.zero(), ctx.one()}, {ctx.one()}};
    const MultChar one = ch.character(0);
    ComplexVal total = 0.0;
    for (Code a = 0; a < ctx.q(); ++a) {
      for (Code b = 0; b < ctx.q(); ++b) total += ch.chi_fab(ident, a, b, one, one);
    }
    const double q2 = static_cast<double>(ctx.q() * ctx.q());
    CHECK(std::abs(total - q2 * static_cast<double>(ctx.size() - exceptional_count(ctx, ident))) < 1e-6);
  }
  // F_4 over F_2, f = x, a = b = 0: q^2 times the number of alpha with both traces 0
  const CharacterTables f4(FieldCtx::build(2, 1, 2));
  const auto& ctx = f4.ctx();
  const RationalFunction ident{ctx.one(), {ctx.zero(), ctx.one()}, {ctx.one()}};
  std::uint64_t both_zero = 0;
  for (Code c = 1; c < 4; ++c) {
    both_zero += ctx.trace_value({c}) == 0 && ctx.trace_value(ctx.inv({c})) == 0;
  }
  const ComplexVal v = f4.chi_fab_direct(ident, 0, 0, f4.character(0), f4.character(0));
  CHECK(std::abs(v - 4.0 * static_cast<double>(both_zero)) < 1e-9);
}

TEST_CASE("chi_fab: Weil-type bound on random draws") {
  for (auto [p, k, m] : kFields) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    std::mt19937_64 rng(1000 + p * 10 + m);
    for (int t = 0; t < 100; ++t) {
      const unsigned n = 1 + rng() % 3;
      const unsigned n1 = rng() % (n + 1), n2 = n - n1;
      const auto f = ff::random_rational_function(ctx, n1, n2, rng);
      const Code a = rng() % ctx.q(), b = rng() % ctx.q();
      const MultChar c1 = ch.character(rng() % ctx.group_order_u64());
      const MultChar c2 = ch.character(rng() % ctx.group_order_u64());
      const double bound = (n + 2) * std::pow(static_cast<double>(ctx.q()), m / 2.0 + 2.0);
      CHECK(std::abs(ch.chi_fab(f, a, b, c1, c2)) <= bound);
    }
  }
}

TEST_CASE("count_via_characters matches direct enumeration") {
  for (auto [p, k, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {3, 1, 4}, {2, 1, 6}}) {
    const CharacterTables ch(FieldCtx::build(p, k, m));
    const auto& ctx = ch.ctx();
    const std::uint64_t N = ctx.group_order_u64();
    const auto divs = divisors(N);
    std::mt19937_64 rng(99 + p * m);
    for (int t = 0; t < 6; ++t) {
      const unsigned n1 = rng() % 3, n2 = n1 == 0 ? 1 + rng() % 2 : rng() % 3;
      const auto f = ff::random_rational_function(ctx, n1, n2, rng);
      const Code a = rng() % ctx.q(), b = rng() % ctx.q();
      const std::uint64_t l1 = divs[rng() % divs.size()], l2 = divs[rng() % divs.size()];
      const double est = ch.count_via_characters(f, a, b, l1, l2);
      const auto exact = direct_count(ctx, f, a, b, l1, l2);
      CHECK(std::abs(est - static_cast<double>(exact)) < 0.5);
      CHECK(std::llround(est) == static_cast<long long>(exact));
      CHECK(ch.count_via_characters_parallel(f, a, b, l1, l2) == est);
    }
    // l1 = l2 = 1 partitions q^m - |S| over the trace grid
    const auto f = ff::random_rational_function(ctx, 1, 1, rng);
    double total = 0;
    for (Code a = 0; a < ctx.q(); ++a) {
      for (Code b = 0; b < ctx.q(); ++b) {
        const double est = ch.count_via_characters(f, a, b, 1, 1);
        CHECK(std::abs(est - static_cast<double>(direct_count(ctx, f, a, b, 1, 1))) < 1e-9);
        total += est;
      }
    }
    CHECK(std::abs(total - static_cast<double>(ctx.size() - exceptional_count(ctx, f))) < 1e-6);
  }
  // full primitivity on F_81 with a degree-(1,1) function
  const CharacterTables f81(FieldCtx::build(3, 1, 4));
  std::mt19937_64 rng(81);
  for (int t = 0; t < 5; ++t) {
    const auto f = ff::random_rational_function(f81.ctx(), 1, 1, rng);
    const Code a = rng() % 3, b = rng() % 3;
    CHECK(std::llround(f81.count_via_characters(f, a, b, 80, 80)) ==
          static_cast<long long>(direct_count(f81.ctx(), f, a, b, 80, 80)));
  }
}
