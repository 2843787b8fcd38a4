#include "primpairs/ff/field.hpp"
#include "primpairs/ff/poly.hpp"
#include "primpairs/ff/rational_function.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

using namespace primpairs;
using namespace primpairs::ff;

namespace {

// Conjugate sum by repeated q-th powering through square-and-multiply only.
FieldElement trace_oracle(const FieldCtx& ctx, FieldElement a) {
  FieldElement acc = ctx.zero(), conj = a;
  for (unsigned i = 0; i < ctx.m(); ++i) {
    acc = ctx.add(acc, conj);
    FieldElement next = ctx.one();
    for (std::uint64_t j = 0; j < ctx.q(); ++j) next = ctx.mul(next, conj);
    conj = next;
  }
  return acc;
}

std::uint64_t order_oracle(const FieldCtx& ctx, FieldElement a) {
  std::uint64_t n = 1;
  for (FieldElement x = a; x != ctx.one(); x = ctx.mul(x, a)) ++n;
  return n;
}

const std::vector<std::array<unsigned, 3>> kSmallFields = {
    {2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {3, 1, 4}, {2, 1, 6}, {2, 3, 2}, {5, 1, 3}, {3, 2, 3}, {2, 4, 3}};

}  // namespace

TEST_CASE("build: F_4") {
  const auto ctx = FieldCtx::build(2, 1, 2);
  CHECK(ctx.modulus() == std::vector<Code>{1, 1, 1});
  CHECK(ctx.q() == 2);
  CHECK(ctx.size() == 4);
  CHECK(ctx.has_dlog());
  CHECK(ctx.generator() == FieldElement{2});
  const FieldElement g = ctx.generator();
  CHECK(ctx.is_primitive(g));
  CHECK(ctx.is_primitive(ctx.mul(g, g)));
  CHECK_FALSE(ctx.is_primitive(ctx.one()));
  CHECK_THROWS_AS(ctx.is_primitive(ctx.zero()), std::domain_error);
}

TEST_CASE("build: group orders") {
  const auto f37 = FieldCtx::build(3, 1, 7);
  CHECK(f37.size() == 2187);
  CHECK(f37.group_order().value() == 2186);
  CHECK(f37.group_order().omega() == 2);

  const auto f327 = FieldCtx::build(2, 5, 7, BuildOptions{.dlog_limit = 0});
  CHECK(f327.q() == 32);
  CHECK(f327.group_order().value() == BigInt("34359738367"));
  CHECK(f327.group_order().omega() == 4);
  CHECK_FALSE(f327.has_dlog());
  CHECK(f327.order(f327.generator()) == 34359738367ULL);

  CHECK_THROWS_AS(FieldCtx::build(4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx::build(2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx::build(2, 1, 70), std::length_error);
}

TEST_CASE("build: defining polynomials are irreducible and minimal") {
  for (auto [p, k, m] : kSmallFields) {
    const auto ctx = FieldCtx::build(p, k, m);
    PolyRing<PrimeFieldOps> prime_ring(PrimeFieldOps{p});
    CHECK(prime_ring.is_irreducible(ctx.base_modulus()));
    PolyRing<BaseFieldOps> base_ring(BaseFieldOps{&ctx});
    CHECK(base_ring.is_irreducible(ctx.modulus()));
    // every monic candidate with a smaller encoding is reducible
    Code enc = 0;
    for (std::size_t i = ctx.modulus().size() - 1; i-- > 0;) enc = enc * ctx.q() + ctx.modulus()[i];
    for (Code c = 0; c < enc; ++c) {
      std::vector<Code> f;
      Code rest = c;
      for (unsigned i = 0; i < m; ++i) {
        f.push_back(rest % ctx.q());
        rest /= ctx.q();
      }
      f.push_back(1);
      CHECK_FALSE(base_ring.is_irreducible(f));
    }
  }
}

TEST_CASE("arithmetic: table and polynomial paths agree") {
  for (auto [p, k, m] : kSmallFields) {
    const auto fast = FieldCtx::build(p, k, m);
    const auto slow = FieldCtx::build(p, k, m, BuildOptions{.dlog_limit = 0});
    REQUIRE(fast.has_dlog());
    REQUIRE_FALSE(slow.has_dlog());
    CHECK(fast.generator() == slow.generator());
    std::mt19937_64 rng(p * 100 + k * 10 + m);
    for (int t = 0; t < 300; ++t) {
      const FieldElement a{rng() % fast.size()}, b{rng() % fast.size()};
      CHECK(fast.add(a, b) == slow.add(a, b));
      CHECK(fast.mul(a, b) == slow.mul(a, b));
      CHECK(fast.sub(a, b) == slow.sub(a, b));
      CHECK(fast.add(a, fast.neg(a)) == fast.zero());
      const std::uint64_t e = rng() % 1000;
      CHECK(fast.pow(a, e) == slow.pow(a, e));
      if (a.code) {
        CHECK(fast.inv(a) == slow.inv(a));
        CHECK(fast.mul(a, fast.inv(a)) == fast.one());
        CHECK(fast.order(a) == slow.order(a));
      }
    }
  }
}

TEST_CASE("dlog table inverts generator powers") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  for (Code c = 1; c < ctx.size(); ++c) {
    if (ctx.pow(ctx.generator(), ctx.dlog({c})) != FieldElement{c}) FAIL("dlog mismatch at " << c);
  }
}

TEST_CASE("trace: examples, linearity, Frobenius invariance") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  CHECK(ctx.trace_to_base(ctx.zero()) == ctx.zero());
  for (Code c = 0; c < ctx.q(); ++c) {
    CHECK(ctx.trace_to_base(ctx.from_base(c)) == ctx.from_base(7 * c % 3));
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const FieldElement a{rng() % ctx.size()}, b{rng() % ctx.size()};
    CHECK(ctx.trace_to_base(a) == trace_oracle(ctx, a));
    CHECK(ctx.trace_to_base(ctx.add(a, b)) == ctx.add(ctx.trace_to_base(a), ctx.trace_to_base(b)));
    CHECK(ctx.trace_to_base(ctx.frobenius(a)) == ctx.trace_to_base(a));
    CHECK(ctx.trace_value(a) == ctx.trace_to_base(a).code);
  }
}

TEST_CASE("trace: surjective with equal fibres") {
  for (auto [p, k, m] : kSmallFields) {
    const auto ctx = FieldCtx::build(p, k, m);
    REQUIRE(ctx.size() <= (1u << 16));
    std::map<Code, std::uint64_t> fibres;
    for (Code c = 0; c < ctx.size(); ++c) {
      const Code t = ctx.trace_value({c});
      CHECK(t == ctx.trace_to_base({c}).code);
      ++fibres[t];
    }
    CHECK(fibres.size() == ctx.q());
    for (auto [value, count] : fibres) CHECK(count == ctx.size() / ctx.q());
  }
}

TEST_CASE("subfield absolute trace") {
  const auto ctx = FieldCtx::build(2, 3, 2);
  std::map<std::uint64_t, int> hits;
  for (Code c = 0; c < ctx.q(); ++c) {
    ++hits[ctx.base_absolute_trace(c)];
    for (Code d = 0; d < ctx.q(); ++d) {
      CHECK(ctx.base_absolute_trace(ctx.base_add(c, d)) == (ctx.base_absolute_trace(c) ^ ctx.base_absolute_trace(d)));
    }
  }
  CHECK(hits[0] == 4);
  CHECK(hits[1] == 4);
}

TEST_CASE("primitive elements and orders") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  std::uint64_t primitive = 0;
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement a{c};
    const std::uint64_t ord = ctx.order(a);
    CHECK(ctx.group_order_u64() % ord == 0);
    if (c < 200) CHECK(ord == order_oracle(ctx, a));
    primitive += ctx.is_primitive(a);
    CHECK(ctx.is_primitive(a) == (ord == ctx.group_order_u64()));
  }
  CHECK(primitive == 1092);
}

TEST_CASE("u-free") {
  const auto f4 = FieldCtx::build(2, 1, 2);
  int three_free = 0;
  for (Code c = 1; c < 4; ++c) {
    CHECK(f4.is_u_free({c}, 1));
    three_free += f4.is_u_free({c}, 3);
  }
  CHECK(three_free == 2);
  CHECK_FALSE(f4.is_u_free(f4.one(), 3));
  CHECK_THROWS_AS(f4.is_u_free(f4.one(), 2), std::invalid_argument);

  const auto ctx = FieldCtx::build(3, 1, 4);  // 80 = 2^4 * 5
  const std::vector<std::uint64_t> divisors = {1, 2, 4, 5, 8, 10, 16, 20, 40, 80};
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement a{c};
    CHECK(ctx.is_u_free(a, 80) == ctx.is_primitive(a));
    const std::uint64_t ord = ctx.order(a);
    for (auto u : divisors) {
      CHECK(ctx.is_u_free(a, u) == (std::gcd(u, 80 / ord) == 1));
      for (auto v : divisors) {
        if (std::gcd(u, v) != 1 || 80 % (u * v) != 0) continue;
        CHECK(ctx.is_u_free(a, u * v) == (ctx.is_u_free(a, u) && ctx.is_u_free(a, v)));
      }
    }
  }
}

TEST_CASE("json round trip") {
  for (auto [p, k, m] : kSmallFields) {
    const auto ctx = FieldCtx::build(p, k, m);
    const auto back = FieldCtx::from_json(ctx.to_json());
    CHECK(back.to_json() == ctx.to_json());
    CHECK(back.mul({5 % ctx.size()}, {7 % ctx.size()}) == ctx.mul({5 % ctx.size()}, {7 % ctx.size()}));
  }
  CHECK_THROWS_AS(FieldCtx::from_json(R"({"p":2,"k":1,"m":2,"base_modulus":[0,1],"modulus":[1,0,1],"generator":2})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx::from_json(R"({"p":2,"k":1,"m":2,"base_modulus":[0,1],"modulus":[1,1,1],"generator":1})"),
                  std::invalid_argument);
}

TEST_CASE("irreducibles: counts") {
  const auto f4 = FieldCtx::build(2, 1, 2);
  CHECK(find_irreducibles(f4, 1).size() == 4);
  CHECK(find_irreducibles(f4, 2).size() == 6);
  CHECK(find_irreducibles(f4, 3).size() == 20);
  CHECK(count_monic_irreducibles(4, 3) == 20);
  CHECK(count_monic_irreducibles(2187, 2) == 2390391);
  CHECK(find_irreducibles(f4, 2, 2).size() == 2);

  // quadratic shortcut agrees with Ben-Or
  for (auto [p, k, m] : std::vector<std::array<unsigned, 3>>{{2, 1, 2}, {3, 1, 2}, {2, 1, 3}, {5, 1, 1}, {3, 2, 1}}) {
    const auto ctx = FieldCtx::build(p, k, m);
    PolyRing<ExtFieldOps> ring(ExtFieldOps{&ctx});
    std::uint64_t n = 0;
    for (Code c = 0; c < ctx.size(); ++c) {
      for (Code b = 0; b < ctx.size(); ++b) {
        const ExtPoly f = {{c}, {b}, ctx.one()};
        CHECK(is_irreducible(ctx, f) == ring.is_irreducible(f));
        n += is_irreducible(ctx, f);
      }
    }
    CHECK(big(n) == count_monic_irreducibles(ctx.size(), 2));
  }
}

TEST_CASE("irreducibles: exhaustive quadratics over F_2187") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  std::uint64_t n = 0;
  ExtPoly last;
  for_each_irreducible(ctx, 2, [&](const ExtPoly& f) {
    ++n;
    if (n == 1) CHECK(f == ExtPoly{{1}, {0}, {1}});
    last = f;
    return true;
  });
  CHECK(n == 2390391);
}

TEST_CASE("eval_rational") {
  const auto ctx = FieldCtx::build(3, 1, 7);
  const RationalFunction ident{ctx.one(), {ctx.zero(), ctx.one()}, {ctx.one()}};
  validate(ctx, ident);
  for (Code c = 0; c < 50; ++c) CHECK(eval_rational(ctx, ident, {c}) == FieldElement{c});

  const RationalFunction sq{ctx.one(), {ctx.one(), ctx.zero(), ctx.one()}, {ctx.one()}};
  validate(ctx, sq);
  for (Code c = 0; c < ctx.size(); ++c) {
    const FieldElement a{c};
    const auto v = eval_rational(ctx, sq, a);
    REQUIRE(v.has_value());
    CHECK(*v == ctx.add(ctx.mul(a, a), ctx.one()));
    CHECK(v->code != 0);
  }

  const FieldElement beta{17}, cst{5};
  const RationalFunction pole{cst, {ctx.one()}, {ctx.neg(beta), ctx.one()}};
  validate(ctx, pole);
  CHECK_FALSE(eval_rational(ctx, pole, beta).has_value());
  CHECK(in_exceptional_set(ctx, pole, beta));
  CHECK(in_exceptional_set(ctx, pole, ctx.zero()));
  CHECK(eval_rational(ctx, pole, ctx.zero()) == ctx.mul(cst, ctx.inv(ctx.neg(beta))));

  CHECK_FALSE(is_valid(ctx, RationalFunction{ctx.one(), {ctx.one()}, {ctx.one()}}));
  CHECK_FALSE(is_valid(ctx, RationalFunction{ctx.zero(), {ctx.zero(), ctx.one()}, {ctx.one()}}));
  CHECK_FALSE(is_valid(ctx, RationalFunction{ctx.one(), {ctx.zero(), ctx.one()}, {ctx.zero(), ctx.one()}}));
  CHECK_FALSE(is_valid(ctx, RationalFunction{ctx.one(), {ctx.zero(), ctx.zero(), ctx.one()}, {ctx.one()}}));
  CHECK(to_string(pole) == "5*(1)/(x + " + std::to_string(ctx.neg(beta).code) + ")");
}
