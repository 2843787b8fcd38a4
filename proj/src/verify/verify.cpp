#include "primpairs/verify/verify.hpp"

#include "primpairs/arith/primes.hpp"
#include "primpairs/characters/characters.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace primpairs::verify {

using nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::certified_main: return "certified_main";
    case Status::certified_sieve: return "certified_sieve";
    case Status::exception_witness: return "exception_witness";
    case Status::verified_exhaustive: return "verified_exhaustive";
    case Status::verified_sampled: return "verified_sampled";
    case Status::undecided: return "undecided";
  }
  return "?";
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto f = arith::factor(big(q));
  if (f.omega() != 1) return std::nullopt;
  return std::make_pair(to_u64(f.factors()[0].prime), f.factors()[0].exponent);
}

// ---------------------------------------------------------------------------

FieldTables::FieldTables(FieldCtx ctx) : ctx_(std::move(ctx)) {
  const std::uint64_t Q = ctx_.size();
  primitive_.assign(Q, 0);
  trace_.assign(Q, 0);
  trace_inv_.assign(Q, 0);
  for (Code c = 0; c < Q; ++c) {
    const FieldElement a{c};
    trace_[c] = static_cast<std::uint32_t>(ctx_.trace_value(a));
    if (c == 0) continue;
    primitive_[c] = ctx_.is_primitive(a);
    trace_inv_[c] = static_cast<std::uint32_t>(ctx_.trace_value(ctx_.inv(a)));
  }
}

std::uint64_t CountTable::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::optional<std::pair<Code, Code>> CountTable::first_zero() const {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) return std::make_pair(Code{i / q}, Code{i % q});
  }
  return std::nullopt;
}

namespace {

FieldElement eval_poly(const FieldCtx& ctx, const ff::ExtPoly& f, FieldElement x) {
  FieldElement r = ctx.zero();
  for (std::size_t i = f.size(); i-- > 0;) r = ctx.add(ctx.mul(r, x), f[i]);
  return r;
}

// Adds the primitive-pair contributions of alpha in [lo, hi) to counts.
void accumulate(const FieldTables& t, const RationalFunction& f, Code lo, Code hi, std::vector<std::uint64_t>& counts) {
  const auto& ctx = t.ctx();
  const std::uint64_t q = ctx.q();
  for (Code c = std::max<Code>(lo, 1); c < hi; ++c) {
    const FieldElement alpha{c};
    if (!t.primitive(alpha)) continue;
    const FieldElement den = eval_poly(ctx, f.denominator, alpha);
    if (den.code == 0) continue;
    const FieldElement num = eval_poly(ctx, f.numerator, alpha);
    if (num.code == 0) continue;
    const FieldElement v = ctx.mul(ctx.mul(f.scale, num), ctx.inv(den));
    if (!t.primitive(v)) continue;
    ++counts[t.trace(alpha) * q + t.trace_inv(alpha)];
  }
}

}  // namespace

CountTable count_table(const FieldTables& tables, const RationalFunction& f) {
  CountTable out{f, tables.ctx().q(), std::vector<std::uint64_t>(tables.ctx().q() * tables.ctx().q(), 0)};
  accumulate(tables, f, 1, tables.ctx().size(), out.counts);
  return out;
}

CountTable count_table_parallel(const FieldTables& tables, const RationalFunction& f) {
  const std::uint64_t Q = tables.ctx().size();
  const std::size_t cells = tables.ctx().q() * tables.ctx().q();
  CountTable out{f, tables.ctx().q(), std::vector<std::uint64_t>(cells, 0)};
  constexpr Code kChunk = 4096;
  const auto chunks = static_cast<std::int64_t>((Q + kChunk - 1) / kChunk);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < chunks; ++i) {
      accumulate(tables, f, i * kChunk, std::min<Code>(Q, (i + 1) * kChunk), local);
    }
#pragma omp critical(primpairs_count_merge)
    for (std::size_t j = 0; j < cells; ++j) out.counts[j] += local[j];
  }
  return out;
}

std::uint64_t brute_force_count(const FieldCtx& ctx, const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                                std::uint64_t l2) {
  std::uint64_t n = 0;
  for (Code c = 1; c < ctx.size(); ++c) {
    const FieldElement alpha{c};
    if (ff::in_exceptional_set(ctx, f, alpha)) continue;
    if (ctx.trace_value(alpha) != a || ctx.trace_value(ctx.inv(alpha)) != b) continue;
    if (!ctx.is_u_free(alpha, l1)) continue;
    if (ctx.is_u_free(*ff::eval_rational(ctx, f, alpha), l2)) ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------

BigInt count_representatives(const FieldCtx& ctx, unsigned n1, unsigned n2) {
  if (n1 + n2 == 0) throw std::invalid_argument("degenerate degrees n1 = n2 = 0");
  const BigInt i1 = n1 ? ff::count_monic_irreducibles(ctx.size(), n1) : BigInt(1);
  const BigInt i2 = n2 ? ff::count_monic_irreducibles(ctx.size(), n2) : BigInt(1);
  BigInt pairs = i1 * i2;
  if (n1 == n2) pairs -= i1;
  return big(ctx.size() - 1) * pairs;
}

namespace {

std::vector<ff::ExtPoly> irreducible_list(const FieldCtx& ctx, unsigned degree) {
  if (degree == 0) return {ff::ExtPoly{ctx.one()}};
  return ff::find_irreducibles(ctx, degree);
}

// Canonical enumeration as an index space: idx = (c - 1) |L1| |L2| + i |L2| + j.
struct ExhaustiveSpace {
  const FieldCtx* ctx;
  std::vector<ff::ExtPoly> L1, L2;

  std::uint64_t size() const { return (ctx->size() - 1) * L1.size() * L2.size(); }
  std::optional<RationalFunction> at(std::uint64_t idx) const {
    const std::uint64_t j = idx % L2.size();
    const std::uint64_t i = idx / L2.size() % L1.size();
    const std::uint64_t c = idx / (L2.size() * L1.size()) + 1;
    if (L1[i] == L2[j]) return std::nullopt;
    return RationalFunction{{c}, L1[i], L2[j]};
  }
};

std::vector<RationalFunction> sample_functions(const FieldCtx& ctx, unsigned n1, unsigned n2, std::uint64_t count,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RationalFunction> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(ff::random_rational_function(ctx, n1, n2, rng));
  return out;
}

}  // namespace

void enumerate_R(const FieldCtx& ctx, unsigned n1, unsigned n2, const EnumMode& mode,
                 const std::function<bool(const RationalFunction&)>& visit) {
  if (n1 + n2 == 0) throw std::invalid_argument("degenerate degrees n1 = n2 = 0");
  if (!mode.exhaustive) {
    std::mt19937_64 rng(mode.seed);
    for (std::uint64_t i = 0; i < mode.count; ++i) {
      if (!visit(ff::random_rational_function(ctx, n1, n2, rng))) return;
    }
    return;
  }
  const auto L1 = irreducible_list(ctx, n1), L2 = irreducible_list(ctx, n2);
  for (Code c = 1; c < ctx.size(); ++c) {
    for (const auto& p : L1) {
      for (const auto& d : L2) {
        if (p == d) continue;
        if (!visit(RationalFunction{{c}, p, d})) return;
      }
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::optional<Witness> witness_from(const FieldTables& t, const RationalFunction& f) {
  const auto table = count_table(t, f);
  if (auto z = table.first_zero()) return Witness{f, z->first, z->second};
  return std::nullopt;
}

// Lowest index in [0, n) whose function has a zero cell; `get` may return
// nullopt for skipped indices.
template <class Get>
std::uint64_t first_hit(const FieldTables& t, std::uint64_t n, const Get& get, bool parallel) {
  if (!parallel) {
    for (std::uint64_t i = 0; i < n; ++i) {
      if (auto f = get(i); f && count_table(t, *f).first_zero()) return i;
    }
    return kNone;
  }
  std::atomic<std::uint64_t> best{kNone};
  const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx > best.load(std::memory_order_relaxed)) continue;
    auto f = get(idx);
    if (!f || !count_table(t, *f).first_zero()) continue;
    std::uint64_t cur = best.load();
    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
    }
  }
  return best.load();
}

SearchResult witness_search(const FieldTables& t, unsigned n1, unsigned n2, std::uint64_t f_limit,
                            std::uint64_t samples, std::uint64_t seed, bool parallel) {
  const auto& ctx = t.ctx();
  SearchResult out;
  if (count_representatives(ctx, n1, n2) <= f_limit) {
    out.exhaustive = true;
    ExhaustiveSpace space{&ctx, irreducible_list(ctx, n1), irreducible_list(ctx, n2)};
    const std::uint64_t hit = first_hit(t, space.size(), [&](std::uint64_t i) { return space.at(i); }, parallel);
    const std::uint64_t end = hit == kNone ? space.size() : hit + 1;
    for (std::uint64_t i = 0; i < end; ++i) out.functions_checked += space.at(i).has_value();
    if (hit != kNone) out.witness = witness_from(t, *space.at(hit));
    return out;
  }
  const auto fs = sample_functions(ctx, n1, n2, samples, seed);
  const std::uint64_t hit =
      first_hit(t, fs.size(), [&](std::uint64_t i) { return std::optional<RationalFunction>(fs[i]); }, parallel);
  out.functions_checked = hit == kNone ? fs.size() : hit + 1;
  if (hit != kNone) out.witness = witness_from(t, fs[hit]);
  return out;
}

}  // namespace

SearchResult witness_search_serial(const FieldTables& tables, unsigned n1, unsigned n2, std::uint64_t f_limit,
                                   std::uint64_t samples, std::uint64_t seed) {
  return witness_search(tables, n1, n2, f_limit, samples, seed, false);
}

SearchResult witness_search_parallel(const FieldTables& tables, unsigned n1, unsigned n2, std::uint64_t f_limit,
                                     std::uint64_t samples, std::uint64_t seed) {
  return witness_search(tables, n1, n2, f_limit, samples, seed, true);
}

bool check_witness(const FieldCtx& ctx, const Witness& w) {
  ff::validate(ctx, w.f);
  const std::uint64_t N = ctx.group_order_u64();
  return brute_force_count(ctx, w.f, w.a, w.b, N, N) == 0;
}

PairVerdict resolve_pair(std::uint64_t q, unsigned m, unsigned n, const Budget& budget) {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  const auto pk = prime_power_decompose(q);
  if (!pk) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  PairVerdict v;
  v.q = q;
  v.m = m;
  v.n = n;
  if (m >= 5) {
    const auto g = bounds::group_order(q, m, budget.factor_config, budget.cache);
    if (bounds::main_condition(q, m, n, g.squarefree_divisor_count())) {
      v.status = Status::certified_main;
      v.coverage = "main condition with W(q^m-1) = 2^" + std::to_string(g.omega());
      return v;
    }
    if (auto cert = bounds::certificate_search(q, m, n, g)) {
      v.status = Status::certified_sieve;
      v.certificate = std::move(cert);
      v.coverage = "sieve over subsets of the 6 smallest primes of q^m-1";
      return v;
    }
  }
  if (pow(q, m) > big(budget.alpha_limit)) {
    v.coverage = "q^m exceeds the enumeration budget " + std::to_string(budget.alpha_limit);
    return v;
  }
  ff::BuildOptions opts;
  opts.dlog_limit = std::max(opts.dlog_limit, budget.alpha_limit);
  opts.factor_config = budget.factor_config;
  const FieldTables tables(FieldCtx::build(pk->first, pk->second, m, opts));
  bool all_exhaustive = true;
  std::ostringstream cov;
  for (unsigned n1 = n + 1; n1-- > 0;) {
    const unsigned n2 = n - n1;
    const auto r = budget.parallel
                       ? witness_search_parallel(tables, n1, n2, budget.f_limit, budget.samples, budget.seed)
                       : witness_search_serial(tables, n1, n2, budget.f_limit, budget.samples, budget.seed);
    v.functions_checked += r.functions_checked;
    all_exhaustive &= r.exhaustive;
    cov << (cov.tellp() > 0 ? " " : "") << '(' << n1 << ',' << n2 << "):" << (r.exhaustive ? "exhaustive" : "sampled")
        << ' ' << r.functions_checked;
    if (r.witness) {
      v.status = Status::exception_witness;
      v.witness = r.witness;
      v.coverage = cov.str();
      return v;
    }
  }
  v.status = all_exhaustive ? Status::verified_exhaustive : Status::verified_sampled;
  cov << " seed=" << budget.seed;
  v.coverage = cov.str();
  return v;
}

// ---------------------------------------------------------------------------

CrosscheckReport crosscheck_identity(const FieldCtx& ctx, std::uint64_t trials, std::uint64_t seed, unsigned n) {
  const characters::CharacterTables ch(ctx);
  const std::uint64_t N = ctx.group_order_u64();
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d * d <= N; ++d) {
    if (N % d) continue;
    divisors.push_back(d);
    if (d * d != N) divisors.push_back(N / d);
  }
  std::sort(divisors.begin(), divisors.end());
  std::mt19937_64 rng(seed);
  CrosscheckReport report;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const unsigned n1 = static_cast<unsigned>(rng() % (n + 1));
    const auto f = ff::random_rational_function(ctx, n1, n - n1, rng);
    const Code a = rng() % ctx.q(), b = rng() % ctx.q();
    const std::uint64_t l1 = divisors[rng() % divisors.size()], l2 = divisors[rng() % divisors.size()];
    const double via = ch.count_via_characters_parallel(f, a, b, l1, l2);
    const std::uint64_t exact = brute_force_count(ctx, f, a, b, l1, l2);
    const double dev = std::abs(via - static_cast<double>(exact));
    report.trials.push_back({f, a, b, l1, l2, via, exact, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
    report.all_within &= dev < 0.5;
    report.all_rounded_equal &= std::llround(via) == static_cast<long long>(exact);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

ordered_json poly_json(const ff::ExtPoly& f) {
  ordered_json j = ordered_json::array();
  for (auto c : f) j.push_back(c.code);
  return j;
}

ordered_json function_obj(const RationalFunction& f) {
  ordered_json j;
  j["scale"] = f.scale.code;
  j["numerator"] = poly_json(f.numerator);
  j["denominator"] = poly_json(f.denominator);
  j["text"] = ff::to_string(f);
  return j;
}

}  // namespace

std::string rational_function_json(const RationalFunction& f) { return function_obj(f).dump(); }

std::string verdict_json(const PairVerdict& v) {
  ordered_json j;
  j["q"] = v.q;
  j["m"] = v.m;
  j["n"] = v.n;
  j["status"] = to_string(v.status);
  j["certificate"] = v.certificate ? ordered_json::parse(bounds::certificate_json(*v.certificate)) : ordered_json();
  if (v.witness) {
    j["witness"] = {{"f", function_obj(v.witness->f)}, {"a", v.witness->a}, {"b", v.witness->b}};
  } else {
    j["witness"] = nullptr;
  }
  j["coverage"] = v.coverage;
  j["functions_checked"] = v.functions_checked;
  return j.dump();
}

std::string count_table_json(const CountTable& t) {
  ordered_json j;
  j["f"] = function_obj(t.f);
  j["q"] = t.q;
  ordered_json rows = ordered_json::array();
  for (Code a = 0; a < t.q; ++a) {
    ordered_json row = ordered_json::array();
    for (Code b = 0; b < t.q; ++b) row.push_back(t.at(a, b));
    rows.push_back(row);
  }
  j["counts"] = rows;
  j["total"] = t.total();
  return j.dump();
}

std::string crosscheck_json(const CrosscheckReport& r) {
  ordered_json j;
  j["trials"] = r.trials.size();
  j["max_deviation"] = r.max_deviation;
  j["all_within"] = r.all_within;
  j["all_rounded_equal"] = r.all_rounded_equal;
  ordered_json detail = ordered_json::array();
  for (const auto& t : r.trials) {
    detail.push_back({{"f", function_obj(t.f)},
                      {"a", t.a},
                      {"b", t.b},
                      {"l1", t.l1},
                      {"l2", t.l2},
                      {"via_characters", t.via_characters},
                      {"brute_force", t.brute_force},
                      {"deviation", t.deviation}});
  }
  j["detail"] = detail;
  return j.dump();
}

}  // namespace primpairs::verify
