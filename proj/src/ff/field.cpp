#include "primpairs/ff/field.hpp"

#include "primpairs/ff/poly.hpp"

#include <json.hpp>

#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace primpairs::ff {

namespace {

using u128 = unsigned __int128;

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit, std::uint64_t& out) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
    if (r > limit) return false;
  }
  out = static_cast<std::uint64_t>(r);
  return true;
}

std::vector<Code> digits(std::uint64_t value, std::uint64_t base, unsigned count) {
  std::vector<Code> out(count);
  for (unsigned i = 0; i < count; ++i) {
    out[i] = value % base;
    value /= base;
  }
  return out;
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

}  // namespace

struct FieldCtx::BaseTables {
  std::vector<std::uint32_t> exp;  // size q - 1
  std::vector<std::uint32_t> log;  // size q, log[0] unused
};

struct FieldCtx::DlogTables {
  std::vector<std::uint32_t> exp;   // size q^m - 1
  std::vector<std::uint32_t> log;   // size q^m, log[0] unused
  std::vector<std::uint32_t> zech;  // log(1 + g^i), kNoLog when 1 + g^i = 0
};

// ---------------------------------------------------------------------------
// Construction

FieldCtx FieldCtx::build(std::uint64_t p, unsigned k, unsigned m, const BuildOptions& options) {
  return assemble(p, k, m, options, nullptr, nullptr, nullptr);
}

FieldCtx FieldCtx::assemble(std::uint64_t p, unsigned k, unsigned m, const BuildOptions& options,
                            const std::vector<Code>* base_modulus, const std::vector<Code>* modulus,
                            const FieldElement* generator) {
  if (k == 0 || m == 0) throw std::invalid_argument("field degrees must be positive");
  if (!arith::is_prime_u64(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  FieldCtx ctx;
  ctx.p_ = p;
  ctx.k_ = k;
  ctx.m_ = m;
  if (!checked_pow(p, k, options.max_order, ctx.q_)) throw std::length_error("base field too large");
  if (k > 1 && ctx.q_ > options.max_base_order) throw std::length_error("non-prime base field too large");
  if (!checked_pow(ctx.q_, m, options.max_order, ctx.size_)) throw std::length_error("extension field too large");

  // F_q over F_p.
  const PolyRing<PrimeFieldOps> prime_ring(PrimeFieldOps{p});
  if (base_modulus) {
    if (base_modulus->size() != k + 1 || base_modulus->back() != 1) {
      throw std::invalid_argument("base modulus must be monic of degree k");
    }
    for (Code c : *base_modulus) {
      if (c >= p) throw std::invalid_argument("base modulus coefficient out of range");
    }
    if (!prime_ring.is_irreducible(*base_modulus)) throw std::invalid_argument("base modulus is reducible");
    ctx.base_modulus_ = *base_modulus;
  } else if (k == 1) {
    ctx.base_modulus_ = {0, 1};
  } else {
    const std::uint64_t count = ctx.q_;  // p^k candidates for the low coefficients
    for (std::uint64_t enc = 0; enc < count; ++enc) {
      auto f = digits(enc, p, k);
      f.push_back(1);
      if (prime_ring.is_irreducible(f)) {
        ctx.base_modulus_ = std::move(f);
        break;
      }
    }
  }

  if (k > 1) {
    // log/exp tables for F_q, relative to its smallest generator
    auto tables = std::make_shared<BaseTables>();
    const std::uint64_t order = ctx.q_ - 1;
    const auto order_factors = arith::factor(big(order));
    Code gen = 0;
    for (Code cand = 2; cand < ctx.q_ && gen == 0; ++cand) {
      bool primitive = true;
      for (const auto& pp : order_factors.factors()) {
        std::uint64_t e = order / to_u64(pp.prime);
        Code r = 1, b = cand;
        for (; e; e >>= 1) {
          if (e & 1) r = ctx.base_mul_poly(r, b);
          b = ctx.base_mul_poly(b, b);
        }
        if (r == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = cand;
    }
    tables->exp.resize(order);
    tables->log.assign(ctx.q_, kNoLog);
    Code cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      tables->exp[i] = static_cast<std::uint32_t>(cur);
      tables->log[cur] = static_cast<std::uint32_t>(i);
      cur = ctx.base_mul_poly(cur, gen);
    }
    ctx.base_tables_ = std::move(tables);
  }

  // F_{q^m} over F_q.
  const PolyRing<BaseFieldOps> base_ring(BaseFieldOps{&ctx});
  if (modulus) {
    if (modulus->size() != m + 1 || modulus->back() != 1) {
      throw std::invalid_argument("modulus must be monic of degree m");
    }
    for (Code c : *modulus) {
      if (c >= ctx.q_) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (!base_ring.is_irreducible(*modulus)) throw std::invalid_argument("modulus is reducible");
    ctx.modulus_ = *modulus;
  } else if (m == 1) {
    ctx.modulus_ = {0, 1};
  } else {
    for (std::uint64_t enc = 0; enc < ctx.size_; ++enc) {
      auto f = digits(enc, ctx.q_, m);
      f.push_back(1);
      if (base_ring.is_irreducible(f)) {
        ctx.modulus_ = std::move(f);
        break;
      }
    }
  }

  ctx.group_order_ = std::make_shared<const arith::FactoredInteger>(
      arith::factor_power_minus_one(ctx.q_, m, options.factor_config));
  for (const auto& pp : ctx.group_order_->factors()) ctx.group_primes_.push_back(to_u64(pp.prime));

  ctx.basis_trace_.resize(m);
  for (unsigned i = 0; i < m; ++i) {
    std::vector<Code> coeffs(m, 0);
    coeffs[i] = 1;
    ctx.basis_trace_[i] = ctx.trace_to_base(ctx.from_coefficients(coeffs)).code;
  }

  if (generator) {
    if (!ctx.contains(*generator) || generator->code == 0 || !ctx.is_primitive(*generator)) {
      throw std::invalid_argument("generator is not primitive");
    }
    ctx.generator_ = *generator;
  } else {
    for (Code c = 1; c < ctx.size_; ++c) {
      if (ctx.is_primitive({c})) {
        ctx.generator_ = {c};
        break;
      }
    }
  }

  if (ctx.size_ <= options.dlog_limit) {
    auto tables = std::make_shared<DlogTables>();
    const std::uint64_t order = ctx.size_ - 1;
    tables->exp.resize(order);
    tables->log.assign(ctx.size_, kNoLog);
    FieldElement cur = ctx.one();
    for (std::uint64_t i = 0; i < order; ++i) {
      if (tables->log[cur.code] != kNoLog) throw std::logic_error("generator order below q^m - 1");
      tables->exp[i] = static_cast<std::uint32_t>(cur.code);
      tables->log[cur.code] = static_cast<std::uint32_t>(i);
      cur = ctx.mul_slow(cur, ctx.generator_);
    }
    if (cur != ctx.one()) throw std::logic_error("generator power cycle broken");
    tables->zech.resize(order);
    for (std::uint64_t i = 0; i < order; ++i) {
      const Code s = ctx.digit_add(tables->exp[i], 1);
      tables->zech[i] = s == 0 ? kNoLog : tables->log[s];
    }
    ctx.tables_ = std::move(tables);
  }
  return ctx;
}

std::string FieldCtx::to_json() const {
  nlohmann::json j;
  j["p"] = p_;
  j["k"] = k_;
  j["m"] = m_;
  j["base_modulus"] = base_modulus_;
  j["modulus"] = modulus_;
  j["generator"] = generator_.code;
  return j.dump();
}

FieldCtx FieldCtx::from_json(const std::string& text, const BuildOptions& options) {
  const auto j = nlohmann::json::parse(text);
  const auto base = j.at("base_modulus").get<std::vector<Code>>();
  const auto mod = j.at("modulus").get<std::vector<Code>>();
  const FieldElement gen{j.at("generator").get<Code>()};
  return assemble(j.at("p").get<std::uint64_t>(), j.at("k").get<unsigned>(), j.at("m").get<unsigned>(), options,
                  &base, &mod, &gen);
}

// ---------------------------------------------------------------------------
// F_q

Code FieldCtx::digit_add(Code a, Code b) const {
  if (p_ == 2) return a ^ b;
  Code r = 0, scale = 1;
  while (a || b) {
    const Code d = (a % p_ + b % p_) % p_;
    r += d * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Code FieldCtx::digit_neg(Code a) const {
  if (p_ == 2) return a;
  Code r = 0, scale = 1;
  while (a) {
    const Code d = a % p_;
    r += (d ? p_ - d : 0) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Code FieldCtx::base_add(Code a, Code b) const {
  if (k_ == 1) return (a + b) % p_;
  return digit_add(a, b);
}

Code FieldCtx::base_neg(Code a) const {
  if (k_ == 1) return a ? p_ - a : 0;
  return digit_neg(a);
}

Code FieldCtx::base_mul_poly(Code a, Code b) const {
  const PolyRing<PrimeFieldOps> ring(PrimeFieldOps{p_});
  auto fa = digits(a, p_, k_), fb = digits(b, p_, k_);
  ring.trim(fa);
  ring.trim(fb);
  auto r = ring.mod(ring.mul(fa, fb), base_modulus_);
  Code out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

Code FieldCtx::base_mul(Code a, Code b) const {
  if (k_ == 1) return mulmod64(a, b, p_);
  if (a == 0 || b == 0) return 0;
  if (!base_tables_) return base_mul_poly(a, b);
  const auto& t = *base_tables_;
  const std::uint64_t s = (std::uint64_t{t.log[a]} + t.log[b]) % (q_ - 1);
  return t.exp[s];
}

Code FieldCtx::base_inv(Code a) const {
  if (a == 0) throw std::domain_error("inverse of zero in base field");
  if (k_ == 1) return PrimeFieldOps{p_}.inv(a);
  const auto& t = *base_tables_;
  return t.exp[(q_ - 1 - t.log[a]) % (q_ - 1)];
}

std::uint64_t FieldCtx::base_absolute_trace(Code a) const {
  Code acc = 0, cur = a;
  for (unsigned j = 0; j < k_; ++j) {
    acc = base_add(acc, cur);
    Code next = 1;
    for (std::uint64_t i = 0; i < p_; ++i) next = base_mul(next, cur);
    cur = next;
  }
  if (acc >= p_) throw std::logic_error("absolute trace left the prime field");
  return acc;
}

// ---------------------------------------------------------------------------
// F_{q^m}

FieldElement FieldCtx::from_base(Code c) const {
  if (c >= q_) throw std::out_of_range("base field code out of range");
  return {c};
}

FieldElement FieldCtx::from_coefficients(std::span<const Code> coeffs) const {
  if (coeffs.size() > m_) throw std::invalid_argument("too many coefficients");
  Code out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= q_) throw std::out_of_range("coefficient out of range");
    out = out * q_ + coeffs[i];
  }
  return {out};
}

std::vector<Code> FieldCtx::coefficients(FieldElement a) const { return digits(a.code, q_, m_); }

FieldElement FieldCtx::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return {a.code ^ b.code};
  if (!tables_) return {digit_add(a.code, b.code)};
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  const auto& t = *tables_;
  const std::uint64_t order = size_ - 1;
  const std::uint64_t la = t.log[a.code], lb = t.log[b.code];
  const std::uint32_t z = t.zech[(lb + order - la) % order];
  if (z == kNoLog) return {0};
  return {t.exp[(la + z) % order]};
}

FieldElement FieldCtx::neg(FieldElement a) const {
  if (p_ == 2) return a;
  return {digit_neg(a.code)};
}

FieldElement FieldCtx::mul_slow(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return {0};
  const auto ca = coefficients(a), cb = coefficients(b);
  std::vector<Code> prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) {
      if (cb[j] == 0) continue;
      prod[i + j] = base_add(prod[i + j], base_mul(ca[i], cb[j]));
    }
  }
  // modulus_ is monic of degree m
  for (std::size_t i = prod.size(); i-- > m_;) {
    const Code c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < m_; ++j) {
      if (modulus_[j] == 0) continue;
      prod[i - m_ + j] = base_sub(prod[i - m_ + j], base_mul(c, modulus_[j]));
    }
    prod[i] = 0;
  }
  prod.resize(m_);
  return from_coefficients(prod);
}

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return {0};
  if (!tables_) return mul_slow(a, b);
  const auto& t = *tables_;
  return {t.exp[(std::uint64_t{t.log[a.code]} + t.log[b.code]) % (size_ - 1)]};
}

FieldElement FieldCtx::pow_slow(FieldElement a, std::uint64_t e) const {
  FieldElement r = one(), b = a;
  while (e) {
    if (e & 1) r = mul_slow(r, b);
    e >>= 1;
    if (e) b = mul_slow(b, b);
  }
  return r;
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code == 0) return zero();
  if (!tables_) return pow_slow(a, e);
  const std::uint64_t order = size_ - 1;
  return {tables_->exp[mulmod64(tables_->log[a.code], e % order, order)]};
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  if (!tables_) return pow_slow(a, size_ - 2);
  const std::uint64_t order = size_ - 1;
  return {tables_->exp[(order - tables_->log[a.code]) % order]};
}

FieldElement FieldCtx::trace_to_base(FieldElement a) const {
  FieldElement acc = a, conj = a;
  for (unsigned i = 1; i < m_; ++i) {
    conj = frobenius(conj);
    acc = add(acc, conj);
  }
  if (!in_base_field(acc)) throw std::logic_error("trace left the base field");
  return acc;
}

Code FieldCtx::trace_value(FieldElement a) const {
  if (p_ == 2 && k_ == 1) {
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < m_; ++i) mask |= basis_trace_[i] << i;
    return std::popcount(a.code & mask) & 1;
  }
  Code acc = 0, rest = a.code;
  for (unsigned i = 0; i < m_ && rest; ++i) {
    const Code c = rest % q_;
    rest /= q_;
    if (c) acc = base_add(acc, base_mul(c, basis_trace_[i]));
  }
  return acc;
}

bool FieldCtx::is_power_of_prime(FieldElement a, std::uint64_t r) const {
  if (tables_) return tables_->log[a.code] % r == 0;
  return pow(a, (size_ - 1) / r) == one();
}

std::uint64_t FieldCtx::order(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("order of zero");
  std::uint64_t n = size_ - 1;
  for (std::uint64_t r : group_primes_) {
    while (n % r == 0 && pow(a, n / r) == one()) n /= r;
  }
  return n;
}

bool FieldCtx::is_primitive(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("primitivity of zero");
  if (tables_) return std::gcd(std::uint64_t{tables_->log[a.code]}, size_ - 1) == 1;
  for (std::uint64_t r : group_primes_) {
    if (pow(a, (size_ - 1) / r) == one()) return false;
  }
  return true;
}

bool FieldCtx::is_u_free(FieldElement a, std::uint64_t u) const {
  if (a.code == 0) throw std::domain_error("u-freeness of zero");
  if (u == 0 || (size_ - 1) % u != 0) throw std::invalid_argument("u must divide q^m - 1");
  for (std::uint64_t r : group_primes_) {
    if (u % r == 0 && is_power_of_prime(a, r)) return false;
  }
  return true;
}

void FieldCtx::require_dlog() const {
  if (!tables_) throw std::logic_error("field has no discrete-log table (q^m above dlog limit)");
}

std::uint64_t FieldCtx::dlog(FieldElement a) const {
  require_dlog();
  if (a.code == 0) throw std::domain_error("log of zero");
  return tables_->log[a.code];
}

FieldElement FieldCtx::exp(std::uint64_t i) const {
  require_dlog();
  return {tables_->exp[i % (size_ - 1)]};
}

std::span<const std::uint32_t> FieldCtx::exp_table() const {
  require_dlog();
  return tables_->exp;
}

std::span<const std::uint32_t> FieldCtx::log_table() const {
  require_dlog();
  return tables_->log;
}

}  // namespace primpairs::ff
