#include "primpairs/arith/factor.hpp"

#include "primpairs/arith/primes.hpp"
#include "montgomery128.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace primpairs::arith {

using detail::Montgomery128;
using detail::u128;
using detail::u64;

namespace {

constexpr unsigned kSmallBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u128(u128 n, std::span<const std::uint32_t> bases) {
  if (n < 2) return false;
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u128 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  const Montgomery128 mont(n);
  const u128 one = mont.one();
  const u128 minus_one = mont.sub(0, one);
  for (u64 a : bases) {
    if (a % n == 0) continue;
    u128 x = mont.pow(mont.to_mont(a), d);
    if (x == one || x == minus_one) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mont.mul(x, x);
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool miller_rabin_mpz(const BigInt& n, std::span<const std::uint32_t> bases) {
  BigInt d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  d >>= r;
  const BigInt minus_one = n - 1;
  BigInt x;
  for (std::uint32_t a : bases) {
    BigInt base(static_cast<unsigned long>(a));
    if (base % n == 0) continue;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == minus_one) continue;
    bool composite = true;
    for (unsigned long i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const u128 kU128Limit = u128{1} << 127;

struct RhoState {
  std::uint64_t spent = 0;
  std::uint64_t budget = 0;
  void charge(std::uint64_t n) {
    spent += n;
    if (spent > budget) throw BudgetExceeded("Pollard rho budget exhausted");
  }
};

// Brent's variant of Pollard rho on an odd composite n < 2^127. Returns a
// nontrivial factor.
u128 brent_u128(u128 n, RhoState& state) {
  const Montgomery128 mont(n);
  constexpr u64 kBatch = 128;
  for (u64 c_raw = 1;; ++c_raw) {
    const u128 c = mont.to_mont(c_raw);
    auto step = [&](u128 v) { return mont.add(mont.mul(v, v), c); };
    u128 y = mont.to_mont(2), x = y, ys = y, acc = mont.one();
    u128 g = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      state.charge(r);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          acc = mont.mul(acc, x > y ? x - y : y - x);
        }
        state.charge(lim);
        g = detail::gcd128(acc, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = detail::gcd128(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt brent_mpz(const BigInt& n, RhoState& state) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1;; ++c) {
    auto step = [&](const BigInt& v) {
      BigInt t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    BigInt y = 2, x = y, ys = y, acc = 1, g = 1, diff;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      state.charge(r);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          diff = abs(x - y);
          acc = acc * diff % n;
        }
        state.charge(lim);
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt split(const BigInt& n, RhoState& state) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  if (fits_u128(n) && to_u128(n) < kU128Limit) return from_u128(brent_u128(to_u128(n), state));
  return brent_mpz(n, state);
}

std::vector<std::uint32_t> mr_bases(unsigned rounds) {
  rounds = std::max(rounds, 12u);
  const auto& table = PrimeTable::shared();
  return table.first(rounds);
}

// Products of consecutive trial primes that fit in 64 bits, so one
// multiprecision remainder screens several primes at once.
struct TrialBatch {
  u64 product;
  std::size_t begin;
  std::size_t end;
};

const std::vector<TrialBatch>& trial_batches() {
  static const std::vector<TrialBatch> batches = [] {
    std::vector<TrialBatch> out;
    const auto primes = PrimeTable::shared().primes();
    std::size_t i = 0;
    while (i < primes.size()) {
      TrialBatch b{1, i, i};
      while (b.end < primes.size() && static_cast<u128>(b.product) * primes[b.end] <= ~u64{0}) {
        b.product *= primes[b.end];
        ++b.end;
      }
      out.push_back(b);
      i = b.end;
    }
    return out;
  }();
  return batches;
}

void add_factor(std::map<BigInt, unsigned>& acc, const BigInt& p, unsigned e = 1) {
  acc[p] += e;
}

// Trial division by the primes <= limit. Returns the remaining cofactor.
BigInt trial_divide(BigInt n, std::uint32_t limit, std::map<BigInt, unsigned>& acc) {
  const auto primes = PrimeTable::shared().primes();
  auto divide_out = [&](std::uint32_t p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) add_factor(acc, BigInt(static_cast<unsigned long>(p)), e);
  };
  for (const TrialBatch& batch : trial_batches()) {
    if (primes[batch.begin] > limit) break;
    if (n == 1) break;
    if (fits_u64(n)) {
      u64 v = to_u64(n);
      for (std::size_t i = batch.begin; i < batch.end; ++i) {
        const u64 p = primes[i];
        if (p > limit) break;
        if (p * p > v) {
          if (v > 1) add_factor(acc, big(v));
          return 1;
        }
        if (v % p == 0) {
          unsigned e = 0;
          while (v % p == 0) {
            v /= p;
            ++e;
          }
          add_factor(acc, big(p), e);
        }
      }
      n = big(v);
      continue;
    }
    const u64 r = mpz_fdiv_ui(n.get_mpz_t(), batch.product);
    for (std::size_t i = batch.begin; i < batch.end; ++i) {
      if (primes[i] > limit) break;
      if (r % primes[i] == 0) divide_out(primes[i]);
    }
  }
  return n;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  static const std::uint32_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  return miller_rabin_u128(n, bases);
}

bool is_probable_prime(const BigInt& n, unsigned rounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned p : kSmallBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  const auto bases = mr_bases(rounds);
  if (fits_u128(n) && to_u128(n) < kU128Limit) return miller_rabin_u128(to_u128(n), bases);
  return miller_rabin_mpz(n, bases);
}

FactoredInteger FactoredInteger::from_trusted_factors(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredInteger out;
  for (auto& f : factors) {
    if (f.exponent == 0) continue;
    if (f.prime < 2) throw std::invalid_argument("factor below 2: " + primpairs::to_string(f.prime));
    if (!out.factors_.empty() && out.factors_.back().prime == f.prime) {
      out.factors_.back().exponent += f.exponent;
    } else {
      out.factors_.push_back(std::move(f));
    }
  }
  for (const auto& f : out.factors_) out.value_ *= pow(f.prime, f.exponent);
  return out;
}

FactoredInteger FactoredInteger::from_factors(std::vector<PrimePower> factors) {
  for (const auto& f : factors) {
    if (!is_probable_prime(f.prime)) throw std::invalid_argument("not prime: " + primpairs::to_string(f.prime));
  }
  return from_trusted_factors(std::move(factors));
}

std::vector<BigInt> FactoredInteger::primes() const {
  std::vector<BigInt> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

BigInt FactoredInteger::squarefree_divisor_count() const { return pow(BigInt(2), factors_.size()); }

BigInt FactoredInteger::euler_phi() const {
  BigInt r = 1;
  for (const auto& f : factors_) r *= (f.prime - 1) * pow(f.prime, f.exponent - 1);
  return r;
}

int FactoredInteger::moebius() const {
  for (const auto& f : factors_) {
    if (f.exponent > 1) return 0;
  }
  return factors_.size() % 2 == 0 ? 1 : -1;
}

bool FactoredInteger::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

FactoredInteger FactoredInteger::radical() const {
  std::vector<PrimePower> out;
  for (const auto& f : factors_) out.push_back({f.prime, 1});
  return from_trusted_factors(std::move(out));
}

std::vector<FactoredInteger> FactoredInteger::squarefree_divisors() const {
  if (factors_.size() > 24) throw std::length_error("too many squarefree divisors to enumerate");
  std::vector<FactoredInteger> out;
  const std::size_t count = std::size_t{1} << factors_.size();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<PrimePower> pick;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (mask >> i & 1) pick.push_back({factors_[i].prime, 1});
    }
    out.push_back(from_trusted_factors(std::move(pick)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value() < b.value(); });
  return out;
}

FactoredInteger FactoredInteger::divisor(const BigInt& d) const {
  if (d < 1) throw std::invalid_argument("divisor must be positive");
  BigInt rest = d;
  std::vector<PrimePower> out;
  for (const auto& f : factors_) {
    unsigned e = 0;
    while (e < f.exponent && mpz_divisible_p(rest.get_mpz_t(), f.prime.get_mpz_t())) {
      rest /= f.prime;
      ++e;
    }
    if (e) out.push_back({f.prime, e});
  }
  if (rest != 1) throw std::invalid_argument(primpairs::to_string(d) + " does not divide " + primpairs::to_string(value_));
  return from_trusted_factors(std::move(out));
}

FactoredInteger factor(const BigInt& n, const FactorConfig& config) {
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  std::map<BigInt, unsigned> acc;
  const std::uint32_t limit = std::min(config.trial_limit, PrimeTable::shared().limit());
  BigInt rest = trial_divide(n, limit, acc);
  RhoState state{0, config.rho_budget};
  std::vector<BigInt> pending;
  if (rest > 1) pending.push_back(rest);
  const BigInt trial_square = big(limit) * big(limit);
  while (!pending.empty()) {
    BigInt c = std::move(pending.back());
    pending.pop_back();
    if (c == 1) continue;
    if (c < trial_square || is_probable_prime(c, config.mr_rounds)) {
      add_factor(acc, c);
      continue;
    }
    if (mpz_perfect_square_p(c.get_mpz_t())) {
      BigInt r = sqrt(c);
      pending.push_back(r);
      pending.push_back(r);
      continue;
    }
    BigInt d = split(c, state);
    pending.push_back(c / d);
    pending.push_back(d);
  }
  std::vector<PrimePower> out;
  for (auto& [p, e] : acc) out.push_back({p, e});
  return FactoredInteger::from_trusted_factors(std::move(out));
}

FactoredInteger multiply(const FactoredInteger& a, const FactoredInteger& b) {
  std::vector<PrimePower> all(a.factors().begin(), a.factors().end());
  all.insert(all.end(), b.factors().begin(), b.factors().end());
  return FactoredInteger::from_trusted_factors(std::move(all));
}

FactoredInteger factor_power_minus_one(std::uint64_t q, unsigned m, const FactorConfig& config) {
  if (q < 2 || m < 1) throw std::invalid_argument("factor_power_minus_one: need q >= 2, m >= 1");
  // cyclotomic[d] = Phi_d(q) for d | m
  std::map<unsigned, BigInt> cyclotomic;
  FactoredInteger out;
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d) continue;
    BigInt v = pow(q, d) - 1;
    for (const auto& [e, phi] : cyclotomic) {
      if (d % e == 0) v /= phi;
    }
    cyclotomic[d] = v;
    out = multiply(out, factor(v, config));
  }
  return out;
}

std::string to_string(const FactoredInteger& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& pp : f.factors()) {
    if (!first) os << " * ";
    first = false;
    os << pp.prime.get_str(10);
    if (pp.exponent > 1) os << '^' << pp.exponent;
  }
  if (first) os << '1';
  return os.str();
}

}  // namespace primpairs::arith
