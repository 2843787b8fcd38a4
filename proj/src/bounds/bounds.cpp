#include "primpairs/bounds/bounds.hpp"

#include "primpairs/arith/primes.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace primpairs::bounds {

namespace {

void require_m(unsigned m) {
  if (m < 5) throw std::invalid_argument("conditions need m >= 5, got m = " + std::to_string(m));
}

Comparison compare(const BigInt& lhs, const BigInt& rhs) {
  const int c = cmp(lhs, rhs);
  return c < 0 ? Comparison::less : c > 0 ? Comparison::greater : Comparison::equal;
}

double log2_big(const BigInt& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

BigInt prime_product(std::size_t count) {
  BigInt prod = 1;
  for (std::uint32_t p : arith::PrimeTable::shared().first(count)) prod *= p;
  return prod;
}

}  // namespace

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::less: return "less";
    case Comparison::equal: return "equal";
    case Comparison::greater: return "greater";
  }
  return "?";
}

Comparison compare_main(std::uint64_t q, unsigned m, unsigned n, const BigInt& W) {
  require_m(m);
  const BigInt rhs = BigInt(n + 2) * W * W;
  return compare(pow(q, m - 4), rhs * rhs);
}

bool main_condition(std::uint64_t q, unsigned m, unsigned n, const BigInt& W) {
  return compare_main(q, m, n, W) == Comparison::greater;
}

bool w_below_tenth_root(const BigInt& M, unsigned omega) { return pow(BigInt(2), 10UL * omega) < M; }

Lemma473Report lemma_473_boundary() {
  Lemma473Report r;
  const BigInt p473 = prime_product(473), p472 = prime_product(472);
  r.holds_at_473 = w_below_tenth_root(p473, 473);
  r.fails_at_472 = !w_below_tenth_root(p472, 472);
  r.log2_margin_473 = log2_big(p473) - 4730.0;
  r.log2_margin_472 = log2_big(p472) - 4720.0;
  return r;
}

SieveParams sieve_params(const FactoredInteger& group_order, const FactoredInteger& l_radical) {
  if (!l_radical.is_squarefree()) throw std::invalid_argument("l must be squarefree");
  if (group_order.value() % l_radical.value() != 0) throw std::invalid_argument("l must divide q^m - 1");
  SieveParams out;
  ExactRational sum(0);
  for (const auto& pp : group_order.factors()) {
    if (l_radical.value() % pp.prime == 0) continue;
    ++out.s;
    sum += ExactRational(BigInt(1), pp.prime);
  }
  out.delta = ExactRational(1) - ExactRational(2) * sum;
  if (out.delta.sign() > 0) {
    out.Delta = ExactRational(static_cast<long>(2 * out.s) - 1) / out.delta + ExactRational(2);
  }
  return out;
}

bool sieve_condition(std::uint64_t q, unsigned m, unsigned n, const SieveCertificate& cert) {
  require_m(m);
  if (!cert.Delta) return false;
  const BigInt W = cert.l_radical.squarefree_divisor_count();
  const BigInt rhs = cert.Delta->numerator() * (n + 2) * W * W;
  const BigInt den = cert.Delta->denominator();
  return den * den * pow(q, m - 4) > rhs * rhs;
}

SieveCertificate make_certificate(std::uint64_t q, unsigned m, unsigned n, const FactoredInteger& group_order,
                                  const FactoredInteger& l_radical) {
  auto params = sieve_params(group_order, l_radical);
  SieveCertificate cert{q, m, n, l_radical, params.s, std::move(params.delta), std::move(params.Delta), false};
  cert.passes = sieve_condition(q, m, n, cert);
  return cert;
}

std::optional<SieveCertificate> certificate_search(std::uint64_t q, unsigned m, unsigned n,
                                                   const FactoredInteger& group_order, unsigned max_primes) {
  const auto factors = group_order.factors();
  const std::size_t t = std::min<std::size_t>(factors.size(), max_primes);
  struct Candidate {
    unsigned size;
    BigInt product;
    std::vector<arith::PrimePower> primes;
  };
  std::vector<Candidate> candidates;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    Candidate c{0, 1, {}};
    for (std::size_t i = 0; i < t; ++i) {
      if (mask >> i & 1) {
        ++c.size;
        c.product *= factors[i].prime;
        c.primes.push_back({factors[i].prime, 1});
      }
    }
    candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return x.size != y.size ? x.size < y.size : x.product < y.product;
  });
  for (auto& c : candidates) {
    auto cert = make_certificate(q, m, n, group_order, FactoredInteger::from_trusted_factors(std::move(c.primes)));
    if (cert.passes) return cert;
  }
  return std::nullopt;
}

std::string certificate_json(const SieveCertificate& cert) {
  nlohmann::ordered_json j;
  j["q"] = cert.q;
  j["m"] = cert.m;
  j["n"] = cert.n;
  j["l"] = primpairs::to_string(cert.l_radical.value());
  j["s"] = cert.s;
  j["delta"] = cert.delta.to_fraction();
  j["delta_decimal"] = cert.delta.to_decimal(10);
  if (cert.Delta) {
    j["Delta"] = cert.Delta->to_fraction();
    j["Delta_decimal"] = cert.Delta->to_decimal_ceil(10);
  } else {
    j["Delta"] = nullptr;
    j["Delta_decimal"] = nullptr;
  }
  j["passes"] = cert.passes;
  return j.dump();
}

std::string certificate_csv_row(const SieveCertificate& cert, std::size_t sr) {
  std::ostringstream os;
  os << sr << ',' << cert.q << ',' << primpairs::to_string(cert.l_radical.value()) << ',' << cert.s << ','
     << cert.delta.to_decimal(10) << ',' << (cert.Delta ? cert.Delta->to_decimal_ceil(10) : "");
  return os.str();
}

WorstCaseRow worst_case_row(unsigned a, unsigned b, unsigned n) {
  if (a < 1 || b < a) throw std::invalid_argument("window needs b >= a >= 1");
  const auto primes = arith::PrimeTable::shared().first(b);
  WorstCaseRow row;
  row.a = a;
  row.b = b;
  row.n = n;
  row.W_l = pow(BigInt(2), a);
  ExactRational sum(0);
  for (unsigned i = a; i < b; ++i) sum += ExactRational(BigInt(1), big(primes[i]));
  row.delta_lower = ExactRational(1) - ExactRational(2) * sum;
  if (row.delta_lower.sign() > 0) {
    const long s = static_cast<long>(b - a);
    row.Delta_upper = ExactRational(2 * s - 1) / row.delta_lower + ExactRational(2);
    row.bound = ExactRational(static_cast<long>(n + 2)) * *row.Delta_upper * ExactRational(row.W_l * row.W_l);
    row.bound_value = row.bound.ceil();
  }
  return row;
}

std::vector<CascadeEntry> threshold_cascade(const BigInt& B7, const BigInt& B8) {
  std::vector<CascadeEntry> out;
  auto push = [&](unsigned m, std::uint64_t limit) {
    if (!out.empty() && out.back().q_limit == limit && out.back().m_to + 1 == m) {
      out.back().m_to = m;
    } else {
      out.push_back({m, m, limit});
    }
  };
  // smallest X with X^e > T
  auto least_above = [](const BigInt& T, unsigned e) {
    BigInt root;
    mpz_root(root.get_mpz_t(), T.get_mpz_t(), e);  // floor of the e-th root
    std::uint64_t x = to_u64(root);
    while (pow(x, e) <= T) ++x;
    while (x > 2 && pow(x - 1, e) > T) --x;
    return x;
  };
  push(7, least_above(B7 * B7, 3));
  for (unsigned m = 8;; ++m) {
    const std::uint64_t limit = least_above(B8 * B8 * B8 * B8, m);
    if (limit <= 2) break;
    push(m, limit);
  }
  return out;
}

std::vector<CascadeEntry> threshold_cascade(unsigned n) {
  const auto r7 = worst_case_row(kTable1Windows[kLastRowAllM].a, kTable1Windows[kLastRowAllM].b, n);
  const auto r8 = worst_case_row(kTable1Windows[kLastRowM8].a, kTable1Windows[kLastRowM8].b, n);
  return threshold_cascade(r7.bound_value, r8.bound_value);
}

std::vector<PrimePowerQ> prime_powers_below(std::uint64_t limit) {
  std::vector<PrimePowerQ> out;
  if (limit <= 2) return out;
  for (std::uint32_t p : arith::primes_up_to(limit - 1)) {
    std::uint64_t q = p;
    for (unsigned k = 1; q < limit; ++k, q *= p) out.push_back({q, p, k});
  }
  return out;
}

FactoredInteger group_order(std::uint64_t q, unsigned m, const arith::FactorConfig& config,
                            arith::FactorCache* cache) {
  if (cache) return cache->get_or_factor_power_minus_one(q, m, config);
  return arith::factor_power_minus_one(q, m, config);
}

namespace {

struct Job {
  unsigned m;
  PrimePowerQ pq;
};

std::vector<Job> scan_jobs(const std::vector<CascadeEntry>& cascade) {
  std::vector<Job> jobs;
  for (const auto& e : cascade) {
    const auto qs = prime_powers_below(e.q_limit);
    for (unsigned m = e.m_from; m <= e.m_to; ++m) {
      for (const auto& pq : qs) jobs.push_back({m, pq});
    }
  }
  return jobs;
}

std::optional<ScanEntry> scan_one(const Job& job, const ScanOptions& options) {
  const auto f = group_order(job.pq.q, job.m, options.factor_config, options.cache);
  const Comparison c = compare_main(job.pq.q, job.m, options.n, f.squarefree_divisor_count());
  if (c == Comparison::greater) return std::nullopt;
  return ScanEntry{job.m, job.pq.q, job.pq.p, job.pq.k, static_cast<unsigned>(f.omega()), c};
}

}  // namespace

std::vector<ScanEntry> scan_serial(const std::vector<CascadeEntry>& cascade, const ScanOptions& options) {
  std::vector<ScanEntry> out;
  for (const auto& job : scan_jobs(cascade)) {
    if (auto e = scan_one(job, options)) out.push_back(*e);
  }
  return out;
}

std::vector<ScanEntry> scan_parallel(const std::vector<CascadeEntry>& cascade, const ScanOptions& options) {
  const auto jobs = scan_jobs(cascade);
  std::vector<std::optional<ScanEntry>> results(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
  // large q^m - 1 cluster at the end of each m block; dynamic keeps threads busy
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      results[i] = scan_one(jobs[i], options);
    } catch (...) {
#pragma omp critical(primpairs_scan_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<ScanEntry> out;
  for (auto& r : results) {
    if (r) out.push_back(*r);
  }
  return out;
}

}  // namespace primpairs::bounds
