#include "primpairs/characters/characters.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace primpairs::characters {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

}  // namespace

RootsOfUnity::RootsOfUnity(std::uint64_t n) : n_(n), table_(n) {
  if (n == 0) throw std::invalid_argument("roots of unity of order 0");
  for (std::uint64_t k = 0; k < n; ++k) {
    table_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
}

std::vector<DivisorTerm> squarefree_divisor_terms(std::uint64_t u) {
  if (u == 0) throw std::invalid_argument("u must be positive");
  std::vector<DivisorTerm> out;
  for (const auto& d : arith::factor(big(u)).squarefree_divisors()) {
    out.push_back({to_u64(d.value()), to_u64(d.euler_phi()), d.moebius()});
  }
  return out;
}

double theta(std::uint64_t u) {
  return to_u64(arith::factor(big(u)).euler_phi()) / static_cast<double>(u);
}

struct CharacterTables::Prepared {
  std::vector<std::uint32_t> log_alpha;
  std::vector<std::uint32_t> log_f;
  std::vector<std::uint32_t> trace_alpha;
  std::vector<std::uint32_t> trace_inv;
};

CharacterTables::CharacterTables(FieldCtx ctx)
    : ctx_(std::move(ctx)),
      order_(ctx_.group_order_u64()),
      mult_roots_(ctx_.group_order_u64()),
      p_roots_(ctx_.p()),
      abs_trace_(ctx_.q()) {
  if (!ctx_.has_dlog()) throw std::logic_error("character tables need a discrete-log table");
  for (Code c = 0; c < ctx_.q(); ++c) abs_trace_[c] = ctx_.base_absolute_trace(c);
}

MultChar CharacterTables::character(std::uint64_t exponent) const {
  exponent %= order_;
  return {exponent, order_ / std::gcd(exponent, order_)};
}

std::vector<MultChar> CharacterTables::all_chars_of_order(std::uint64_t d) const {
  if (d == 0 || order_ % d != 0) throw std::invalid_argument("character order must divide q^m - 1");
  std::vector<MultChar> out;
  const std::uint64_t step = order_ / d;
  for (std::uint64_t j = 0; j < d; ++j) {
    if (std::gcd(j, d) == 1) out.push_back({j * step, d});
  }
  return out;
}

ComplexVal CharacterTables::eval(MultChar chi, FieldElement x) const {
  if (x.code == 0) return 0.0;
  return mult_roots_[mulmod(chi.exponent, ctx_.dlog(x), order_)];
}

ComplexVal CharacterTables::rho_u(FieldElement alpha, std::uint64_t u) const {
  if (alpha.code == 0) throw std::domain_error("rho_u of zero");
  if (u == 0 || order_ % u != 0) throw std::invalid_argument("u must divide q^m - 1");
  ComplexVal sum = 0.0;
  for (const auto& t : squarefree_divisor_terms(u)) {
    ComplexVal inner = 0.0;
    for (const auto& chi : all_chars_of_order(t.d)) inner += eval(chi, alpha);
    sum += static_cast<double>(t.mu) / static_cast<double>(t.phi) * inner;
  }
  return theta(u) * sum;
}

ComplexVal CharacterTables::tau_a(FieldElement alpha, Code a) const {
  if (a >= ctx_.q()) throw std::out_of_range("a must lie in F_q");
  const Code diff = ctx_.base_sub(ctx_.trace_value(alpha), a);
  ComplexVal sum = 0.0;
  for (Code w = 0; w < ctx_.q(); ++w) sum += psi0(ctx_.base_mul(w, diff));
  return sum / static_cast<double>(ctx_.q());
}

CharacterTables::Prepared CharacterTables::prepare(const RationalFunction& f) const {
  Prepared pre;
  for (Code c = 1; c < ctx_.size(); ++c) {
    const FieldElement alpha{c};
    if (ff::in_exceptional_set(ctx_, f, alpha)) continue;
    const FieldElement value = *ff::eval_rational(ctx_, f, alpha);
    pre.log_alpha.push_back(static_cast<std::uint32_t>(ctx_.dlog(alpha)));
    pre.log_f.push_back(static_cast<std::uint32_t>(ctx_.dlog(value)));
    pre.trace_alpha.push_back(static_cast<std::uint32_t>(ctx_.trace_value(alpha)));
    pre.trace_inv.push_back(static_cast<std::uint32_t>(ctx_.trace_value(ctx_.inv(alpha))));
  }
  return pre;
}

ComplexVal CharacterTables::chi_fab_prepared(const Prepared& pre, Code a, Code b, MultChar chi1,
                                             MultChar chi2) const {
  const std::uint64_t q = ctx_.q();
  std::vector<ComplexVal> bucket(q * q, 0.0);
  for (std::size_t i = 0; i < pre.log_alpha.size(); ++i) {
    const std::uint64_t e = (mulmod(chi1.exponent, pre.log_alpha[i], order_) +
                             mulmod(chi2.exponent, pre.log_f[i], order_)) % order_;
    bucket[pre.trace_alpha[i] * q + pre.trace_inv[i]] += mult_roots_[e];
  }
  ComplexVal total = 0.0;
  for (Code u = 0; u < q; ++u) {
    for (Code v = 0; v < q; ++v) {
      ComplexVal inner = 0.0;
      for (Code s = 0; s < q; ++s) {
        for (Code t = 0; t < q; ++t) {
          const ComplexVal w = bucket[s * q + t];
          if (w == 0.0) continue;
          inner += w * psi0(ctx_.base_add(ctx_.base_mul(u, s), ctx_.base_mul(v, t)));
        }
      }
      const Code outer = ctx_.base_neg(ctx_.base_add(ctx_.base_mul(a, u), ctx_.base_mul(b, v)));
      total += psi0(outer) * inner;
    }
  }
  return total;
}

ComplexVal CharacterTables::chi_fab(const RationalFunction& f, Code a, Code b, MultChar chi1, MultChar chi2) const {
  if (a >= ctx_.q() || b >= ctx_.q()) throw std::out_of_range("a, b must lie in F_q");
  return chi_fab_prepared(prepare(f), a, b, chi1, chi2);
}

ComplexVal CharacterTables::chi_fab_direct(const RationalFunction& f, Code a, Code b, MultChar chi1,
                                           MultChar chi2) const {
  if (a >= ctx_.q() || b >= ctx_.q()) throw std::out_of_range("a, b must lie in F_q");
  ComplexVal total = 0.0;
  for (Code u = 0; u < ctx_.q(); ++u) {
    for (Code v = 0; v < ctx_.q(); ++v) {
      const ComplexVal outer = psi0(ctx_.base_neg(ctx_.base_add(ctx_.base_mul(a, u), ctx_.base_mul(b, v))));
      ComplexVal inner = 0.0;
      for (Code c = 1; c < ctx_.size(); ++c) {
        const FieldElement alpha{c};
        if (ff::in_exceptional_set(ctx_, f, alpha)) continue;
        const FieldElement value = *ff::eval_rational(ctx_, f, alpha);
        const FieldElement arg =
            ctx_.add(ctx_.mul(ctx_.from_base(u), alpha), ctx_.mul(ctx_.from_base(v), ctx_.inv(alpha)));
        inner += eval(chi1, alpha) * eval(chi2, value) * psi0_hat(arg);
      }
      total += outer * inner;
    }
  }
  return total;
}

double CharacterTables::count_impl(const RationalFunction& f, Code a, Code b, std::uint64_t l1, std::uint64_t l2,
                                   bool parallel) const {
  if (l1 == 0 || l2 == 0 || order_ % l1 != 0 || order_ % l2 != 0) {
    throw std::invalid_argument("l1, l2 must divide q^m - 1");
  }
  if (a >= ctx_.q() || b >= ctx_.q()) throw std::out_of_range("a, b must lie in F_q");
  struct Term {
    MultChar chi1, chi2;
    double weight;
  };
  std::vector<Term> terms;
  const auto t1 = squarefree_divisor_terms(l1), t2 = squarefree_divisor_terms(l2);
  for (const auto& d1 : t1) {
    const auto c1 = all_chars_of_order(d1.d);
    for (const auto& d2 : t2) {
      const auto c2 = all_chars_of_order(d2.d);
      const double w = static_cast<double>(d1.mu * d2.mu) / static_cast<double>(d1.phi * d2.phi);
      for (const auto& x : c1) {
        for (const auto& y : c2) terms.push_back({x, y, w});
      }
    }
  }
  const Prepared pre = prepare(f);
  std::vector<ComplexVal> values(terms.size());
  const auto n = static_cast<std::int64_t>(terms.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    values[i] = terms[i].weight * chi_fab_prepared(pre, a, b, terms[i].chi1, terms[i].chi2);
  }
  ComplexVal sum = 0.0;
  for (const auto& v : values) sum += v;
  const double q = static_cast<double>(ctx_.q());
  return theta(l1) * theta(l2) / (q * q) * sum.real();
}

double CharacterTables::count_via_characters(const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                                             std::uint64_t l2) const {
  return count_impl(f, a, b, l1, l2, false);
}

double CharacterTables::count_via_characters_parallel(const RationalFunction& f, Code a, Code b, std::uint64_t l1,
                                                      std::uint64_t l2) const {
  return count_impl(f, a, b, l1, l2, true);
}

}  // namespace primpairs::characters
