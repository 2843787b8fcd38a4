#include "primpairs/ff/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace primpairs::ff {

namespace {

using Ring = PolyRing<ExtFieldOps>;

FieldElement eval_poly(const FieldCtx& ctx, const ExtPoly& f, FieldElement x) {
  FieldElement r = ctx.zero();
  for (std::size_t i = f.size(); i-- > 0;) r = ctx.add(ctx.mul(r, x), f[i]);
  return r;
}

bool is_monic(const ExtPoly& f) { return !f.empty() && f.back() == FieldElement{1}; }

bool is_square(const FieldCtx& ctx, FieldElement a) {
  if (a.code == 0) return true;
  if (ctx.p() == 2) return true;
  if (ctx.has_dlog()) return ctx.dlog(a) % 2 == 0;
  return ctx.pow(a, ctx.group_order_u64() / 2) == ctx.one();
}

// x^2 + b x + c
bool quadratic_irreducible(const FieldCtx& ctx, FieldElement c, FieldElement b) {
  if (ctx.p() == 2) {
    if (b.code == 0) return false;  // x^2 + c is a square
    // x = b y gives y^2 + y + c/b^2, irreducible iff its absolute trace is 1
    const FieldElement t = ctx.mul(c, ctx.inv(ctx.mul(b, b)));
    return ctx.base_absolute_trace(ctx.trace_value(t)) == 1;
  }
  const FieldElement four_c = ctx.mul(ctx.from_base(4 % ctx.p()), c);
  const FieldElement disc = ctx.sub(ctx.mul(b, b), four_c);
  return disc.code != 0 && !is_square(ctx, disc);
}

std::string poly_string(const ExtPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].code == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool show_coeff = f[i].code != 1 || i == 0;
    if (show_coeff) os << f[i].code;
    if (i > 0) {
      if (show_coeff) os << '*';
      os << 'x';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

bool is_irreducible(const FieldCtx& ctx, const ExtPoly& f) {
  Ring ring(ExtFieldOps{&ctx});
  ExtPoly g = ring.monic(f);
  const int d = Ring::degree(g);
  if (d < 1) return false;
  if (d == 1) return true;
  if (d == 2) return quadratic_irreducible(ctx, g[0], g[1]);
  return ring.is_irreducible(g);
}

void validate(const FieldCtx& ctx, const RationalFunction& f) {
  if (!ctx.contains(f.scale) || f.scale.code == 0) throw std::invalid_argument("scale must be a nonzero field element");
  for (const ExtPoly* side : {&f.numerator, &f.denominator}) {
    if (!is_monic(*side)) throw std::invalid_argument("numerator and denominator must be monic");
    for (FieldElement c : *side) {
      if (!ctx.contains(c)) throw std::invalid_argument("coefficient outside the field");
    }
    if (side->size() > 1 && !is_irreducible(ctx, *side)) throw std::invalid_argument("polynomial is reducible");
  }
  if (f.degree() == 0) throw std::invalid_argument("numerator and denominator both constant");
  Ring ring(ExtFieldOps{&ctx});
  if (Ring::degree(ring.gcd(f.numerator, f.denominator)) != 0) {
    throw std::invalid_argument("numerator and denominator share a factor");
  }
}

bool is_valid(const FieldCtx& ctx, const RationalFunction& f) {
  try {
    validate(ctx, f);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::optional<FieldElement> eval_rational(const FieldCtx& ctx, const RationalFunction& f, FieldElement alpha) {
  const FieldElement den = eval_poly(ctx, f.denominator, alpha);
  if (den.code == 0) return std::nullopt;
  const FieldElement num = ctx.mul(f.scale, eval_poly(ctx, f.numerator, alpha));
  return ctx.mul(num, ctx.inv(den));
}

bool in_exceptional_set(const FieldCtx& ctx, const RationalFunction& f, FieldElement alpha) {
  if (alpha.code == 0) return true;
  return eval_poly(ctx, f.numerator, alpha).code == 0 || eval_poly(ctx, f.denominator, alpha).code == 0;
}

std::string to_string(const RationalFunction& f) {
  std::ostringstream os;
  os << f.scale.code << "*(" << poly_string(f.numerator) << ")/(" << poly_string(f.denominator) << ')';
  return os.str();
}

BigInt count_monic_irreducibles(std::uint64_t Q, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  const auto d = arith::factor(big(degree));
  BigInt total = 0;
  for (const auto& e : d.squarefree_divisors()) {
    const unsigned ev = static_cast<unsigned>(to_u64(e.value()));
    const BigInt term = pow(big(Q), degree / ev);
    if (e.moebius() > 0) total += term;
    else total -= term;
  }
  return total / degree;
}

std::uint64_t for_each_irreducible(const FieldCtx& ctx, unsigned degree,
                                   const std::function<bool(const ExtPoly&)>& visit) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  const Code Q = ctx.size();
  ExtPoly f(degree + 1, ctx.zero());
  f[degree] = ctx.one();
  std::uint64_t visited = 0;
  while (true) {
    if (is_irreducible(ctx, f)) {
      ++visited;
      if (!visit(f)) return visited;
    }
    // odometer over the non-leading coefficients, constant term fastest
    unsigned i = 0;
    while (i < degree && f[i].code + 1 == Q) f[i++].code = 0;
    if (i == degree) return visited;
    ++f[i].code;
  }
}

std::vector<ExtPoly> find_irreducibles(const FieldCtx& ctx, unsigned degree, std::uint64_t limit) {
  std::vector<ExtPoly> out;
  for_each_irreducible(ctx, degree, [&](const ExtPoly& f) {
    out.push_back(f);
    return limit == 0 || out.size() < limit;
  });
  return out;
}

ExtPoly random_irreducible(const FieldCtx& ctx, unsigned degree, std::mt19937_64& rng) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  ExtPoly f(degree + 1, ctx.one());
  while (true) {
    for (unsigned i = 0; i < degree; ++i) f[i] = {rng() % ctx.size()};
    if (is_irreducible(ctx, f)) return f;
  }
}

RationalFunction random_rational_function(const FieldCtx& ctx, unsigned n1, unsigned n2, std::mt19937_64& rng) {
  if (n1 + n2 == 0) throw std::invalid_argument("degenerate degrees n1 = n2 = 0");
  RationalFunction f;
  f.scale = {1 + rng() % (ctx.size() - 1)};
  do {
    f.numerator = n1 ? random_irreducible(ctx, n1, rng) : ExtPoly{ctx.one()};
    f.denominator = n2 ? random_irreducible(ctx, n2, rng) : ExtPoly{ctx.one()};
  } while (f.numerator == f.denominator);
  return f;
}

}  // namespace primpairs::ff
