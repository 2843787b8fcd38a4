#include "primpairs/arith/factor.hpp"
#include "primpairs/arith/factor_cache.hpp"
#include "primpairs/bounds/bounds.hpp"
#include "primpairs/ff/field.hpp"
#include "primpairs/published/data.hpp"
#include "primpairs/published/reproduce.hpp"
#include "primpairs/verify/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>

using namespace primpairs;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct RunConfig {
  unsigned threads = 0;  // 0: OpenMP default
  std::uint64_t seed = 1;
  std::uint64_t prime_sieve_limit = 1'000'000;
  std::uint64_t factor_budget = std::uint64_t{1} << 34;
  std::uint64_t enum_budget = 10'000'000;
  std::uint64_t alpha_limit = std::uint64_t{1} << 20;
  std::uint64_t dlog_limit = std::uint64_t{1} << 22;
  double tolerance = 1e-9;
  std::string format;
  std::string cache_path;
  std::string out_path;

  arith::FactorConfig factor_config() const {
    arith::FactorConfig c;
    c.trial_limit = static_cast<std::uint32_t>(prime_sieve_limit);
    c.rho_budget = factor_budget;
    return c;
  }

  json to_json() const {
    json j;
    j["threads"] = threads;
    j["seed"] = seed;
    j["prime_sieve_limit"] = prime_sieve_limit;
    j["factor_budget"] = factor_budget;
    j["enum_budget"] = enum_budget;
    j["alpha_limit"] = alpha_limit;
    j["dlog_limit"] = dlog_limit;
    j["tolerance"] = tolerance;
    return j;
  }

  void validate() const {
    if (prime_sieve_limit < 2 || prime_sieve_limit > 0xffffffffULL) throw std::invalid_argument("bad --sieve-limit");
    if (factor_budget == 0 || enum_budget == 0 || alpha_limit == 0 || dlog_limit == 0) {
      throw std::invalid_argument("limits must be positive");
    }
    if (!(tolerance > 0 && tolerance < 0.5)) throw std::invalid_argument("--tolerance must lie in (0, 0.5)");
    if (!format.empty() && format != "json" && format != "csv" && format != "text") {
      throw std::invalid_argument("--format must be json, csv or text");
    }
  }
};

struct Context {
  RunConfig cfg;
  std::ostream* out = &std::cout;
  std::unique_ptr<std::ofstream> file;
  std::unique_ptr<arith::FactorCache> cache;

  std::string format(const char* fallback) const { return cfg.format.empty() ? fallback : cfg.format; }

  void open() {
    cfg.validate();
    if (cfg.threads > 0) omp_set_num_threads(static_cast<int>(cfg.threads));
    if (!cfg.out_path.empty()) {
      file = std::make_unique<std::ofstream>(cfg.out_path, std::ios::trunc);
      if (!*file) throw std::invalid_argument("cannot write " + cfg.out_path);
      out = file.get();
    }
    std::string path = cfg.cache_path;
    if (path.empty()) {
      if (const char* env = std::getenv(arith::FactorCache::kEnvVar); env && *env) path = env;
    }
    cache = path.empty() ? std::make_unique<arith::FactorCache>() : std::make_unique<arith::FactorCache>(path);
  }

  arith::FactoredInteger order(std::uint64_t q, unsigned m) const {
    return bounds::group_order(q, m, cfg.factor_config(), cache.get());
  }
};

void require_prime_power(std::uint64_t q) {
  if (!verify::prime_power_decompose(q)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
}

// ---------------------------------------------------------------------------

void cmd_factor(Context& c, const std::string& n_text) {
  BigInt n;
  if (n_text.empty() || n_text.find_first_not_of("0123456789") != std::string::npos || n.set_str(n_text, 10) != 0 ||
      n < 1) {
    throw std::invalid_argument("factor needs a positive integer, got '" + n_text + "'");
  }
  const auto f = c.cache->get_or_factor(n, c.cfg.factor_config());
  const auto fmt = c.format("text");
  if (fmt == "json") {
    json j;
    j["n"] = n_text;
    j["factors"] = json::array();
    for (const auto& pp : f.factors()) j["factors"].push_back({pp.prime.get_str(10), pp.exponent});
    *c.out << j.dump() << '\n';
  } else if (fmt == "csv") {
    *c.out << "prime,exponent\n";
    for (const auto& pp : f.factors()) *c.out << pp.prime.get_str(10) << ',' << pp.exponent << '\n';
  } else {
    std::string line;
    for (const auto& pp : f.factors()) {
      if (!line.empty()) line += ' ';
      line += pp.prime.get_str(10);
      if (pp.exponent > 1) line += '^' + std::to_string(pp.exponent);
    }
    *c.out << line << '\n';
  }
}

void cmd_check(Context& c, std::uint64_t q, unsigned m, unsigned n) {
  require_prime_power(q);
  const auto order = c.order(q, m);
  const auto cmp = bounds::compare_main(q, m, n, order.squarefree_divisor_count());
  const bool pass = cmp == bounds::Comparison::greater;
  if (c.format("text") == "json") {
    json j;
    j["q"] = q;
    j["m"] = m;
    j["n"] = n;
    j["omega"] = order.omega();
    j["comparison"] = bounds::to_string(cmp);
    j["pass"] = pass;
    j["equality"] = cmp == bounds::Comparison::equal;
    *c.out << j.dump() << '\n';
  } else {
    *c.out << (pass ? "PASS" : "FAIL") << (cmp == bounds::Comparison::equal ? " equality" : "") << " q=" << q
           << " m=" << m << " n=" << n << " omega=" << order.omega() << '\n';
  }
}

void emit_certificate(Context& c, const std::optional<bounds::SieveCertificate>& cert, std::uint64_t q, unsigned m) {
  if (c.format("csv") == "json") {
    if (cert) {
      *c.out << bounds::certificate_json(*cert) << '\n';
    } else {
      json j;
      j["q"] = q;
      j["m"] = m;
      j["certificate"] = nullptr;
      *c.out << j.dump() << '\n';
    }
  } else if (cert) {
    *c.out << bounds::kCertificateCsvHeader << ",passes\n"
           << bounds::certificate_csv_row(*cert, 1) << ',' << (cert->passes ? "true" : "false") << '\n';
  } else {
    *c.out << "none\n";
  }
}

void cmd_sieve(Context& c, std::uint64_t q, unsigned m, unsigned n, std::optional<std::uint64_t> l) {
  require_prime_power(q);
  const auto order = c.order(q, m);
  if (l) {
    emit_certificate(c, bounds::make_certificate(q, m, n, order, order.divisor(big(*l))), q, m);
  } else {
    emit_certificate(c, bounds::certificate_search(q, m, n, order), q, m);
  }
}

void cmd_appendix2(Context& c, unsigned m_from, unsigned m_to, unsigned n) {
  if (m_to == 0) m_to = m_from;
  std::vector<published::Appendix2Row> rows;
  for (const auto& r : published::load_appendix2()) {
    if (r.m >= m_from && r.m <= m_to) rows.push_back(r);
  }
  char tol_text[32];
  std::snprintf(tol_text, sizeof tol_text, "%.12g", c.cfg.tolerance);
  const auto tol = ExactRational::from_decimal(tol_text);
  const auto checks = published::check_appendix2(rows, n, tol, c.cfg.factor_config(), c.cache.get());
  std::size_t passed = 0;
  const bool as_json = c.format("csv") == "json";
  if (!as_json) *c.out << "m,sr,q,l,s,delta_lower,Delta_upper,status\n";
  for (const auto& k : checks) {
    passed += k.passes();
    const auto delta = k.computed.delta.to_decimal(10);
    const auto Delta = k.computed.Delta ? k.computed.Delta->to_decimal_ceil(10) : "";
    if (as_json) {
      json j;
      j["m"] = k.row.m;
      j["sr"] = k.row.sr;
      j["q"] = k.row.q;
      j["l"] = k.row.l;
      j["s"] = k.computed.s;
      j["delta"] = k.computed.delta.to_fraction();
      j["delta_decimal"] = delta;
      j["Delta"] = k.computed.Delta ? json(k.computed.Delta->to_fraction()) : json(nullptr);
      j["Delta_decimal"] = Delta;
      j["listed_delta"] = k.row.delta_lower;
      j["listed_Delta"] = k.row.Delta_upper;
      j["passes"] = k.passes();
      j["failures"] = k.failures();
      *c.out << j.dump() << '\n';
    } else {
      *c.out << k.row.m << ',' << k.row.sr << ',' << k.row.q << ',' << k.row.l << ',' << k.computed.s << ','
             << delta << ',' << Delta << ',' << (k.passes() ? "ok" : "fail:" + k.failures()) << '\n';
    }
  }
  std::cerr << checks.size() << " rows, " << passed << " pass\n";
}

void cmd_scan(Context& c, unsigned n, bool serial) {
  bounds::ScanOptions opt;
  opt.n = n;
  opt.factor_config = c.cfg.factor_config();
  opt.cache = c.cache.get();
  const auto cascade = bounds::threshold_cascade(n);
  const auto entries = serial ? bounds::scan_serial(cascade, opt) : bounds::scan_parallel(cascade, opt);
  const bool as_json = c.format("csv") == "json";
  if (!as_json) *c.out << "m,q,omega,comparison\n";
  for (const auto& e : entries) {
    if (as_json) {
      json j;
      j["m"] = e.m;
      j["q"] = e.q;
      j["omega"] = e.omega;
      j["comparison"] = bounds::to_string(e.comparison);
      *c.out << j.dump() << '\n';
    } else {
      *c.out << e.m << ',' << e.q << ',' << e.omega << ',' << bounds::to_string(e.comparison) << '\n';
    }
  }
  std::cerr << entries.size() << " pairs\n";
}

void cmd_table1(Context& c, unsigned n, bool window) {
  std::vector<bounds::Window> windows(bounds::kTable1Windows.begin(), bounds::kTable1Windows.end());
  if (window) windows.push_back(bounds::kOmegaWindow);
  const bool as_json = c.format("csv") == "json";
  if (!as_json) *c.out << "sr,a,b,log2_W_l,delta_lower,Delta_upper,bound_upper\n";
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto r = bounds::worst_case_row(windows[i].a, windows[i].b, n);
    const auto delta = r.delta_lower.to_decimal(7);
    const auto Delta = r.Delta_upper ? r.Delta_upper->to_decimal_ceil(7) : "";
    const auto bound = r.usable() ? primpairs::to_string(r.bound_value) : "";
    if (as_json) {
      json j;
      j["sr"] = i + 1;
      j["a"] = r.a;
      j["b"] = r.b;
      j["log2_W_l"] = r.a;
      j["delta"] = r.delta_lower.to_fraction();
      j["delta_decimal"] = delta;
      j["Delta"] = r.Delta_upper ? json(r.Delta_upper->to_fraction()) : json(nullptr);
      j["Delta_decimal"] = Delta;
      j["bound_upper"] = bound;
      *c.out << j.dump() << '\n';
    } else {
      *c.out << i + 1 << ',' << r.a << ',' << r.b << ',' << r.a << ',' << delta << ',' << Delta << ',' << bound
             << '\n';
    }
  }
}

void cmd_verify(Context& c, std::uint64_t q, unsigned m, unsigned n, std::optional<std::uint64_t> sample) {
  require_prime_power(q);
  verify::Budget b;
  b.alpha_limit = c.cfg.alpha_limit;
  b.f_limit = c.cfg.enum_budget;
  b.seed = c.cfg.seed;
  b.factor_config = c.cfg.factor_config();
  b.cache = c.cache.get();
  if (sample) {
    b.samples = *sample;
    b.f_limit = 0;  // forces sampling
  }
  const auto v = verify::resolve_pair(q, m, n, b);
  *c.out << verify::verdict_json(v) << '\n';

  json manifest;
  manifest["command"] = "verify";
  manifest["q"] = q;
  manifest["m"] = m;
  manifest["n"] = n;
  manifest["config"] = c.cfg.to_json();
  manifest["samples"] = b.samples;
  manifest["f_limit"] = b.f_limit;
  const auto [p, k] = *verify::prime_power_decompose(q);
  if (v.status == verify::Status::verified_exhaustive || v.status == verify::Status::verified_sampled ||
      v.status == verify::Status::exception_witness) {
    ff::BuildOptions opts;
    opts.dlog_limit = c.cfg.dlog_limit;
    manifest["field"] = json::parse(ff::FieldCtx::build(p, k, m, opts).to_json());
  } else {
    manifest["field"] = nullptr;
  }
  *c.out << json{{"manifest", manifest}}.dump() << '\n';
}

void cmd_crosscheck(Context& c, std::uint64_t p, unsigned k, unsigned m, std::uint64_t trials, unsigned n) {
  ff::BuildOptions opts;
  opts.dlog_limit = c.cfg.dlog_limit;
  const auto ctx = ff::FieldCtx::build(p, k, m, opts);
  if (!ctx.has_dlog()) throw std::invalid_argument("field too large for the character tables; raise --dlog-limit");
  *c.out << verify::crosscheck_json(verify::crosscheck_identity(ctx, trials, c.cfg.seed, n)) << '\n';
}

void cmd_cascade(Context& c, unsigned n) {
  const bool as_json = c.format("csv") == "json";
  if (!as_json) *c.out << "m_from,m_to,q_limit\n";
  for (const auto& e : bounds::threshold_cascade(n)) {
    if (as_json) {
      *c.out << json{{"m_from", e.m_from}, {"m_to", e.m_to}, {"q_limit", e.q_limit}}.dump() << '\n';
    } else {
      *c.out << e.m_from << ',' << e.m_to << ',' << e.q_limit << '\n';
    }
  }
}

void cmd_boundary473(Context& c) {
  const auto r = bounds::lemma_473_boundary();
  json j;
  j["holds_at_473"] = r.holds_at_473;
  j["fails_at_472"] = r.fails_at_472;
  j["log2_margin_473"] = r.log2_margin_473;
  j["log2_margin_472"] = r.log2_margin_472;
  j["passes"] = r.passes();
  *c.out << j.dump() << '\n';
}

void cmd_field(Context& c, std::uint64_t p, unsigned k, unsigned m) {
  ff::BuildOptions opts;
  opts.dlog_limit = c.cfg.dlog_limit;
  *c.out << ff::FieldCtx::build(p, k, m, opts).to_json() << '\n';
}

void cmd_checksums(Context& c) {
  const auto bad = published::verify_checksums();
  for (const auto& b : bad) *c.out << "MISMATCH " << b.file << " expected " << b.expected << " got " << b.actual << '\n';
  if (bad.empty()) *c.out << "OK " << published::data_dir().string() << '\n';
  if (!bad.empty()) throw std::invalid_argument("data checksum mismatch");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive pairs with prescribed traces: certificates, scans and brute-force checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  auto& cfg = ctx.cfg;
  app.add_option("--threads", cfg.threads, "worker threads (0: OpenMP default)");
  app.add_option("--seed", cfg.seed, "seed for sampled enumeration and cross-checks");
  app.add_option("--format", cfg.format, "json, csv or text");
  app.add_option("--cache", cfg.cache_path, "factorization cache file (else $PRIMPAIRS_CACHE)");
  app.add_option("--budget-factor", cfg.factor_budget, "Pollard-rho iterations per factorization");
  app.add_option("--budget-enum", cfg.enum_budget, "largest exhaustive function count");
  app.add_option("--alpha-limit", cfg.alpha_limit, "largest q^m enumerated element by element");
  app.add_option("--dlog-limit", cfg.dlog_limit, "largest q^m given discrete-log tables");
  app.add_option("--sieve-limit", cfg.prime_sieve_limit, "trial-division bound");
  app.add_option("--tolerance", cfg.tolerance, "gap allowed between computed and listed bounds");
  app.add_option("--out", cfg.out_path, "write output to this file");

  std::string n_text;
  std::uint64_t q = 0, p = 0, trials = 20;
  unsigned k = 1, m = 0, n = 2, m_to = 0;
  std::optional<std::uint64_t> l, sample;
  bool serial = false, window = false;

  auto* factor = app.add_subcommand("factor", "factor a positive integer");
  factor->add_option("N", n_text)->required();

  auto* check = app.add_subcommand("check", "main condition for (q, m)");
  auto* sieve = app.add_subcommand("sieve", "sieve certificate for (q, m)");
  auto* verify_cmd = app.add_subcommand("verify", "resolve (q, m) by certificate or brute force");
  for (auto* s : {check, sieve, verify_cmd}) {
    s->add_option("q", q)->required();
    s->add_option("m", m)->required()->check(CLI::Range(5u, 1000u));
    s->add_option("n", n)->required();
  }
  sieve->add_option("--l", l, "evaluate this l instead of searching");
  verify_cmd->add_option("--sample", sample, "sample this many functions per split");

  auto* appendix2 = app.add_subcommand("appendix2", "recompute listed certificates for m in [m_from, m_to]");
  appendix2->add_option("m_from", m)->required();
  appendix2->add_option("m_to", m_to);
  appendix2->add_option("--n", n);

  auto* scan = app.add_subcommand("scan", "pairs inside the cascade failing the main condition");
  scan->add_option("n", n)->required();
  scan->add_flag("--serial", serial, "single-threaded reference");

  auto* table1 = app.add_subcommand("table1", "worst-case rows");
  table1->add_option("n", n)->required();
  table1->add_flag("--window", window, "append the (31, 472) window");

  auto* crosscheck = app.add_subcommand("crosscheck", "character sum against brute force on F_{p^(km)}");
  crosscheck->add_option("p", p)->required();
  crosscheck->add_option("k", k)->required();
  crosscheck->add_option("m", m)->required();
  crosscheck->add_option("trials", trials);
  crosscheck->add_option("--n", n);

  auto* cascade = app.add_subcommand("cascade", "q limits per m");
  cascade->add_option("n", n)->required();

  auto* boundary = app.add_subcommand("boundary473", "primorial boundary at 472/473 primes");

  auto* field = app.add_subcommand("field", "defining polynomials and generator of F_{p^(km)}");
  field->add_option("p", p)->required();
  field->add_option("k", k)->required();
  field->add_option("m", m)->required();

  auto* checksums = app.add_subcommand("checksums", "verify the shipped data files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    ctx.open();
    if (*factor) cmd_factor(ctx, n_text);
    if (*check) cmd_check(ctx, q, m, n);
    if (*sieve) cmd_sieve(ctx, q, m, n, l);
    if (*appendix2) cmd_appendix2(ctx, m, m_to, n);
    if (*scan) cmd_scan(ctx, n, serial);
    if (*table1) cmd_table1(ctx, n, window);
    if (*verify_cmd) cmd_verify(ctx, q, m, n, sample);
    if (*crosscheck) cmd_crosscheck(ctx, p, k, m, trials, n);
    if (*cascade) cmd_cascade(ctx, n);
    if (*boundary) cmd_boundary473(ctx);
    if (*field) cmd_field(ctx, p, k, m);
    if (*checksums) cmd_checksums(ctx);
    ctx.cache->save();
    ctx.out->flush();
  } catch (const arith::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::length_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
