#include "primpairs/arith/factor_cache.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace primpairs::arith {

using nlohmann::json;

FactorCache::FactorCache(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  json doc = json::parse(in);
  if (!doc.is_object()) throw std::runtime_error("factor cache is not a JSON object: " + path_.string());
  for (const auto& [key, list] : doc.items()) {
    std::vector<PrimePower> factors;
    for (const auto& item : list) {
      factors.push_back({BigInt(item.at(0).get<std::string>(), 10), item.at(1).get<unsigned>()});
    }
    auto f = FactoredInteger::from_factors(std::move(factors));
    if (f.value() != BigInt(key, 10)) throw std::runtime_error("factor cache entry does not recompose: " + key);
    entries_.emplace(key, std::move(f));
  }
}

std::optional<FactoredInteger> FactorCache::lookup(const BigInt& n) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(n.get_str(10));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactorCache::insert(const FactoredInteger& f) {
  std::lock_guard lock(mu_);
  auto [it, inserted] = entries_.emplace(f.value().get_str(10), f);
  if (inserted) dirty_ = true;
}

std::size_t FactorCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

FactoredInteger FactorCache::get_or_factor(const BigInt& n, const FactorConfig& config) {
  if (auto hit = lookup(n)) return *hit;
  FactoredInteger f = factor(n, config);
  insert(f);
  return f;
}

FactoredInteger FactorCache::get_or_factor_power_minus_one(std::uint64_t q, unsigned m, const FactorConfig& config) {
  const BigInt n = pow(q, m) - 1;
  if (auto hit = lookup(n)) return *hit;
  FactoredInteger f = factor_power_minus_one(q, m, config);
  insert(f);
  return f;
}

void FactorCache::save() const {
  if (path_.empty()) return;
  json doc = json::object();
  {
    std::lock_guard lock(mu_);
    if (!dirty_ && std::filesystem::exists(path_)) return;
    for (const auto& [key, f] : entries_) {
      json list = json::array();
      for (const auto& pp : f.factors()) list.push_back(json::array({pp.prime.get_str(10), pp.exponent}));
      doc[key] = std::move(list);
    }
  }
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  auto tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write factor cache: " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace primpairs::arith
