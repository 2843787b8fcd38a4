#pragma once

#include "primpairs/arith/factor.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace primpairs::arith {

/// Persistent factorization cache.
///
/// On disk: a JSON object mapping the decimal value to its factor list,
///   {"34359738367": [["31",1],["71",1],["127",1],["122921",1]], ...}
/// Saves go through a temporary file and a rename, so readers never see a
/// half-written cache. Safe to use from several threads.
class FactorCache {
 public:
  FactorCache() = default;
  explicit FactorCache(std::filesystem::path path);

  /// Environment variable that overrides the cache location in the CLI.
  static constexpr const char* kEnvVar = "PRIMPAIRS_CACHE";

  std::optional<FactoredInteger> lookup(const BigInt& n) const;
  void insert(const FactoredInteger& f);
  std::size_t size() const;

  /// Returns the cached factorization or computes and stores it.
  FactoredInteger get_or_factor(const BigInt& n, const FactorConfig& config = {});
  FactoredInteger get_or_factor_power_minus_one(std::uint64_t q, unsigned m, const FactorConfig& config = {});

  /// Writes to path() if one was given. No-op for in-memory caches.
  void save() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, FactoredInteger> entries_;
  bool dirty_ = false;
};

}  // namespace primpairs::arith
