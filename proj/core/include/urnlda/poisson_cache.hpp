#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "urnlda/alias_table.hpp"
#include "urnlda/rng.hpp"

namespace urnlda {

/// Precomputed alias tables for Pois(beta + l), l = 0..L, each truncated
/// where the remaining tail mass drops below 1e-12. Rates above beta + L
/// fall back to rounded Gaussian draws.
class PoissonAliasCache {
 public:
  static constexpr std::size_t kDefaultLimit = 100;
  static constexpr double kTailMass = 1e-12;

  explicit PoissonAliasCache(double beta, std::size_t limit = kDefaultLimit);

  double beta() const noexcept { return beta_; }
  std::size_t limit() const noexcept { return limit_; }

  /// Largest value table l can return.
  std::size_t truncation_point(std::size_t l) const { return tables_.at(l).size() - 1; }
  const AliasTable& table(std::size_t l) const { return tables_.at(l); }

  /// Draw from Pois(beta + l): table lookup for l <= L, otherwise
  /// max(0, round(N(beta + l, beta + l))).
  std::uint64_t sample(std::uint64_t l, Rng& rng) const;

 private:
  double beta_;
  std::size_t limit_;
  std::vector<AliasTable> tables_;
};

inline std::uint64_t poisson_cached_sample(const PoissonAliasCache& cache, std::uint64_t l,
                                           Rng& rng) {
  return cache.sample(l, rng);
}

}  // namespace urnlda
