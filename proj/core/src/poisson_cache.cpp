#include "urnlda/poisson_cache.hpp"

#include <cmath>

#include "urnlda/distributions.hpp"
#include "urnlda/error.hpp"

namespace urnlda {

PoissonAliasCache::PoissonAliasCache(double beta, std::size_t limit)
    : beta_(beta), limit_(limit) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("poisson cache: beta must be positive");
  }
  tables_.reserve(limit + 1);
  std::vector<double> pmf;
  for (std::size_t l = 0; l <= limit; ++l) {
    const double rate = beta + static_cast<double>(l);
    const double log_rate = std::log(rate);
    pmf.clear();
    double cdf = 0.0;
    for (std::size_t k = 0;; ++k) {
      const double kd = static_cast<double>(k);
      const double p = std::exp(kd * log_rate - rate - std::lgamma(kd + 1.0));
      pmf.push_back(p);
      cdf += p;
      if (kd > rate && 1.0 - cdf < kTailMass) break;
    }
    tables_.emplace_back(pmf);
  }
}

std::uint64_t PoissonAliasCache::sample(std::uint64_t l, Rng& rng) const {
  if (l <= limit_) return tables_[l].sample(rng);
  const double rate = beta_ + static_cast<double>(l);
  const double draw = std::round(rate + std::sqrt(rate) * normal_sample(rng));
  return draw > 0.0 ? static_cast<std::uint64_t>(draw) : 0;
}

}  // namespace urnlda
