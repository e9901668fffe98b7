#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "urnlda/rng.hpp"

namespace urnlda {

/// Gibbs samplers for a bivariate T target with unit scales and correlation
/// rho: a collapsed sampler that updates z1 | z2 and z2 | z1 with Student-t
/// conditionals, and an uncollapsed one that alternates an inverse-gamma
/// scale with a joint Gaussian draw of z.

struct TPoint {
  double z1 = 0.0;
  double z2 = 0.0;
};

struct TDemoConfig {
  double rho = 0.9;
  std::size_t iterations = 10000;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless |rho| < 1.
  void validate() const;
};

/// z1 ~ T(rho z2, (0.8 + 0.2 z2^2)(1 - rho^2), 5), then z2 given the new z1.
TPoint t_collapsed_step(TPoint z, double rho, Rng& rng);

struct TUncollapsedDraw {
  double scale = 0.0;  // the inverse-gamma mixing variable
  TPoint z;
};

/// scale ~ IG(3, z' S^-1 z / 2 + 2), then z ~ N2(0, scale * S).
TUncollapsedDraw t_uncollapsed_step(TPoint z, double rho, Rng& rng);

enum class TSampler { collapsed, uncollapsed };

struct TChain {
  std::vector<double> z1;
  std::vector<double> z2;
};

/// Runs one chain from (0, 0) and keeps every iterate.
TChain run_t_chain(TSampler sampler, const TDemoConfig& config);

struct TReportRow {
  double rho = 0.0;
  std::string sampler;
  double ess = 0.0;  // mean ESS of z1 across seeds
  double mean1 = 0.0;
  double mean2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double cov12 = 0.0;
  std::vector<double> ess_per_seed;
};

/// For each rho, both samplers over `num_seeds` chains with seeds
/// seed, seed + 1, ...; moments pool all chains.
std::vector<TReportRow> run_t_comparison(const std::vector<double>& rhos, std::size_t iterations,
                                         std::uint64_t seed, std::size_t num_seeds = 5);

/// CSV with header rho,sampler,ess,mean1,mean2,var1,var2,cov12.
void write_t_report(const std::vector<TReportRow>& rows, std::ostream& out);

}  // namespace urnlda
