#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "urnlda/rng.hpp"

namespace urnlda {

/// One Poisson Polya urn draw kept as sparse counts. The probability vector
/// is counts / total.
struct PPUDraw {
  std::size_t dimension = 0;
  std::vector<std::uint32_t> indices;  // ascending, nonzero counts only
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::vector<double> probabilities() const;
};

/// Independent Pois(concentration_j) per entry, redrawn as a whole while the
/// total is zero. Throws DomainError for negative entries or a zero sum.
PPUDraw ppu_sample_direct(std::span<const double> concentration, Rng& rng);

/// Hierarchical construction: pi ~ Pois+(total), pi categorical draws from
/// mean, normalized histogram. Throws DomainError unless total > 0 and mean
/// is a probability vector.
std::vector<double> ppu_sample_hier(double total, std::span<const double> mean, Rng& rng);

/// Limiting mean and covariance of PPU(total, mean) as total grows:
/// F, F_i (1 - F_i) / total on the diagonal, -F_i F_j / total elsewhere.
struct PPUMoments {
  std::vector<double> mean;
  std::vector<double> covariance;  // row-major, dimension x dimension

  std::size_t dimension() const noexcept { return mean.size(); }
  double cov(std::size_t i, std::size_t j) const { return covariance[i * mean.size() + j]; }
};

PPUMoments ppu_asymptotic_moments(double total, std::span<const double> mean);

}  // namespace urnlda
