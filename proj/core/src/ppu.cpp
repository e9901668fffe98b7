#include "urnlda/ppu.hpp"

#include <cmath>

#include "urnlda/alias_table.hpp"
#include "urnlda/distributions.hpp"
#include "urnlda/error.hpp"

namespace urnlda {

namespace {

void check_simplex(std::span<const double> mean) {
  if (mean.empty()) throw DomainError("ppu: empty mean vector");
  double sum = 0.0;
  for (double f : mean) {
    if (!(f >= 0.0)) throw DomainError("ppu: mean vector has a negative entry");
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw DomainError("ppu: mean vector does not sum to 1");
}

}  // namespace

std::vector<double> PPUDraw::probabilities() const {
  std::vector<double> p(dimension, 0.0);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    p[indices[j]] = static_cast<double>(counts[j]) / static_cast<double>(total);
  }
  return p;
}

PPUDraw ppu_sample_direct(std::span<const double> concentration, Rng& rng) {
  double sum = 0.0;
  for (double c : concentration) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("ppu: negative concentration");
    sum += c;
  }
  if (!(sum > 0.0)) throw DomainError("ppu: concentration sums to zero");

  PPUDraw draw;
  draw.dimension = concentration.size();
  do {
    draw.indices.clear();
    draw.counts.clear();
    draw.total = 0;
    for (std::size_t j = 0; j < concentration.size(); ++j) {
      const std::uint64_t c = poisson_sample(concentration[j], rng);
      if (c > 0) {
        draw.indices.push_back(static_cast<std::uint32_t>(j));
        draw.counts.push_back(c);
        draw.total += c;
      }
    }
  } while (draw.total == 0);
  return draw;
}

std::vector<double> ppu_sample_hier(double total, std::span<const double> mean, Rng& rng) {
  if (!(total > 0.0) || !std::isfinite(total)) throw DomainError("ppu: total must be positive");
  check_simplex(mean);
  const std::uint64_t arrivals = zero_truncated_poisson_sample(total, rng);
  const AliasTable table(mean);
  std::vector<double> x(mean.size(), 0.0);
  for (std::uint64_t j = 0; j < arrivals; ++j) x[table.sample(rng)] += 1.0;
  for (double& v : x) v /= static_cast<double>(arrivals);
  return x;
}

PPUMoments ppu_asymptotic_moments(double total, std::span<const double> mean) {
  if (!(total > 0.0)) throw DomainError("ppu: total must be positive");
  const std::size_t p = mean.size();
  PPUMoments m;
  m.mean.assign(mean.begin(), mean.end());
  m.covariance.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      m.covariance[i * p + j] =
          i == j ? mean[i] * (1.0 - mean[i]) / total : -mean[i] * mean[j] / total;
    }
  }
  return m;
}

}  // namespace urnlda
