#include "urnlda/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urnlda/error.hpp"

namespace urnlda {

namespace {

// Marsaglia & Tsang for shape >= 1; returns the variate for scale 1.
double gamma_ge1(double shape, Rng& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal_sample(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

void check_shape(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("gamma: shape must be positive, got " + std::to_string(shape));
  }
}

std::uint64_t poisson_inversion(double rate, Rng& rng) {
  const double p0 = std::exp(-rate);
  for (;;) {
    const double u = rng.uniform();
    double p = p0;
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf) {
      ++k;
      p *= rate / static_cast<double>(k);
      cdf += p;
      // cdf can stall just below u through rounding; restart if so.
      if (k > 200) break;
    }
    if (k <= 200) return k;
  }
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS.
std::uint64_t poisson_ptrs(double rate, Rng& rng) {
  const double slam = std::sqrt(rate);
  const double loglam = std::log(rate);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -rate + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

double normal_sample(Rng& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double gamma_sample(double shape, double scale, Rng& rng) {
  check_shape(shape);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("gamma: scale must be positive, got " + std::to_string(scale));
  }
  if (shape >= 1.0) return scale * gamma_ge1(shape, rng);
  const double g = gamma_ge1(shape + 1.0, rng);
  return scale * g * std::pow(rng.uniform_pos(), 1.0 / shape);
}

double log_gamma_sample(double shape, Rng& rng) {
  check_shape(shape);
  if (shape >= 1.0) return std::log(gamma_ge1(shape, rng));
  const double g = gamma_ge1(shape + 1.0, rng);
  return std::log(g) + std::log(rng.uniform_pos()) / shape;
}

std::vector<double> dirichlet_sample(std::span<const double> concentration, Rng& rng) {
  std::vector<double> out(concentration.size());
  double max_log = -HUGE_VAL;
  for (std::size_t i = 0; i < concentration.size(); ++i) {
    if (!(concentration[i] > 0.0)) {
      throw DomainError("dirichlet: concentration entries must be positive");
    }
    out[i] = log_gamma_sample(concentration[i], rng);
    max_log = std::max(max_log, out[i]);
  }
  double total = 0.0;
  for (double& x : out) {
    x = std::exp(x - max_log);
    total += x;
  }
  for (double& x : out) x /= total;
  return out;
}

std::uint64_t poisson_sample(double rate, Rng& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw DomainError("poisson: rate must be non-negative, got " + std::to_string(rate));
  }
  if (rate == 0.0) return 0;
  if (rate <= 10.0) return poisson_inversion(rate, rng);
  return poisson_ptrs(rate, rng);
}

std::uint64_t zero_truncated_poisson_sample(double rate, Rng& rng) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("zero-truncated poisson: rate must be positive");
  }
  if (rate > 10.0) {
    for (;;) {
      const std::uint64_t k = poisson_ptrs(rate, rng);
      if (k > 0) return k;
    }
  }
  // Inversion restricted to the CDF above P(0).
  const double p0 = std::exp(-rate);
  const double tail = -std::expm1(-rate);
  for (;;) {
    const double u = p0 + rng.uniform() * tail;
    double p = p0 * rate;
    double cdf = p0 + p;
    std::uint64_t k = 1;
    while (u > cdf && k <= 200) {
      ++k;
      p *= rate / static_cast<double>(k);
      cdf += p;
    }
    if (k <= 200) return k;
  }
}

double student_t_sample(double location, double scale, double df, Rng& rng) {
  if (!(scale > 0.0) || !(df > 0.0)) throw DomainError("student t: scale and df must be positive");
  const double z = normal_sample(rng);
  const double chi2 = 2.0 * gamma_sample(df / 2.0, 1.0, rng);
  return location + std::sqrt(scale) * z / std::sqrt(chi2 / df);
}

double inverse_gamma_sample(double shape, double rate, Rng& rng) {
  if (!(rate > 0.0)) throw DomainError("inverse gamma: rate must be positive");
  return 1.0 / gamma_sample(shape, 1.0 / rate, rng);
}

}  // namespace urnlda
