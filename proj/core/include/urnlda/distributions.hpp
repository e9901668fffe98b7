#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urnlda/rng.hpp"

namespace urnlda {

/// Standard normal variate (Marsaglia polar method, second value discarded).
double normal_sample(Rng& rng);

/// Gamma(shape, scale) by Marsaglia & Tsang's squeeze/rejection method.
/// Shapes below 1 use the Gamma(shape + 1) * U^(1/shape) boost.
/// Throws DomainError unless shape > 0 and scale > 0.
double gamma_sample(double shape, double scale, Rng& rng);

/// log of a Gamma(shape, 1) variate. For tiny shapes the variate itself
/// underflows (U^(1/0.01) is 0 for U < 1e-3.08); the log does not.
double log_gamma_sample(double shape, Rng& rng);

/// Dirichlet(concentration) as normalized independent Gammas, normalized in
/// log space. Throws DomainError unless every entry is positive.
std::vector<double> dirichlet_sample(std::span<const double> concentration, Rng& rng);

/// Exact Poisson(rate). Sequential-search inversion for rate <= 10,
/// Hormann's transformed rejection (PTRS) above.
/// Throws DomainError for negative or non-finite rates.
std::uint64_t poisson_sample(double rate, Rng& rng);

/// Poisson(rate) conditioned on being at least 1. Throws DomainError
/// unless rate > 0.
std::uint64_t zero_truncated_poisson_sample(double rate, Rng& rng);

/// location + sqrt(scale) * t_df, with t_df = N(0,1) / sqrt(chi2_df / df).
double student_t_sample(double location, double scale, double df, Rng& rng);

/// InverseGamma(shape, rate): reciprocal of Gamma(shape, 1 / rate).
double inverse_gamma_sample(double shape, double rate, Rng& rng);

}  // namespace urnlda
