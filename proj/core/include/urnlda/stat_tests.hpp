#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace urnlda::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, double dof);

/// Pearson goodness of fit of category counts against probabilities.
/// Categories with expected count below min_expected are pooled.
TestResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                          double min_expected = 5.0);

/// Two-sample chi-square homogeneity test on real values. Pooled sorted
/// values are grouped into adjacent bins of at least max(20, n/100) pooled
/// observations; tied values never straddle a bin edge.
TestResult chi_square_two_sample(std::span<const double> a, std::span<const double> b);
TestResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// sup |F_a - F_b| between empirical CDFs.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample Kolmogorov-Smirnov p-value.
double ks_p_value(double distance, std::size_t n_a, std::size_t n_b);

/// Two-sided z-test of a sample mean against mu using the sample SD.
TestResult mean_z_test(std::span<const double> sample, double mu);

/// Two-sided z-test of the sample variance against sigma2 using the
/// empirical fourth central moment for its standard error.
TestResult variance_z_test(std::span<const double> sample, double sigma2);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};
SampleMoments moments(std::span<const double> sample);

double covariance(std::span<const double> a, std::span<const double> b);

}  // namespace urnlda::stats
