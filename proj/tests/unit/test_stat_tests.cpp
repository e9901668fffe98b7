#include <cmath>
#include <vector>

#include "doctest.h"
#include "urnlda/distributions.hpp"
#include "urnlda/stat_tests.hpp"

using namespace urnlda;
using namespace urnlda::stats;

TEST_SUITE("stat_tests") {
  TEST_CASE("chi-square survival at known points") {
    CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_survival(0.0, 4) == 1.0);
    // Two degrees of freedom: exp(-x / 2).
    CHECK(chi_square_survival(5.0, 2) == doctest::Approx(std::exp(-2.5)));
  }

  TEST_CASE("goodness of fit on exact and shifted counts") {
    const std::vector<std::uint64_t> exact{100, 200, 300};
    const std::vector<double> p{1.0 / 6, 2.0 / 6, 3.0 / 6};
    const auto fit = chi_square_gof(exact, p);
    CHECK(fit.statistic == doctest::Approx(0.0));
    CHECK(fit.dof == 2.0);
    const std::vector<std::uint64_t> shifted{300, 200, 100};
    CHECK(chi_square_gof(shifted, p).p_value < 1e-6);
  }

  TEST_CASE("goodness of fit pools small expected counts") {
    const std::vector<std::uint64_t> obs{50, 48, 1, 1};
    const std::vector<double> p{0.5, 0.48, 0.01, 0.01};
    const auto r = chi_square_gof(obs, p);
    CHECK(r.dof == 1.0);
  }

  TEST_CASE("two-sample test: same distribution passes, shifted fails") {
    Rng rng(1);
    std::vector<double> a(20000), b(20000), c(20000);
    for (auto& x : a) x = normal_sample(rng);
    for (auto& x : b) x = normal_sample(rng);
    for (auto& x : c) x = normal_sample(rng) + 0.1;
    CHECK(chi_square_two_sample(a, b).p_value > 0.001);
    CHECK(chi_square_two_sample(a, c).p_value < 0.001);
  }

  TEST_CASE("two-sample test on heavily tied integers") {
    const std::vector<std::uint64_t> a(1000, 0);
    std::vector<std::uint64_t> b(1000, 0);
    CHECK(chi_square_two_sample(a, b).p_value == 1.0);
    for (std::size_t i = 0; i < 500; ++i) b[i] = 1;
    CHECK(chi_square_two_sample(a, b).p_value < 1e-6);
  }

  TEST_CASE("KS distance and p-value") {
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{3, 4, 5, 6};
    CHECK(ks_distance(a, b) == doctest::Approx(0.5));
    CHECK(ks_distance(a, a) == 0.0);
    // Kolmogorov tail at sqrt(n/2) D = 1.358 is about 0.05.
    CHECK(ks_p_value(1.358 / std::sqrt(500.0), 1000, 1000) == doctest::Approx(0.05).epsilon(0.05));
  }

  TEST_CASE("moments and z-tests") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const auto m = moments(x);
    CHECK(m.mean == 3.0);
    CHECK(m.variance == doctest::Approx(2.5));
    CHECK(m.skewness == doctest::Approx(0.0));
    CHECK(covariance(x, x) == doctest::Approx(2.5));
    Rng rng(2);
    std::vector<double> y(100000);
    for (auto& v : y) v = 2.0 * normal_sample(rng) + 1.0;
    CHECK(mean_z_test(y, 1.0).p_value > 0.001);
    CHECK(mean_z_test(y, 1.1).p_value < 0.001);
    CHECK(variance_z_test(y, 4.0).p_value > 0.001);
    CHECK(variance_z_test(y, 4.4).p_value < 0.001);
  }
}
