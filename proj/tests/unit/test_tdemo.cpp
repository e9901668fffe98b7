#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "urnlda/eval.hpp"
#include "urnlda/stat_tests.hpp"
#include "urnlda/tdemo.hpp"

using namespace urnlda;

TEST_SUITE("tdemo") {
  TEST_CASE("config validation") {
    TDemoConfig c;
    CHECK_NOTHROW(c.validate());
    c.rho = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.rho = -1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("collapsed step draws z1 from its Student-t conditional") {
    const double rho = 0.6;
    const TPoint start{0.0, 1.5};
    const double loc = rho * start.z2;
    const double scale2 = (0.8 + 0.2 * start.z2 * start.z2) * (1 - rho * rho);
    Rng rng(1);
    std::vector<double> z1;
    for (int i = 0; i < 200000; ++i) z1.push_back(t_collapsed_step(start, rho, rng).z1);
    CHECK(stats::mean_z_test(z1, loc).p_value > 0.001);
    // Variance of t with 5 degrees of freedom is scale^2 * 5 / 3.
    CHECK(stats::moments(z1).variance == doctest::Approx(scale2 * 5.0 / 3.0).epsilon(0.05));
  }

  TEST_CASE("collapsed step at rho = 0 from the origin") {
    Rng rng(7);
    std::vector<double> z1;
    for (int i = 0; i < 200000; ++i) z1.push_back(t_collapsed_step({0.0, 0.0}, 0.0, rng).z1);
    CHECK(stats::moments(z1).variance == doctest::Approx(4.0 / 3.0).epsilon(0.05));
  }

  TEST_CASE("uncollapsed scale from the origin has mean 1") {
    Rng rng(8);
    std::vector<double> s;
    for (int i = 0; i < 200000; ++i) s.push_back(t_uncollapsed_step({0.0, 0.0}, 0.7, rng).scale);
    CHECK(stats::mean_z_test(s, 1.0).p_value > 0.001);
  }

  TEST_CASE("collapsed chain is nearly reducible as rho approaches 1") {
    TDemoConfig cfg;
    cfg.rho = 0.999;
    cfg.iterations = 10000;
    cfg.seed = 4;
    const auto chain = run_t_chain(TSampler::collapsed, cfg);
    const std::span<const double> z(chain.z1);
    const double lag1 = stats::covariance(z.first(z.size() - 1), z.last(z.size() - 1)) /
                        stats::moments(z).variance;
    CHECK(lag1 > 0.99);
  }

  TEST_CASE("uncollapsed step draws the scale from its inverse-gamma conditional") {
    const double rho = 0.3;
    const TPoint start{1.0, -0.5};
    const double q = (1.0 + 0.25 + 2 * rho * 0.5) / (1 - rho * rho);
    const double b = q / 2 + 2;
    Rng rng(2);
    std::vector<double> s;
    for (int i = 0; i < 200000; ++i) s.push_back(t_uncollapsed_step(start, rho, rng).scale);
    // IG(3, b) has mean b / 2.
    CHECK(stats::mean_z_test(s, b / 2).p_value > 0.001);
  }

  TEST_CASE("both samplers reach the target moments") {
    for (auto sampler : {TSampler::collapsed, TSampler::uncollapsed}) {
      TDemoConfig cfg;
      cfg.rho = 0.5;
      cfg.iterations = 200000;
      cfg.seed = 3;
      const auto chain = run_t_chain(sampler, cfg);
      REQUIRE(chain.z1.size() == cfg.iterations);
      const auto m1 = stats::moments(chain.z1);
      const auto m2 = stats::moments(chain.z2);
      CHECK(std::fabs(m1.mean) < 0.05);
      CHECK(std::fabs(m2.mean) < 0.05);
      CHECK(m1.variance == doctest::Approx(2.0).epsilon(0.15));
      CHECK(m2.variance == doctest::Approx(2.0).epsilon(0.15));
      CHECK(stats::covariance(chain.z1, chain.z2) == doctest::Approx(1.0).epsilon(0.15));
    }
  }

  TEST_CASE("chains are deterministic in the seed") {
    TDemoConfig cfg;
    cfg.iterations = 100;
    cfg.seed = 9;
    const auto a = run_t_chain(TSampler::uncollapsed, cfg);
    const auto b = run_t_chain(TSampler::uncollapsed, cfg);
    CHECK(a.z1 == b.z1);
    CHECK(a.z2 == b.z2);
  }

  TEST_CASE("comparison report") {
    const auto rows = run_t_comparison({0.0, 0.9}, 2000, 5, 2);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
      CHECK(r.ess_per_seed.size() == 2);
      CHECK(r.ess > 0.0);
      CHECK(r.ess <= 2000.0);
    }
    std::ostringstream out;
    write_t_report(rows, out);
    CHECK(out.str().rfind("rho,sampler,ess,mean1,mean2,var1,var2,cov12\n", 0) == 0);
  }
}
