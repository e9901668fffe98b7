#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "urnlda/distributions.hpp"
#include "urnlda/eval.hpp"

using namespace urnlda;

TEST_SUITE("eval") {
  TEST_CASE("log joint of a single token with one topic and one word is zero") {
    const Corpus c(Vocabulary::numbered(1), {{0}});
    CHECK(log_joint(c, std::vector<TopicId>{0}, 1, 0.1, 0.01) == doctest::Approx(0.0));
  }

  TEST_CASE("log joint agrees with the dense oracle") {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t K = 1 + rng.below(4);
      const std::size_t V = 1 + rng.below(6);
      testing::DenseDocs docs(1 + rng.below(4));
      std::vector<TopicId> z;
      for (auto& d : docs) {
        const std::size_t len = rng.below(6);
        for (std::size_t i = 0; i < len; ++i) {
          d.push_back(static_cast<WordId>(rng.below(V)));
          z.push_back(static_cast<TopicId>(rng.below(K)));
        }
      }
      const Corpus c(Vocabulary::numbered(V), docs);
      const double alpha = 0.05 + rng.uniform();
      const double beta = 0.01 + rng.uniform();
      const double expected = testing::dense_log_joint(docs, {z.begin(), z.end()}, K, V, alpha, beta);
      REQUIRE(log_joint(c, z, K, alpha, beta) == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  TEST_CASE("log joint with per-topic alpha") {
    // One document with tokens in topics (0, 0, 1), V = 1:
    // Dirichlet-multinomial term Gamma(a0+a1)/Gamma(3+a0+a1) * Gamma(2+a0)/Gamma(a0) * Gamma(1+a1)/Gamma(a1).
    const Corpus c(Vocabulary::numbered(1), {{0, 0, 0}});
    auto state = init_state(c, 2, 1);
    state.z = {0, 0, 1};
    const auto counts = recount(c, state.z, 2);
    state.m = counts.m;
    state.n = counts.n;
    const double a0 = 0.3;
    const double a1 = 1.7;
    const double doc = std::lgamma(a0 + a1) - std::lgamma(3 + a0 + a1) + std::lgamma(2 + a0) -
                       std::lgamma(a0) + std::lgamma(1 + a1) - std::lgamma(a1);
    // With V = 1 the word term is identically zero.
    CHECK(log_joint(c, state, std::vector<double>{a0, a1}, 0.2) == doctest::Approx(doc));
  }

  TEST_CASE("top words: ordering, ties and padding") {
    TopicWordCounts n(2, 4);
    n.add(0, 0, 5);
    n.add(0, 1, 3);
    n.add(0, 2, 9);
    n.add(1, 3, 1);
    n.add(1, 1, 1);
    const auto top = top_words(n, 2);
    CHECK(top[0] == std::vector<WordId>{2, 0});
    CHECK(top[1] == std::vector<WordId>{1, 3});
    const auto padded = top_words(n, 10);
    CHECK(padded[1] == std::vector<WordId>{1, 3, 0, 2});
  }

  TEST_CASE("top words from phi") {
    std::vector<SparsePhi::RowEntries> rows{{{0, 0.1}, {2, 0.9}}};
    const auto phi = SparsePhi::from_rows(1, 3, rows);
    CHECK(top_words(phi, 2)[0] == std::vector<WordId>{2, 0});
  }

  TEST_CASE("coherence of co-occurring and disjoint pairs") {
    std::vector<std::vector<WordId>> docs;
    for (int i = 0; i < 10; ++i) docs.push_back({0, 1});
    for (int i = 0; i < 10; ++i) docs.push_back({2});
    docs.push_back({3});
    const Corpus c(Vocabulary::numbered(4), docs);
    TopicWordCounts n(2, 4);
    n.add(0, 0, 5);
    n.add(0, 1, 3);
    n.add(1, 2, 5);
    n.add(1, 3, 1);
    const auto coh = topic_coherence(n, c, 10);
    CHECK(coh[0] == doctest::Approx(std::log(11.0 / 10.0)));
    CHECK(coh[1] == doctest::Approx(std::log(1.0 / 10.0)));
    CHECK_THROWS_AS(topic_coherence(n, c, 1), std::invalid_argument);
  }

  TEST_CASE("trace series rejects non-finite values") {
    CHECK_THROWS_AS(TraceSeries({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    CHECK_THROWS_AS(ess(std::vector<double>(5, 1.0)), std::invalid_argument);
  }

  TEST_CASE("ESS of iid noise is close to the length") {
    Rng rng(2);
    std::vector<double> x(20000);
    for (auto& v : x) v = normal_sample(rng);
    CHECK(ess(x) == doctest::Approx(20000).epsilon(0.1));
  }

  TEST_CASE("ESS of an AR(1) chain") {
    Rng rng(3);
    const double rho = 0.9;
    std::vector<double> x(100000);
    double prev = 0.0;
    for (auto& v : x) prev = v = rho * prev + std::sqrt(1 - rho * rho) * normal_sample(rng);
    const double expected = 100000.0 * (1 - rho) / (1 + rho);
    CHECK(ess(x) == doctest::Approx(expected).epsilon(0.2));
  }

  TEST_CASE("ESS of constant and alternating traces") {
    CHECK(ess(std::vector<double>(50, 3.0)) == 50.0);
    std::vector<double> alt(1000);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? 1.0 : -1.0;
    CHECK(ess(alt) > 900.0);
    CHECK(ess(alt) <= 1000.0);
  }
}
