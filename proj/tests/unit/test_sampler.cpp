#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "urnlda/error.hpp"
#include "urnlda/eval.hpp"
#include "urnlda/ppu.hpp"
#include "urnlda/sampler.hpp"
#include "urnlda/stat_tests.hpp"

using namespace urnlda;

namespace {

SparsePhi two_topic_column(double phi0, double phi1) {
  // V = 2; word 0 carries the column under test, word 1 absorbs the rest.
  std::vector<SparsePhi::RowEntries> rows(2);
  rows[0] = {{0, phi0}, {1, 1.0 - phi0}};
  rows[1] = {{0, phi1}, {1, 1.0 - phi1}};
  return SparsePhi::from_rows(2, 2, rows);
}

// Fraction of sweeps spent in each joint assignment, for a chain on a tiny corpus.
std::vector<double> visit_frequencies(const Corpus& corpus, SamplerConfig config,
                                      std::size_t burn_in) {
  const std::size_t K = config.num_topics;
  std::size_t states = 1;
  for (std::size_t i = 0; i < corpus.num_tokens(); ++i) states *= K;
  std::vector<double> freq(states, 0.0);
  Sampler sampler(corpus, config);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    sampler.step();
    if (it < burn_in) continue;
    const auto& z = sampler.state().z;
    freq[testing::assignment_index(std::vector<std::uint32_t>(z.begin(), z.end()), K)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(config.iterations - burn_in);
  return freq;
}

}  // namespace

TEST_SUITE("sampler") {
  TEST_CASE("config validation and variant names") {
    SamplerConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.alpha_per_topic() == std::vector<double>(10, 0.1));
    c.alpha = {0.1, 0.2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SamplerConfig{};
    c.num_topics = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SamplerConfig{};
    c.beta = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SamplerConfig{};
    c.workers = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_variant("pu") == SamplerVariant::pu);
    CHECK(parse_variant("collapsed") == SamplerVariant::collapsed);
    CHECK_FALSE(parse_variant("dirichlet").has_value());
    CHECK(to_string(SamplerVariant::pc) == "pc");
  }

  TEST_CASE("sparse phi: lookups agree with the dense matrix") {
    Rng rng(1);
    for (std::size_t K : {3u, 40u}) {
      const std::size_t V = 30;
      DensePhi dense{K, V, std::vector<double>(K * V, 0.0)};
      for (auto& x : dense.values) x = rng.below(3) == 0 ? rng.uniform() : 0.0;
      const auto sparse = SparsePhi::from_dense(dense);
      std::size_t nnz = 0;
      for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t v = 0; v < V; ++v) {
          REQUIRE(sparse.value(k, v) == dense(k, v));
          nnz += dense(k, v) > 0.0;
        }
      }
      CHECK(sparse.nnz() == nnz);
      for (std::size_t v = 0; v < V; ++v) {
        const auto col = sparse.column(v);
        for (std::size_t i = 1; i < col.size(); ++i) REQUIRE(col.topics[i - 1] < col.topics[i]);
      }
    }
  }

  TEST_CASE("a-bucket tables: sigma_a and weights") {
    const auto phi = two_topic_column(0.2, 0.5);
    const std::vector<double> alpha{0.1, 0.1};
    const auto a = rebuild_a_tables(phi, alpha);
    CHECK(a.sigma_a(0) == doctest::Approx(0.07));
    const auto p = a.table(0).reconstructed_probabilities();
    CHECK(p[0] == doctest::Approx(0.02 / 0.07));
    CHECK(p[1] == doctest::Approx(0.05 / 0.07));
  }

  TEST_CASE("token draw matches the exact conditional") {
    const auto phi = two_topic_column(0.2, 0.5);
    const std::vector<double> alpha{0.1, 0.1};
    const auto a = rebuild_a_tables(phi, alpha);
    DocTopicCounts m(1, 2);
    m.increment(0, 1);
    // Weights phi_k (alpha + m_k): 0.2 * 0.1 and 0.5 * 1.1.
    const double p1 = 0.55 / 0.57;
    Rng rng(2);
    TokenCounters counters;
    ZScratch scratch;
    const int n = 200000;
    std::vector<std::uint64_t> h(2, 0);
    for (int i = 0; i < n; ++i) ++h[draw_z_token(0, m.row(0), phi, alpha, a, rng, counters, scratch)];
    CHECK(stats::chi_square_gof(h, std::vector<double>{1 - p1, p1}).p_value > 0.001);
    CHECK(counters.b_bucket_work <= counters.sparsity_bound);
    CHECK(counters.fallback_count == 0);
  }

  TEST_CASE("token draw falls back to alpha + m on an empty column") {
    std::vector<SparsePhi::RowEntries> rows{{{1, 1.0}}, {{1, 1.0}}};
    const auto phi = SparsePhi::from_rows(2, 2, rows);
    const std::vector<double> alpha{0.1, 0.1};
    const auto a = rebuild_a_tables(phi, alpha);
    CHECK(a.empty(0));
    DocTopicCounts m(1, 2);
    m.increment(0, 0);
    m.increment(0, 0);
    Rng rng(3);
    TokenCounters counters;
    ZScratch scratch;
    const int n = 100000;
    std::vector<std::uint64_t> h(2, 0);
    for (int i = 0; i < n; ++i) ++h[draw_z_token(0, m.row(0), phi, alpha, a, rng, counters, scratch)];
    CHECK(counters.fallback_count == static_cast<std::uint64_t>(n));
    CHECK(stats::chi_square_gof(h, std::vector<double>{2.1 / 2.2, 0.1 / 2.2}).p_value > 0.001);
  }

  TEST_CASE("collapsed conditional on a worked example") {
    // doc0 = [w0*, w1, w1], doc1 = [w0, w0, w0, w1]; the starred token is
    // being resampled. Topics of the rest: doc0 (0, 1), doc1 (0, 0, 0, 1).
    const Corpus c(Vocabulary::numbered(2), {{0, 1, 1}, {0, 0, 0, 1}});
    const std::vector<TopicId> z{0, 0, 1, 0, 0, 0, 1};
    auto counts = recount(c, z, 2);
    counts.n.add(0, 0, -1);
    counts.m.decrement(0, 0);
    std::vector<double> w(2);
    const std::vector<double> alpha{0.1, 0.1};
    collapsed_weights(counts.n, counts.m.row(0), 0, alpha, 0.01, w);
    CHECK(w[0] == doctest::Approx(3.01 / 4.02 * 1.1).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.01 / 2.02 * 1.1).epsilon(1e-12));
    CHECK(w[0] / (w[0] + w[1]) == doctest::Approx(0.993431).epsilon(1e-5));
  }

  TEST_CASE("collapsed conditional equals the ratio of joints") {
    const Corpus c(Vocabulary::numbered(3), {{0, 1, 2, 2}, {1, 1, 0}});
    const testing::DenseDocs docs{{0, 1, 2, 2}, {1, 1, 0}};
    const std::vector<TopicId> z{0, 2, 1, 1, 0, 2, 2};
    const double alpha = 0.3;
    const double beta = 0.05;
    const std::vector<double> alphas(3, alpha);
    for (std::size_t token = 0; token < z.size(); ++token) {
      const DocId d = token < 4 ? 0 : 1;
      const WordId v = c.tokens()[token];
      auto counts = recount(c, z, 3);
      counts.n.add(z[token], v, -1);
      counts.m.decrement(d, z[token]);
      std::vector<double> w(3);
      collapsed_weights(counts.n, counts.m.row(d), v, alphas, beta, w);
      std::vector<double> joint(3);
      for (TopicId k = 0; k < 3; ++k) {
        auto zk = z;
        zk[token] = k;
        joint[k] = testing::dense_log_joint(docs, {zk.begin(), zk.end()}, 3, 3, alpha, beta);
      }
      for (TopicId k = 1; k < 3; ++k) {
        REQUIRE(std::log(w[k] / w[0]) == doctest::Approx(joint[k] - joint[0]).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("PU row matches a direct Poisson Polya urn draw") {
    const std::size_t V = 6;
    const double beta = 0.5;
    TopicWordCounts n(1, V);
    n.add(0, 1, 3);
    n.add(0, 4, 1);
    const PoissonAliasCache cache(beta);
    std::vector<double> concentration(V, beta);
    concentration[1] += 3;
    concentration[4] += 1;
    Rng a(4);
    Rng b(5);
    const int draws = 100000;
    std::vector<double> pu1, pu0, direct1, direct0;
    for (int i = 0; i < draws; ++i) {
      const auto row = draw_phi_pu_row(n, 0, cache, a);
      double x1 = 0.0;
      double x0 = 0.0;
      double total = 0.0;
      for (const auto& [v, p] : row) {
        REQUIRE(p > 0.0);
        total += p;
        if (v == 1) x1 = p;
        if (v == 0) x0 = p;
      }
      REQUIRE(total == doctest::Approx(1.0));
      pu1.push_back(x1);
      pu0.push_back(x0);
      const auto d = ppu_sample_direct(concentration, b).probabilities();
      direct1.push_back(d[1]);
      direct0.push_back(d[0]);
    }
    CHECK(stats::chi_square_two_sample(pu1, direct1).p_value > 0.001);
    CHECK(stats::chi_square_two_sample(pu0, direct0).p_value > 0.001);
  }

  TEST_CASE("PC row is a Dirichlet(n + beta) draw") {
    TopicWordCounts n(1, 3);
    n.add(0, 0, 8);
    Rng rng(6);
    std::vector<double> x0;
    for (int i = 0; i < 100000; ++i) {
      const auto row = draw_phi_pc_row(n, 0, 1.0, rng);
      REQUIRE(row.size() == 3);
      x0.push_back(row[0]);
    }
    // Dirichlet(9, 1, 1): mean 9/11, variance 9 * 2 / (11^2 * 12).
    CHECK(stats::mean_z_test(x0, 9.0 / 11).p_value > 0.001);
    CHECK(stats::variance_z_test(x0, 18.0 / (121.0 * 12.0)).p_value > 0.001);
  }

  TEST_CASE("document shards cover the corpus in order") {
    const auto s = synth_corpus(4, 50, 37, 13, 0.2, 0.1, 3);
    for (std::size_t shards : {1u, 3u, 8u, 64u}) {
      const auto ranges = shard_documents(s.corpus, shards);
      REQUIRE_FALSE(ranges.empty());
      CHECK(ranges.front().first == 0);
      CHECK(ranges.back().second == s.corpus.num_docs());
      for (std::size_t i = 1; i < ranges.size(); ++i) CHECK(ranges[i].first == ranges[i - 1].second);
    }
  }

  TEST_CASE("iterations conserve counts and respect the sparsity bound") {
    const auto s = synth_corpus(5, 80, 30, 40, 0.1, 0.05, 4);
    for (auto variant : {SamplerVariant::pu, SamplerVariant::pc, SamplerVariant::collapsed}) {
      SamplerConfig cfg;
      cfg.variant = variant;
      cfg.num_topics = 5;
      cfg.beta = 0.05;
      cfg.seed = 12;
      Sampler sampler(s.corpus, cfg);
      for (int it = 1; it <= 5; ++it) {
        const auto m = sampler.step();
        CHECK(m.iteration == static_cast<std::uint64_t>(it));
        CHECK(m.b_bucket_work <= m.sparsity_bound);
        CHECK(m.log_joint == doctest::Approx(log_joint(s.corpus, sampler.state(), 0.1, 0.05)));
        CHECK_NOTHROW(check_conservation(s.corpus, sampler.state()));
      }
    }
  }

  TEST_CASE("collapsed config rejects bulk-synchronous iterations") {
    const auto s = synth_corpus(2, 10, 3, 5, 0.1, 0.1, 1);
    SamplerConfig cfg;
    cfg.variant = SamplerVariant::collapsed;
    cfg.num_topics = 2;
    Sampler sampler(s.corpus, cfg);
    CHECK_THROWS_AS(sampler.run_iteration(), std::logic_error);
  }

  TEST_CASE("trajectories do not depend on the worker count") {
    const auto s = synth_corpus(8, 200, 60, 50, 0.1, 0.01, 5);
    for (auto variant : {SamplerVariant::pu, SamplerVariant::pc}) {
      SamplerConfig cfg;
      cfg.variant = variant;
      cfg.num_topics = 8;
      cfg.seed = 77;
      cfg.workers = 1;
      Sampler one(s.corpus, cfg);
      cfg.workers = 4;
      Sampler four(s.corpus, cfg);
      for (int it = 0; it < 10; ++it) {
        const auto a = one.step();
        const auto b = four.step();
        REQUIRE(a.log_joint == b.log_joint);
      }
      CHECK(one.state().z == four.state().z);
      CHECK(one.state().n == four.state().n);
      CHECK(one.state().m == four.state().m);
    }
  }

  TEST_CASE("small posterior is recovered by the exact samplers") {
    const Corpus c(Vocabulary::numbered(2), {{0, 1}, {1, 1}});
    const testing::DenseDocs docs{{0, 1}, {1, 1}};
    const auto exact = testing::enumerate_posterior(4, 2, [&](const std::vector<std::uint32_t>& z) {
      return testing::dense_log_joint(docs, z, 2, 2, 0.5, 0.5);
    });
    for (auto variant : {SamplerVariant::pc, SamplerVariant::collapsed}) {
      SamplerConfig cfg;
      cfg.variant = variant;
      cfg.num_topics = 2;
      cfg.alpha = {0.5};
      cfg.beta = 0.5;
      cfg.iterations = 40000;
      cfg.seed = 3;
      const auto freq = visit_frequencies(c, cfg, 100);
      CAPTURE(to_string(variant));
      CHECK(testing::total_variation(freq, exact) < 0.03);
    }
  }
}
