#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "urnlda/corpus.hpp"
#include "urnlda/poisson_cache.hpp"
#include "urnlda/rng.hpp"
#include "urnlda/sparse_phi.hpp"
#include "urnlda/topic_state.hpp"

namespace urnlda {

enum class SamplerVariant { pu, pc, collapsed };

std::string_view to_string(SamplerVariant variant) noexcept;
/// "pu", "pc" or "collapsed"; nullopt otherwise.
std::optional<SamplerVariant> parse_variant(std::string_view name) noexcept;

struct SamplerConfig {
  SamplerVariant variant = SamplerVariant::pu;
  std::size_t num_topics = 10;
  /// One value for a symmetric prior, or one value per topic.
  std::vector<double> alpha{0.1};
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t cache_limit = PoissonAliasCache::kDefaultLimit;

  std::vector<double> alpha_per_topic() const;
  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

/// Inner-loop work counters for the token draws.
struct TokenCounters {
  std::uint64_t b_bucket_work = 0;   // topics visited computing sigma_b
  std::uint64_t sparsity_bound = 0;  // sum over tokens of min(K_d^(m), K_v^(Phi))
  std::uint64_t a_bucket_hits = 0;
  std::uint64_t fallback_count = 0;

  TokenCounters& operator+=(const TokenCounters& o) noexcept {
    b_bucket_work += o.b_bucket_work;
    sparsity_bound += o.sparsity_bound;
    a_bucket_hits += o.a_bucket_hits;
    fallback_count += o.fallback_count;
    return *this;
  }
};

struct IterationMetrics {
  std::uint64_t iteration = 0;
  double log_joint = 0.0;
  double phi_phase_seconds = 0.0;
  double z_phase_seconds = 0.0;
  std::uint64_t b_bucket_work = 0;
  std::uint64_t sparsity_bound = 0;
  std::uint64_t a_bucket_hits = 0;
  std::uint64_t fallback_count = 0;
};

/// Reusable buffers for draw_z_token.
struct ZScratch {
  std::vector<TopicId> topics;
  std::vector<double> weights;
};

/// Draws one token's topic with probability proportional to
/// phi[k][v] * (alpha[k] + m[d][k]), m already excluding the token.
///
/// sigma_b is accumulated over the shorter of the document's nonzero topics
/// and Phi's column v, probing the other side in O(1). The a-bucket
/// (phi * alpha) is drawn from the precomputed alias table. If column v is
/// structurally empty the draw falls back to proportional to alpha + m and
/// counts a fallback.
TopicId draw_z_token(WordId v, const DocTopicRow& m_row, const SparsePhi& phi,
                     std::span<const double> alpha, const ATableSet& a_tables, Rng& rng,
                     TokenCounters& counters, ZScratch& scratch);

/// Unnormalized collapsed full conditional of one token with word v:
///   out[k] = (n_kv + beta) / (n_k + V beta) * (m_dk + alpha_k),
/// n and m already excluding the token.
void collapsed_weights(const TopicWordCounts& n, const DocTopicRow& m_row, WordId v,
                       std::span<const double> alpha, double beta, std::span<double> out);

/// Row k of a Poisson Polya urn draw of Phi given n: Pois(beta + n_kv) for
/// every word with n_kv > 0, and for the Z zero-count words a block total
/// T ~ Pois(beta Z) scattered uniformly over them. Redrawn while the row
/// total is zero. Returns normalized (word, probability) pairs.
SparsePhi::RowEntries draw_phi_pu_row(const TopicWordCounts& n, TopicId k,
                                      const PoissonAliasCache& cache, Rng& rng);

/// Row k of a Dirichlet(n_k + beta) draw of Phi.
std::vector<double> draw_phi_pc_row(const TopicWordCounts& n, TopicId k, double beta, Rng& rng);

/// All rows in parallel over topics. Row k uses its own stream derived from
/// (seed, iteration, k), so the result does not depend on `workers`.
SparsePhi draw_phi_pu(const TopicWordCounts& n, const PoissonAliasCache& cache,
                      std::uint64_t seed, std::uint64_t iteration, std::size_t workers = 1);
DensePhi draw_phi_pc(const TopicWordCounts& n, double beta, std::uint64_t seed,
                     std::uint64_t iteration, std::size_t workers = 1);

/// Contiguous document ranges [begin, end) balanced by token count.
std::vector<std::pair<DocId, DocId>> shard_documents(const Corpus& corpus, std::size_t shards);

/// Drives one chain. PU and PC iterations are bulk synchronous: Phi rows in
/// parallel, barrier, document shards in parallel with local n deltas,
/// barrier, integer merge of the deltas. Documents draw from their own
/// (seed, iteration, doc) streams, so trajectories do not depend on the
/// worker count.
class Sampler {
 public:
  /// Starts from init_state(corpus, K, seed). The corpus must outlive the sampler.
  Sampler(const Corpus& corpus, SamplerConfig config);
  Sampler(const Corpus& corpus, SamplerConfig config, TopicState state);

  /// One iteration of the configured variant.
  IterationMetrics step();
  /// PU or PC iteration. Throws std::logic_error for a collapsed config.
  IterationMetrics run_iteration();
  /// Sequential fully collapsed sweep updating m and n after every token.
  IterationMetrics collapsed_iteration();

  const TopicState& state() const noexcept { return state_; }
  const SparsePhi& phi() const noexcept { return phi_; }
  const ATableSet& a_tables() const noexcept { return a_tables_; }
  const SamplerConfig& config() const noexcept { return config_; }
  std::uint64_t iteration() const noexcept { return iteration_; }
  const std::vector<std::pair<DocId, DocId>>& shards() const noexcept { return shards_; }

 private:
  void finish(IterationMetrics& metrics);

  const Corpus* corpus_;
  SamplerConfig config_;
  std::vector<double> alpha_;
  TopicState state_;
  std::optional<PoissonAliasCache> cache_;
  SparsePhi phi_;
  ATableSet a_tables_;
  std::vector<std::pair<DocId, DocId>> shards_;
  std::vector<std::vector<std::unordered_map<WordId, std::int32_t>>> deltas_;
  std::uint64_t iteration_ = 0;
};

}  // namespace urnlda
