#include "urnlda/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "urnlda/distributions.hpp"
#include "urnlda/error.hpp"
#include "urnlda/eval.hpp"
#include "urnlda/parallel.hpp"

namespace urnlda {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(SamplerVariant variant) noexcept {
  switch (variant) {
    case SamplerVariant::pu:
      return "pu";
    case SamplerVariant::pc:
      return "pc";
    case SamplerVariant::collapsed:
      return "collapsed";
  }
  return "?";
}

std::optional<SamplerVariant> parse_variant(std::string_view name) noexcept {
  if (name == "pu") return SamplerVariant::pu;
  if (name == "pc") return SamplerVariant::pc;
  if (name == "collapsed") return SamplerVariant::collapsed;
  return std::nullopt;
}

std::vector<double> SamplerConfig::alpha_per_topic() const {
  if (alpha.size() == 1) return std::vector<double>(num_topics, alpha.front());
  return alpha;
}

void SamplerConfig::validate() const {
  if (num_topics == 0) throw std::invalid_argument("K must be at least 1");
  if (alpha.size() != 1 && alpha.size() != num_topics) {
    throw std::invalid_argument("alpha needs 1 or K entries");
  }
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("alpha must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  if (workers == 0) throw std::invalid_argument("workers must be at least 1");
}

TopicId draw_z_token(WordId v, const DocTopicRow& m_row, const SparsePhi& phi,
                     std::span<const double> alpha, const ATableSet& a_tables, Rng& rng,
                     TokenCounters& counters, ZScratch& scratch) {
  const PhiColumn col = phi.column(v);
  const std::size_t doc_nonzero = m_row.nonzero.size();
  const std::size_t col_nonzero = col.size();
  scratch.topics.clear();
  scratch.weights.clear();
  double sigma_b = 0.0;

  if (col_nonzero <= doc_nonzero) {
    for (std::size_t j = 0; j < col_nonzero; ++j) {
      const TopicId k = col.topics[j];
      if (const std::uint32_t c = m_row.counts[k]; c > 0) {
        const double w = col.values[j] * c;
        sigma_b += w;
        scratch.topics.push_back(k);
        scratch.weights.push_back(w);
      }
    }
    counters.b_bucket_work += col_nonzero;
  } else {
    for (const TopicId k : m_row.nonzero) {
      if (const double p = phi.value(k, v); p > 0.0) {
        const double w = p * m_row.counts[k];
        sigma_b += w;
        scratch.topics.push_back(k);
        scratch.weights.push_back(w);
      }
    }
    counters.b_bucket_work += doc_nonzero;
  }
  counters.sparsity_bound += std::min(doc_nonzero, col_nonzero);

  const double sigma_a = a_tables.sigma_a(v);
  if (!(sigma_a + sigma_b > 0.0)) {
    // Column v is structurally empty in this Phi draw.
    ++counters.fallback_count;
    double total = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) total += alpha[k] + m_row.counts[k];
    double u = rng.uniform() * total;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      u -= alpha[k] + m_row.counts[k];
      if (u < 0.0) return static_cast<TopicId>(k);
    }
    return static_cast<TopicId>(alpha.size() - 1);
  }

  double u = rng.uniform() * (sigma_a + sigma_b);
  if (u < sigma_a) {
    ++counters.a_bucket_hits;
    return a_tables.sample(phi, v, rng);
  }
  u -= sigma_a;
  for (std::size_t j = 0; j < scratch.weights.size(); ++j) {
    u -= scratch.weights[j];
    if (u < 0.0) return scratch.topics[j];
  }
  return scratch.topics.back();
}

void collapsed_weights(const TopicWordCounts& n, const DocTopicRow& m_row, WordId v,
                       std::span<const double> alpha, double beta, std::span<double> out) {
  const double vocab_beta = beta * static_cast<double>(n.vocab_size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto tk = static_cast<TopicId>(k);
    out[k] = (n.count(tk, v) + beta) / (static_cast<double>(n.total(tk)) + vocab_beta) *
             (m_row.counts[k] + alpha[k]);
  }
}

SparsePhi::RowEntries draw_phi_pu_row(const TopicWordCounts& n, TopicId k,
                                      const PoissonAliasCache& cache, Rng& rng) {
  const auto& row = n.row(k);
  const std::size_t vocab = n.vocab_size();
  // Sorted so the stream is consumed in word order, independent of hash layout.
  std::vector<std::pair<WordId, std::uint32_t>> nonzero(row.begin(), row.end());
  std::sort(nonzero.begin(), nonzero.end());
  const std::size_t zero_positions = vocab - nonzero.size();

  std::vector<std::pair<WordId, std::uint64_t>> counts;
  std::vector<WordId> scattered;
  std::uint64_t total = 0;
  do {
    counts.clear();
    scattered.clear();
    total = 0;
    for (const auto& [v, l] : nonzero) {
      if (const std::uint64_t c = cache.sample(l, rng); c > 0) {
        counts.emplace_back(v, c);
        total += c;
      }
    }
    if (zero_positions > 0) {
      const std::uint64_t block =
          poisson_sample(cache.beta() * static_cast<double>(zero_positions), rng);
      for (std::uint64_t t = 0; t < block; ++t) {
        WordId v;
        do {
          v = static_cast<WordId>(rng.below(vocab));
        } while (row.contains(v));
        scattered.push_back(v);
      }
      total += block;
    }
  } while (total == 0);

  std::sort(scattered.begin(), scattered.end());
  for (std::size_t i = 0; i < scattered.size();) {
    std::size_t j = i;
    while (j < scattered.size() && scattered[j] == scattered[i]) ++j;
    counts.emplace_back(scattered[i], j - i);
    i = j;
  }

  SparsePhi::RowEntries out;
  out.reserve(counts.size());
  const auto denom = static_cast<double>(total);
  for (const auto& [v, c] : counts) out.emplace_back(v, static_cast<double>(c) / denom);
  return out;
}

std::vector<double> draw_phi_pc_row(const TopicWordCounts& n, TopicId k, double beta, Rng& rng) {
  std::vector<double> concentration(n.vocab_size(), beta);
  for (const auto& [v, c] : n.row(k)) concentration[v] += c;
  return dirichlet_sample(concentration, rng);
}

SparsePhi draw_phi_pu(const TopicWordCounts& n, const PoissonAliasCache& cache,
                      std::uint64_t seed, std::uint64_t iteration, std::size_t workers) {
  const std::size_t num_topics = n.num_topics();
  std::vector<SparsePhi::RowEntries> rows(num_topics);
  parallel_chunks(workers, num_topics, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(seed, stream_id(StreamTag::phi, iteration, k));
      rows[k] = draw_phi_pu_row(n, static_cast<TopicId>(k), cache, rng);
    }
  });
  return SparsePhi::from_rows(num_topics, n.vocab_size(), rows);
}

DensePhi draw_phi_pc(const TopicWordCounts& n, double beta, std::uint64_t seed,
                     std::uint64_t iteration, std::size_t workers) {
  DensePhi phi{n.num_topics(), n.vocab_size(), std::vector<double>(n.num_topics() * n.vocab_size())};
  parallel_chunks(workers, n.num_topics(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(seed, stream_id(StreamTag::phi, iteration, k));
      const auto row = draw_phi_pc_row(n, static_cast<TopicId>(k), beta, rng);
      std::copy(row.begin(), row.end(), phi.values.begin() + static_cast<std::ptrdiff_t>(k * phi.vocab_size));
    }
  });
  return phi;
}

std::vector<std::pair<DocId, DocId>> shard_documents(const Corpus& corpus, std::size_t shards) {
  shards = std::max<std::size_t>(1, shards);
  std::vector<std::pair<DocId, DocId>> out;
  const std::size_t num_docs = corpus.num_docs();
  const auto total = static_cast<double>(corpus.num_tokens());
  DocId begin = 0;
  std::size_t seen = 0;
  DocId d = 0;
  for (std::size_t s = 1; s <= shards; ++s) {
    const double target = total * static_cast<double>(s) / static_cast<double>(shards);
    while (d < num_docs && (s == shards || static_cast<double>(seen + corpus.doc_length(d)) <= target)) {
      seen += corpus.doc_length(d);
      ++d;
    }
    out.emplace_back(begin, d);
    begin = d;
  }
  return out;
}

Sampler::Sampler(const Corpus& corpus, SamplerConfig config)
    : Sampler(corpus, config, init_state(corpus, config.num_topics, config.seed)) {}

Sampler::Sampler(const Corpus& corpus, SamplerConfig config, TopicState state)
    : corpus_(&corpus), config_(std::move(config)), state_(std::move(state)) {
  config_.validate();
  if (state_.num_topics != config_.num_topics || state_.z.size() != corpus.num_tokens()) {
    throw std::invalid_argument("sampler: state does not match corpus and config");
  }
  alpha_ = config_.alpha_per_topic();
  if (config_.variant == SamplerVariant::pu) cache_.emplace(config_.beta, config_.cache_limit);
  shards_ = shard_documents(corpus, config_.workers);
  deltas_.assign(shards_.size(), std::vector<std::unordered_map<WordId, std::int32_t>>(config_.num_topics));
}

IterationMetrics Sampler::step() {
  return config_.variant == SamplerVariant::collapsed ? collapsed_iteration() : run_iteration();
}

IterationMetrics Sampler::run_iteration() {
  if (config_.variant == SamplerVariant::collapsed) {
    throw std::logic_error("run_iteration: collapsed sampler is sequential");
  }
  const Corpus& corpus = *corpus_;
  const std::uint64_t it = ++iteration_;
  const std::size_t workers = config_.workers;
  IterationMetrics metrics;
  metrics.iteration = it;

  // Phase A: Phi rows, then the a-bucket tables.
  auto start = Clock::now();
  if (config_.variant == SamplerVariant::pu) {
    phi_ = draw_phi_pu(state_.n, *cache_, config_.seed, it, workers);
  } else {
    phi_ = SparsePhi::from_dense(draw_phi_pc(state_.n, config_.beta, config_.seed, it, workers));
  }
  a_tables_ = rebuild_a_tables(phi_, alpha_, workers);
  metrics.phi_phase_seconds = seconds_since(start);

  // Phase B: document shards, n read-only, deltas buffered per shard.
  start = Clock::now();
  std::vector<TokenCounters> counters(shards_.size());
  const auto tokens = corpus.tokens();
  parallel_chunks(workers, shards_.size(), [&](std::size_t, std::size_t sb, std::size_t se) {
    ZScratch scratch;
    for (std::size_t s = sb; s < se; ++s) {
      auto& delta = deltas_[s];
      for (DocId d = shards_[s].first; d < shards_[s].second; ++d) {
        Rng rng(config_.seed, stream_id(StreamTag::tokens, it, d));
        const std::size_t begin = corpus.doc_begin(d);
        const std::size_t end = begin + corpus.doc_length(d);
        for (std::size_t i = begin; i < end; ++i) {
          const WordId v = tokens[i];
          const TopicId old_topic = state_.z[i];
          state_.m.decrement(d, old_topic);
          const TopicId new_topic =
              draw_z_token(v, state_.m.row(d), phi_, alpha_, a_tables_, rng, counters[s], scratch);
          state_.m.increment(d, new_topic);
          state_.z[i] = new_topic;
          if (new_topic != old_topic) {
            --delta[old_topic][v];
            ++delta[new_topic][v];
          }
        }
      }
    }
  });

  // Merge: integer sums commute, so the order of shards is irrelevant.
  parallel_chunks(workers, config_.num_topics, [&](std::size_t, std::size_t kb, std::size_t ke) {
    for (std::size_t k = kb; k < ke; ++k) {
      for (auto& shard_delta : deltas_) {
        for (const auto& [v, dv] : shard_delta[k]) state_.n.add(static_cast<TopicId>(k), v, dv);
        shard_delta[k].clear();
      }
    }
  });
  metrics.z_phase_seconds = seconds_since(start);

  TokenCounters total;
  for (const auto& c : counters) total += c;
  metrics.b_bucket_work = total.b_bucket_work;
  metrics.sparsity_bound = total.sparsity_bound;
  metrics.a_bucket_hits = total.a_bucket_hits;
  metrics.fallback_count = total.fallback_count;
  if (metrics.b_bucket_work > metrics.sparsity_bound) {
    throw ConsistencyError("iteration " + std::to_string(it) + ": b-bucket work " +
                           std::to_string(metrics.b_bucket_work) + " exceeds sparsity bound " +
                           std::to_string(metrics.sparsity_bound));
  }
  finish(metrics);
  return metrics;
}

IterationMetrics Sampler::collapsed_iteration() {
  const Corpus& corpus = *corpus_;
  const std::uint64_t it = ++iteration_;
  IterationMetrics metrics;
  metrics.iteration = it;

  const auto start = Clock::now();
  const std::size_t num_topics = config_.num_topics;
  const double beta = config_.beta;
  Rng rng(config_.seed, stream_id(StreamTag::collapsed, it, 0));
  std::vector<double> weights(num_topics);
  const auto tokens = corpus.tokens();
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    const std::size_t begin = corpus.doc_begin(d);
    const std::size_t end = begin + corpus.doc_length(d);
    for (std::size_t i = begin; i < end; ++i) {
      const WordId v = tokens[i];
      const TopicId old_topic = state_.z[i];
      state_.m.decrement(d, old_topic);
      state_.n.add(old_topic, v, -1);
      collapsed_weights(state_.n, state_.m.row(d), v, alpha_, beta, weights);
      double total = 0.0;
      for (double w : weights) total += w;
      double u = rng.uniform() * total;
      auto new_topic = static_cast<TopicId>(num_topics - 1);
      for (std::size_t k = 0; k < num_topics; ++k) {
        u -= weights[k];
        if (u < 0.0) {
          new_topic = static_cast<TopicId>(k);
          break;
        }
      }
      state_.m.increment(d, new_topic);
      state_.n.add(new_topic, v, 1);
      state_.z[i] = new_topic;
    }
  }
  metrics.z_phase_seconds = seconds_since(start);
  finish(metrics);
  return metrics;
}

void Sampler::finish(IterationMetrics& metrics) {
  check_conservation(*corpus_, state_);
  metrics.log_joint = log_joint(*corpus_, state_, alpha_, config_.beta);
}

}  // namespace urnlda
