#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "urnlda/corpus.hpp"
#include "urnlda/sparse_phi.hpp"
#include "urnlda/topic_state.hpp"

namespace urnlda {

/// Collapsed log p(w, z) with Theta and Phi integrated out, symmetric beta:
///   sum_k [sum_v lgamma(n_kv + beta) - lgamma(n_k + V beta)] + K [lgamma(V beta) - V lgamma(beta)]
/// + sum_d [sum_k lgamma(m_dk + alpha_k) - lgamma(N_d + sum alpha)] + D [lgamma(sum alpha) - sum_k lgamma(alpha_k)]
/// Only nonzero counts are visited; zero entries cancel against the
/// normalizing terms.
double log_joint(const Corpus& corpus, const TopicState& state, std::span<const double> alpha,
                 double beta);
double log_joint(const Corpus& corpus, const TopicState& state, double alpha, double beta);
/// Recounts from z first.
double log_joint(const Corpus& corpus, std::span<const TopicId> z, std::size_t num_topics,
                 double alpha, double beta);

/// Top-M words of every topic by count (or probability), ties broken by
/// ascending word id. M is truncated to V.
std::vector<std::vector<WordId>> top_words(const TopicWordCounts& n, std::size_t m);
std::vector<std::vector<WordId>> top_words(const SparsePhi& phi, std::size_t m);

/// Document-frequency based coherence of each topic's top-M words:
///   C(t) = sum_{m=2..M} sum_{l<m} log((D(v_m, v_l) + 1) / D(v_l))
/// where D(v) counts documents containing v and D(v, v') documents
/// containing both. Words with a zero topic count are not used as top words.
/// Throws std::invalid_argument if M < 2.
std::vector<double> topic_coherence(const TopicWordCounts& n, const Corpus& corpus,
                                    std::size_t m = 10);

/// A finite-valued trace, one value per iteration.
class TraceSeries {
 public:
  /// Throws std::invalid_argument on non-finite values.
  explicit TraceSeries(std::vector<double> values, std::string label = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::string label_;
};

/// Effective sample size with Geyer's initial positive sequence: pair sums
/// of autocorrelations are accumulated until the first non-positive one.
/// The result is clamped to (0, length]; a constant trace has ESS = length.
/// Throws std::invalid_argument for traces shorter than 10.
double ess(const TraceSeries& trace);
double ess(std::span<const double> values);

}  // namespace urnlda
