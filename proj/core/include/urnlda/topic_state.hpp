#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "urnlda/corpus.hpp"

namespace urnlda {

/// Read-only view of one document's topic counts: the dense row plus the
/// list of topics with a nonzero count (in no particular order).
struct DocTopicRow {
  std::span<const std::uint32_t> counts;
  std::span<const TopicId> nonzero;
};

/// m: D x K document-topic counts. Dense rows for O(1) lookup plus a
/// per-document list of nonzero topics.
class DocTopicCounts {
 public:
  DocTopicCounts() = default;
  DocTopicCounts(std::size_t num_docs, std::size_t num_topics);

  std::size_t num_docs() const noexcept { return nonzero_.size(); }
  std::size_t num_topics() const noexcept { return num_topics_; }

  std::uint32_t count(DocId d, TopicId k) const { return counts_[d * num_topics_ + k]; }
  DocTopicRow row(DocId d) const {
    return {{counts_.data() + d * num_topics_, num_topics_}, nonzero_[d]};
  }

  void increment(DocId d, TopicId k);
  /// The count must be positive.
  void decrement(DocId d, TopicId k);
  /// Sets count(d, k) += delta, keeping the nonzero list in step.
  void add(DocId d, TopicId k, std::int64_t delta);

  /// Compares counts only; nonzero-list order is history dependent.
  friend bool operator==(const DocTopicCounts& a, const DocTopicCounts& b) {
    return a.num_topics_ == b.num_topics_ && a.counts_ == b.counts_;
  }

 private:
  std::size_t num_topics_ = 0;
  std::vector<std::uint32_t> counts_;
  std::vector<std::vector<TopicId>> nonzero_;
};

/// n: K x V topic-word counts. Sparse hash rows plus dense row totals.
class TopicWordCounts {
 public:
  using Row = std::unordered_map<WordId, std::uint32_t>;

  TopicWordCounts() = default;
  TopicWordCounts(std::size_t num_topics, std::size_t vocab_size);

  std::size_t num_topics() const noexcept { return rows_.size(); }
  std::size_t vocab_size() const noexcept { return vocab_size_; }

  std::uint32_t count(TopicId k, WordId v) const {
    const auto& row = rows_[k];
    auto it = row.find(v);
    return it == row.end() ? 0 : it->second;
  }
  std::uint64_t total(TopicId k) const { return totals_[k]; }
  const Row& row(TopicId k) const { return rows_[k]; }
  std::size_t nnz() const noexcept;

  /// Throws ConsistencyError if the count would go negative.
  void add(TopicId k, WordId v, std::int64_t delta);

  friend bool operator==(const TopicWordCounts&, const TopicWordCounts&) = default;

 private:
  std::size_t vocab_size_ = 0;
  std::vector<Row> rows_;
  std::vector<std::uint64_t> totals_;
};

/// Topic indicators z (one per token, parallel to Corpus::tokens()) plus
/// the sufficient statistics they imply.
struct TopicState {
  std::size_t num_topics = 0;
  std::vector<TopicId> z;
  DocTopicCounts m;
  TopicWordCounts n;
};

/// Uniform random topic per token, deterministic in seed. Throws DomainError if K = 0.
TopicState init_state(const Corpus& corpus, std::size_t num_topics, std::uint64_t seed);

struct Counts {
  DocTopicCounts m;
  TopicWordCounts n;
};

/// Tallies (m, n) from scratch. Throws RangeError on topic ids >= K and
/// std::invalid_argument if z is not parallel to the corpus tokens.
Counts recount(const Corpus& corpus, std::span<const TopicId> z, std::size_t num_topics);

/// Throws ConsistencyError unless rows of m sum to document lengths, n rows
/// sum to their totals, and the totals sum to N.
void check_conservation(const Corpus& corpus, const TopicState& state);

}  // namespace urnlda
