#include "urnlda/topic_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "urnlda/error.hpp"
#include "urnlda/rng.hpp"

namespace urnlda {

DocTopicCounts::DocTopicCounts(std::size_t num_docs, std::size_t num_topics)
    : num_topics_(num_topics), counts_(num_docs * num_topics, 0), nonzero_(num_docs) {}

void DocTopicCounts::increment(DocId d, TopicId k) {
  if (counts_[d * num_topics_ + k]++ == 0) nonzero_[d].push_back(k);
}

void DocTopicCounts::decrement(DocId d, TopicId k) {
  auto& c = counts_[d * num_topics_ + k];
  if (c == 0) throw ConsistencyError("m: decrement of a zero count");
  if (--c == 0) {
    auto& list = nonzero_[d];
    auto it = std::find(list.begin(), list.end(), k);
    *it = list.back();
    list.pop_back();
  }
}

void DocTopicCounts::add(DocId d, TopicId k, std::int64_t delta) {
  for (; delta > 0; --delta) increment(d, k);
  for (; delta < 0; ++delta) decrement(d, k);
}

TopicWordCounts::TopicWordCounts(std::size_t num_topics, std::size_t vocab_size)
    : vocab_size_(vocab_size), rows_(num_topics), totals_(num_topics, 0) {}

std::size_t TopicWordCounts::nnz() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

void TopicWordCounts::add(TopicId k, WordId v, std::int64_t delta) {
  if (delta == 0) return;
  auto& row = rows_[k];
  auto it = row.find(v);
  const std::int64_t current = it == row.end() ? 0 : it->second;
  const std::int64_t next = current + delta;
  if (next < 0) throw ConsistencyError("n: count would become negative");
  if (next == 0) {
    row.erase(it);
  } else if (it == row.end()) {
    row.emplace(v, static_cast<std::uint32_t>(next));
  } else {
    it->second = static_cast<std::uint32_t>(next);
  }
  totals_[k] = static_cast<std::uint64_t>(static_cast<std::int64_t>(totals_[k]) + delta);
}

TopicState init_state(const Corpus& corpus, std::size_t num_topics, std::uint64_t seed) {
  if (num_topics == 0) throw DomainError("init_state: K must be at least 1");
  TopicState state;
  state.num_topics = num_topics;
  state.z.resize(corpus.num_tokens());
  Rng rng(seed, stream_id(StreamTag::init, 0, 0));
  for (auto& k : state.z) k = static_cast<TopicId>(rng.below(num_topics));
  auto counts = recount(corpus, state.z, num_topics);
  state.m = std::move(counts.m);
  state.n = std::move(counts.n);
  return state;
}

Counts recount(const Corpus& corpus, std::span<const TopicId> z, std::size_t num_topics) {
  if (z.size() != corpus.num_tokens()) {
    throw std::invalid_argument("recount: z has " + std::to_string(z.size()) + " entries, corpus has " +
                                std::to_string(corpus.num_tokens()) + " tokens");
  }
  Counts c{DocTopicCounts(corpus.num_docs(), num_topics),
           TopicWordCounts(num_topics, corpus.vocab_size())};
  const auto tokens = corpus.tokens();
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    for (std::size_t i = corpus.doc_begin(d); i < corpus.doc_begin(d) + corpus.doc_length(d); ++i) {
      if (z[i] >= num_topics) {
        throw RangeError("recount: topic id " + std::to_string(z[i]) + " >= K = " +
                         std::to_string(num_topics));
      }
      c.m.increment(d, z[i]);
      c.n.add(z[i], tokens[i], 1);
    }
  }
  return c;
}

void check_conservation(const Corpus& corpus, const TopicState& state) {
  const std::size_t num_topics = state.num_topics;
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    std::uint64_t sum = 0;
    for (TopicId k : state.m.row(d).nonzero) sum += state.m.count(d, k);
    if (sum != corpus.doc_length(d)) {
      throw ConsistencyError("m row " + std::to_string(d) + " sums to " + std::to_string(sum) +
                             ", document length is " + std::to_string(corpus.doc_length(d)));
    }
  }
  std::uint64_t grand = 0;
  for (TopicId k = 0; k < num_topics; ++k) {
    std::uint64_t sum = 0;
    for (const auto& [v, c] : state.n.row(k)) sum += c;
    if (sum != state.n.total(k)) {
      throw ConsistencyError("n row " + std::to_string(k) + " disagrees with its total");
    }
    grand += sum;
  }
  if (grand != corpus.num_tokens()) {
    throw ConsistencyError("n sums to " + std::to_string(grand) + ", corpus has " +
                           std::to_string(corpus.num_tokens()) + " tokens");
  }
}

}  // namespace urnlda
