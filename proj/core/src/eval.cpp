#include "urnlda/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace urnlda {

namespace {

// Sums multiplicity * lgamma(c + offset) in ascending c. Hash-row iteration
// order depends on insertion history, so summing through a histogram keeps
// the result bit-identical for equal counts.
class CountHistogram {
 public:
  void add(std::uint64_t c) {
    if (c >= hist_.size()) hist_.resize(c + 1, 0);
    ++hist_[c];
  }
  double sum_lgamma(double offset) const {
    double s = 0.0;
    for (std::size_t c = 1; c < hist_.size(); ++c) {
      if (hist_[c] != 0) s += static_cast<double>(hist_[c]) * std::lgamma(static_cast<double>(c) + offset);
    }
    return s;
  }
  std::uint64_t nonzero() const {
    return std::accumulate(hist_.begin() + (hist_.empty() ? 0 : 1), hist_.end(), std::uint64_t{0});
  }

 private:
  std::vector<std::uint64_t> hist_;
};

}  // namespace

double log_joint(const Corpus& corpus, const TopicState& state, std::span<const double> alpha,
                 double beta) {
  const std::size_t num_topics = state.num_topics;
  const auto vocab = static_cast<double>(corpus.vocab_size());
  CountHistogram word_counts;
  double word_part = 0.0;
  for (TopicId k = 0; k < num_topics; ++k) {
    for (const auto& entry : state.n.row(k)) word_counts.add(entry.second);
    word_part += std::lgamma(vocab * beta) -
                 std::lgamma(static_cast<double>(state.n.total(k)) + vocab * beta);
  }
  word_part += word_counts.sum_lgamma(beta) -
               static_cast<double>(word_counts.nonzero()) * std::lgamma(beta);

  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  const double lg_alpha_sum = std::lgamma(alpha_sum);
  const bool symmetric = std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha[0]; });
  double doc_part = 0.0;
  CountHistogram doc_counts;
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    const auto row = state.m.row(d);
    if (symmetric) {
      for (TopicId k : row.nonzero) doc_counts.add(row.counts[k]);
    } else {
      for (TopicId k = 0; k < num_topics; ++k) {
        if (row.counts[k] != 0) doc_part += std::lgamma(row.counts[k] + alpha[k]) - std::lgamma(alpha[k]);
      }
    }
    doc_part += lg_alpha_sum - std::lgamma(static_cast<double>(corpus.doc_length(d)) + alpha_sum);
  }
  if (symmetric && !alpha.empty()) {
    doc_part += doc_counts.sum_lgamma(alpha[0]) -
                static_cast<double>(doc_counts.nonzero()) * std::lgamma(alpha[0]);
  }
  return word_part + doc_part;
}

double log_joint(const Corpus& corpus, const TopicState& state, double alpha, double beta) {
  const std::vector<double> a(state.num_topics, alpha);
  return log_joint(corpus, state, a, beta);
}

double log_joint(const Corpus& corpus, std::span<const TopicId> z, std::size_t num_topics,
                 double alpha, double beta) {
  auto counts = recount(corpus, z, num_topics);
  TopicState state{num_topics, {z.begin(), z.end()}, std::move(counts.m), std::move(counts.n)};
  return log_joint(corpus, state, alpha, beta);
}

namespace {

template <typename Score>
std::vector<WordId> top_of_row(std::vector<std::pair<WordId, Score>> entries, std::size_t m,
                               std::size_t vocab) {
  // Zero entries are implicit; pad with them in ascending id order if needed.
  m = std::min(m, vocab);
  auto better = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t take = std::min(m, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(take),
                    entries.end(), better);
  std::vector<WordId> out;
  out.reserve(m);
  for (std::size_t i = 0; i < take; ++i) out.push_back(entries[i].first);
  if (out.size() < m) {
    std::vector<bool> present(vocab, false);
    for (const auto& e : entries) present[e.first] = true;
    for (WordId v = 0; v < vocab && out.size() < m; ++v) {
      if (!present[v]) out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<WordId>> top_words(const TopicWordCounts& n, std::size_t m) {
  std::vector<std::vector<WordId>> out;
  for (TopicId k = 0; k < n.num_topics(); ++k) {
    std::vector<std::pair<WordId, std::uint32_t>> entries(n.row(k).begin(), n.row(k).end());
    out.push_back(top_of_row(std::move(entries), m, n.vocab_size()));
  }
  return out;
}

std::vector<std::vector<WordId>> top_words(const SparsePhi& phi, std::size_t m) {
  std::vector<std::vector<std::pair<WordId, double>>> rows(phi.num_topics());
  for (WordId v = 0; v < phi.vocab_size(); ++v) {
    const auto col = phi.column(v);
    for (std::size_t j = 0; j < col.size(); ++j) rows[col.topics[j]].emplace_back(v, col.values[j]);
  }
  std::vector<std::vector<WordId>> out;
  for (auto& row : rows) out.push_back(top_of_row(std::move(row), m, phi.vocab_size()));
  return out;
}

std::vector<double> topic_coherence(const TopicWordCounts& n, const Corpus& corpus, std::size_t m) {
  if (m < 2) throw std::invalid_argument("topic_coherence: M must be at least 2");
  // Sorted document list per word.
  std::vector<std::vector<DocId>> docs_of(corpus.vocab_size());
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    for (WordId v : corpus.doc(d)) {
      if (docs_of[v].empty() || docs_of[v].back() != d) docs_of[v].push_back(d);
    }
  }
  auto co_docs = [&](WordId a, WordId b) {
    const auto& x = docs_of[a];
    const auto& y = docs_of[b];
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t both = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] < y[j]) {
        ++i;
      } else if (y[j] < x[i]) {
        ++j;
      } else {
        ++both;
        ++i;
        ++j;
      }
    }
    return both;
  };

  const auto tops = top_words(n, m);
  std::vector<double> scores;
  scores.reserve(tops.size());
  for (TopicId k = 0; k < tops.size(); ++k) {
    std::vector<WordId> words;
    for (WordId v : tops[k]) {
      if (n.count(k, v) > 0) words.push_back(v);
    }
    double score = 0.0;
    for (std::size_t a = 1; a < words.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const auto df = static_cast<double>(docs_of[words[b]].size());
        if (df == 0.0) continue;
        score += std::log((static_cast<double>(co_docs(words[a], words[b])) + 1.0) / df);
      }
    }
    scores.push_back(score);
  }
  return scores;
}

TraceSeries::TraceSeries(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw std::invalid_argument("trace: non-finite value");
  }
}

double ess(const TraceSeries& trace) { return ess(trace.values()); }

double ess(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 10) throw std::invalid_argument("ess: trace needs at least 10 values");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = values[i] - mean;
  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += centered[i] * centered[i + lag];
    return s / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  const auto length = static_cast<double>(n);
  if (!(c0 > 0.0)) return length;

  // tau = -1 + 2 * sum of positive pair sums (rho_2m + rho_2m+1).
  double pair_sum_total = 0.0;
  for (std::size_t m = 0; 2 * m + 1 < n; ++m) {
    const double pair = (autocov(2 * m) + autocov(2 * m + 1)) / c0;
    if (!(pair > 0.0)) break;
    pair_sum_total += pair;
  }
  const double tau = -1.0 + 2.0 * pair_sum_total;
  if (!(tau > 1.0)) return length;
  return length / tau;
}

}  // namespace urnlda
