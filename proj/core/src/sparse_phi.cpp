#include "urnlda/sparse_phi.hpp"

#include <algorithm>
#include <stdexcept>

#include "urnlda/error.hpp"
#include "urnlda/parallel.hpp"

namespace urnlda {

SparsePhi SparsePhi::from_rows(std::size_t num_topics, std::size_t vocab_size,
                               const std::vector<RowEntries>& rows) {
  if (rows.size() != num_topics) throw std::invalid_argument("SparsePhi: wrong number of rows");
  SparsePhi phi;
  phi.num_topics_ = num_topics;
  phi.offsets_.assign(vocab_size + 1, 0);
  for (const auto& row : rows) {
    for (const auto& [v, p] : row) {
      if (v >= vocab_size) throw RangeError("SparsePhi: word id out of range");
      if (p > 0.0) ++phi.offsets_[v + 1];
    }
  }
  for (std::size_t v = 0; v < vocab_size; ++v) phi.offsets_[v + 1] += phi.offsets_[v];
  phi.topics_.resize(phi.offsets_.back());
  phi.values_.resize(phi.offsets_.back());
  // Visiting rows in topic order leaves every column sorted by topic.
  std::vector<std::size_t> cursor(phi.offsets_.begin(), phi.offsets_.end() - 1);
  for (TopicId k = 0; k < num_topics; ++k) {
    for (const auto& [v, p] : rows[k]) {
      if (!(p > 0.0)) continue;
      const std::size_t at = cursor[v]++;
      phi.topics_[at] = k;
      phi.values_[at] = p;
    }
  }
  phi.build_dense_index();
  return phi;
}

SparsePhi SparsePhi::from_dense(const DensePhi& dense) {
  SparsePhi phi;
  phi.num_topics_ = dense.num_topics;
  phi.offsets_.assign(dense.vocab_size + 1, 0);
  for (std::size_t i = 0; i < dense.values.size(); ++i) {
    if (dense.values[i] > 0.0) ++phi.offsets_[i % dense.vocab_size + 1];
  }
  for (std::size_t v = 0; v < dense.vocab_size; ++v) phi.offsets_[v + 1] += phi.offsets_[v];
  phi.topics_.resize(phi.offsets_.back());
  phi.values_.resize(phi.offsets_.back());
  std::vector<std::size_t> cursor(phi.offsets_.begin(), phi.offsets_.end() - 1);
  for (TopicId k = 0; k < dense.num_topics; ++k) {
    const auto row = dense.row(k);
    for (WordId v = 0; v < dense.vocab_size; ++v) {
      if (!(row[v] > 0.0)) continue;
      const std::size_t at = cursor[v]++;
      phi.topics_[at] = k;
      phi.values_[at] = row[v];
    }
  }
  phi.build_dense_index();
  return phi;
}

void SparsePhi::build_dense_index() {
  const std::size_t threshold = std::max<std::size_t>(8, num_topics_ / 8);
  const std::size_t vocab = vocab_size();
  dense_offset_.assign(vocab, -1);
  std::size_t dense_columns = 0;
  for (std::size_t v = 0; v < vocab; ++v) {
    if (offsets_[v + 1] - offsets_[v] >= threshold) ++dense_columns;
  }
  dense_values_.assign(dense_columns * num_topics_, 0.0);
  std::size_t next = 0;
  for (std::size_t v = 0; v < vocab; ++v) {
    if (offsets_[v + 1] - offsets_[v] < threshold) continue;
    dense_offset_[v] = static_cast<std::int64_t>(next);
    for (std::size_t j = offsets_[v]; j < offsets_[v + 1]; ++j) {
      dense_values_[next + topics_[j]] = values_[j];
    }
    next += num_topics_;
  }
}

double SparsePhi::value(TopicId k, WordId v) const {
  if (dense_offset_[v] >= 0) return dense_values_[static_cast<std::size_t>(dense_offset_[v]) + k];
  const auto col = column(v);
  auto it = std::lower_bound(col.topics.begin(), col.topics.end(), k);
  if (it == col.topics.end() || *it != k) return 0.0;
  return col.values[static_cast<std::size_t>(it - col.topics.begin())];
}

std::vector<double> SparsePhi::row_sums() const {
  std::vector<double> sums(num_topics_, 0.0);
  for (std::size_t j = 0; j < topics_.size(); ++j) sums[topics_[j]] += values_[j];
  return sums;
}

ATableSet rebuild_a_tables(const SparsePhi& phi, std::span<const double> alpha,
                           std::size_t workers) {
  if (alpha.size() != phi.num_topics()) {
    throw std::invalid_argument("rebuild_a_tables: alpha needs one entry per topic");
  }
  ATableSet set;
  const std::size_t vocab = phi.vocab_size();
  set.tables_.resize(vocab);
  set.sigma_a_.assign(vocab, 0.0);
  parallel_chunks(workers, vocab, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> weights;
    for (std::size_t v = begin; v < end; ++v) {
      const auto col = phi.column(static_cast<WordId>(v));
      if (col.size() == 0) continue;
      weights.resize(col.size());
      double sigma = 0.0;
      for (std::size_t j = 0; j < col.size(); ++j) {
        weights[j] = col.values[j] * alpha[col.topics[j]];
        sigma += weights[j];
      }
      set.sigma_a_[v] = sigma;
      set.tables_[v] = AliasTable(weights);
    }
  });
  return set;
}

}  // namespace urnlda
