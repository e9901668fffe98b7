#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "urnlda/alias_table.hpp"
#include "urnlda/corpus.hpp"
#include "urnlda/rng.hpp"

namespace urnlda {

/// Dense K x V word-topic probabilities, row-major.
struct DensePhi {
  std::size_t num_topics = 0;
  std::size_t vocab_size = 0;
  std::vector<double> values;

  double operator()(TopicId k, WordId v) const { return values[k * vocab_size + v]; }
  std::span<const double> row(TopicId k) const { return {values.data() + k * vocab_size, vocab_size}; }
};

struct PhiColumn {
  std::span<const TopicId> topics;  // ascending
  std::span<const double> values;   // all > 0

  std::size_t size() const noexcept { return topics.size(); }
};

/// Column-indexed sparse Phi. Only strictly positive entries are stored.
///
/// Long columns (at least max(8, K/8) entries) also get a dense length-K
/// copy so that value(k, v) is a single array read; short columns answer
/// by binary search over at most K/8 entries. The dense copies cost at
/// most 8 * nnz doubles.
class SparsePhi {
 public:
  using RowEntries = std::vector<std::pair<WordId, double>>;

  SparsePhi() = default;

  /// rows[k] lists (word, probability) pairs of row k, any order, no
  /// duplicate words. Non-positive values are dropped.
  static SparsePhi from_rows(std::size_t num_topics, std::size_t vocab_size,
                             const std::vector<RowEntries>& rows);
  static SparsePhi from_dense(const DensePhi& dense);

  std::size_t num_topics() const noexcept { return num_topics_; }
  std::size_t vocab_size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t nnz() const noexcept { return topics_.size(); }

  PhiColumn column(WordId v) const {
    const std::size_t b = offsets_[v];
    const std::size_t e = offsets_[v + 1];
    return {{topics_.data() + b, e - b}, {values_.data() + b, e - b}};
  }

  /// phi[k][v]; exactly 0 for structurally absent entries.
  double value(TopicId k, WordId v) const;

  /// Sum of each row, for normalization checks.
  std::vector<double> row_sums() const;

 private:
  std::size_t num_topics_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<TopicId> topics_;
  std::vector<double> values_;
  std::vector<std::int64_t> dense_offset_;  // -1 for short columns
  std::vector<double> dense_values_;

  void build_dense_index();
};

/// Per-word alias tables over the nonzero entries of Phi's column v with
/// weights phi[k][v] * alpha[k], and sigma_a(v) = sum of those weights.
class ATableSet {
 public:
  ATableSet() = default;

  double sigma_a(WordId v) const { return sigma_a_[v]; }
  bool empty(WordId v) const { return tables_[v].empty(); }
  const AliasTable& table(WordId v) const { return tables_[v]; }
  std::size_t vocab_size() const noexcept { return tables_.size(); }

  /// Topic drawn from column v's table. The column must be non-empty.
  TopicId sample(const SparsePhi& phi, WordId v, Rng& rng) const {
    return phi.column(v).topics[tables_[v].sample(rng)];
  }

  friend ATableSet rebuild_a_tables(const SparsePhi& phi, std::span<const double> alpha,
                                    std::size_t workers);

 private:
  std::vector<AliasTable> tables_;
  std::vector<double> sigma_a_;
};

/// O(nnz(Phi)) build, parallel over words. alpha has one entry per topic.
ATableSet rebuild_a_tables(const SparsePhi& phi, std::span<const double> alpha,
                           std::size_t workers = 1);

}  // namespace urnlda
