#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "urnlda/rng.hpp"

namespace urnlda {

/// Walker/Vose alias table: O(n) build, O(1) categorical draw.
class AliasTable {
 public:
  AliasTable() = default;

  /// Throws InvalidWeightsError if any weight is negative or non-finite, or
  /// if no weight is positive.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  bool empty() const noexcept { return prob_.empty(); }

  /// One fair-die draw plus one Bernoulli. Throws std::logic_error on an
  /// empty table.
  std::size_t sample(Rng& rng) const;

  /// Probability mass the table assigns to category i, rebuilt from the
  /// prob/alias arrays.
  std::vector<double> reconstructed_probabilities() const;

  std::span<const double> prob() const noexcept { return prob_; }
  std::span<const std::uint32_t> alias() const noexcept { return alias_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace urnlda
