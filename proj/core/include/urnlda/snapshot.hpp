#pragma once

#include <cstdint>
#include <filesystem>

#include "urnlda/topic_state.hpp"

namespace urnlda {

/// Model snapshot on disk: `manifest.txt` (key = value), `n.txt` with
/// `k v count` lines and `m.txt` with `d k count` lines, all ids 0-based.
struct Snapshot {
  std::size_t num_topics = 0;
  std::size_t vocab_size = 0;
  std::size_t num_docs = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t iteration = 0;
  std::uint64_t seed = 0;
  TopicWordCounts n;
  DocTopicCounts m;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

void write_snapshot(const Snapshot& snapshot, const std::filesystem::path& dir);

/// Throws ParseError on malformed files, RangeError on ids outside the
/// manifest's dimensions.
Snapshot read_snapshot(const std::filesystem::path& dir);

}  // namespace urnlda
