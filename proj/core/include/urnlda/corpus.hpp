#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace urnlda {

using WordId = std::uint32_t;
using DocId = std::uint32_t;
using TopicId = std::uint32_t;

class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws std::invalid_argument on duplicate words.
  explicit Vocabulary(std::vector<std::string> words);

  /// Words "w0", "w1", ... for corpora without a vocabulary file.
  static Vocabulary numbered(std::size_t size);

  std::size_t size() const noexcept { return words_.size(); }
  const std::string& word(WordId v) const { return words_.at(v); }
  const std::vector<std::string>& words() const noexcept { return words_; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> words_;
};

/// A document's tokens: one word id per token occurrence.
using Document = std::span<const WordId>;

/// Immutable tokenized corpus. Tokens of all documents are stored back to
/// back; token index i is the position in that flat array.
class Corpus {
 public:
  Corpus() = default;
  /// Throws RangeError if any token id is >= vocab.size().
  Corpus(Vocabulary vocab, std::vector<std::vector<WordId>> docs);

  std::size_t num_docs() const noexcept { return offsets_.size() - 1; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  std::size_t num_tokens() const noexcept { return tokens_.size(); }

  const Vocabulary& vocab() const noexcept { return vocab_; }
  Document doc(DocId d) const {
    return {tokens_.data() + offsets_[d], offsets_[d + 1] - offsets_[d]};
  }
  std::size_t doc_begin(DocId d) const noexcept { return offsets_[d]; }
  std::size_t doc_length(DocId d) const noexcept { return offsets_[d + 1] - offsets_[d]; }
  std::span<const WordId> tokens() const noexcept { return tokens_; }

  /// Corpus-wide frequency of every word type.
  std::vector<std::uint64_t> word_frequencies() const;

  /// FNV-1a over the document layout and token ids.
  std::uint64_t content_hash() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  Vocabulary vocab_;
  std::vector<WordId> tokens_;
  std::vector<std::size_t> offsets_{0};
};

/// Reads the UCI bag-of-words format: header lines D, W, NNZ, then
/// 1-indexed `docId wordId count` triples. Words with corpus frequency
/// below rare_word_limit are dropped and the vocabulary is re-indexed
/// densely; documents emptied by the filter are kept.
/// If vocab is null, words are named w0..w{W-1}.
/// Throws ParseError, RangeError, or EmptyVocabularyError.
Corpus read_uci_bow(std::istream& docword, std::istream* vocab, std::uint64_t rare_word_limit);
Corpus read_uci_bow_files(const std::string& docword_path, const std::string& vocab_path,
                          std::uint64_t rare_word_limit);

/// Writes docword triples sorted by (doc, word) plus one vocabulary word per line.
void write_uci_bow(const Corpus& corpus, std::ostream& docword, std::ostream& vocab);

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<TopicId> topics;  // ground-truth topic per token
  std::vector<std::vector<double>> phi;    // K x V
  std::vector<std::vector<double>> theta;  // D x K
};

/// Samples from the LDA generative process with symmetric priors.
/// Deterministic in seed. Throws std::invalid_argument on zero counts or
/// non-positive priors.
SyntheticCorpus synth_corpus(std::size_t num_topics, std::size_t vocab_size, std::size_t num_docs,
                             std::size_t doc_length, double alpha, double beta,
                             std::uint64_t seed);

}  // namespace urnlda
