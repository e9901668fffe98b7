#include "urnlda/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "urnlda/alias_table.hpp"
#include "urnlda/distributions.hpp"
#include "urnlda/error.hpp"
#include "urnlda/rng.hpp"

namespace urnlda {

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  std::unordered_set<std::string> seen;
  seen.reserve(words_.size());
  for (const auto& w : words_) {
    if (!seen.insert(w).second) throw std::invalid_argument("vocabulary: duplicate word '" + w + "'");
  }
}

Vocabulary Vocabulary::numbered(std::size_t size) {
  std::vector<std::string> words;
  words.reserve(size);
  for (std::size_t v = 0; v < size; ++v) words.push_back("w" + std::to_string(v));
  return Vocabulary(std::move(words));
}

Corpus::Corpus(Vocabulary vocab, std::vector<std::vector<WordId>> docs) : vocab_(std::move(vocab)) {
  std::size_t total = 0;
  for (const auto& d : docs) total += d.size();
  tokens_.reserve(total);
  offsets_.reserve(docs.size() + 1);
  for (const auto& d : docs) {
    for (WordId v : d) {
      if (v >= vocab_.size()) {
        throw RangeError("corpus: word id " + std::to_string(v) + " >= vocabulary size " +
                         std::to_string(vocab_.size()));
      }
      tokens_.push_back(v);
    }
    offsets_.push_back(tokens_.size());
  }
}

std::vector<std::uint64_t> Corpus::word_frequencies() const {
  std::vector<std::uint64_t> freq(vocab_size(), 0);
  for (WordId v : tokens_) ++freq[v];
  return freq;
}

std::uint64_t Corpus::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(vocab_size());
  for (std::size_t o : offsets_) mix(o);
  for (WordId v : tokens_) mix(v);
  return h;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::uint64_t parse_header_value(std::istream& in, std::size_t& line_no, const char* name) {
  std::string line;
  if (!next_content_line(in, line, line_no)) {
    throw ParseError(std::string("missing header value ") + name, line_no + 1);
  }
  std::istringstream ss(line);
  long long value = -1;
  std::string rest;
  if (!(ss >> value) || value < 0 || (ss >> rest)) {
    throw ParseError(std::string("malformed header value ") + name + ": '" + line + "'", line_no);
  }
  return static_cast<std::uint64_t>(value);
}

struct Triple {
  std::uint64_t doc;
  std::uint64_t word;
  std::uint64_t count;
};

}  // namespace

Corpus read_uci_bow(std::istream& docword, std::istream* vocab, std::uint64_t rare_word_limit) {
  std::size_t line_no = 0;
  const std::uint64_t num_docs = parse_header_value(docword, line_no, "D");
  const std::uint64_t num_words = parse_header_value(docword, line_no, "W");
  const std::uint64_t nnz = parse_header_value(docword, line_no, "NNZ");

  std::vector<Triple> triples;
  triples.reserve(nnz);
  std::vector<std::uint64_t> freq(num_words, 0);
  std::string line;
  while (next_content_line(docword, line, line_no)) {
    std::istringstream ss(line);
    long long d = 0;
    long long w = 0;
    long long c = 0;
    std::string rest;
    if (!(ss >> d >> w >> c) || (ss >> rest) || c < 0) {
      throw ParseError("malformed triple '" + line + "'", line_no);
    }
    if (d < 1 || static_cast<std::uint64_t>(d) > num_docs) {
      throw RangeError("line " + std::to_string(line_no) + ": docId " + std::to_string(d) +
                       " outside 1.." + std::to_string(num_docs));
    }
    if (w < 1 || static_cast<std::uint64_t>(w) > num_words) {
      throw RangeError("line " + std::to_string(line_no) + ": wordId " + std::to_string(w) +
                       " outside 1.." + std::to_string(num_words));
    }
    triples.push_back({static_cast<std::uint64_t>(d - 1), static_cast<std::uint64_t>(w - 1),
                       static_cast<std::uint64_t>(c)});
    freq[w - 1] += static_cast<std::uint64_t>(c);
  }
  if (triples.size() != nnz) {
    throw ParseError("header declares " + std::to_string(nnz) + " triples, found " +
                         std::to_string(triples.size()),
                     line_no);
  }

  std::vector<std::string> words;
  if (vocab != nullptr) {
    std::size_t vocab_line = 0;
    words.reserve(num_words);
    while (words.size() < num_words && std::getline(*vocab, line)) {
      ++vocab_line;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      words.push_back(line);
    }
    if (words.size() < num_words) {
      throw ParseError("vocabulary has " + std::to_string(words.size()) + " words, header declares " +
                           std::to_string(num_words),
                       vocab_line);
    }
  } else {
    words = Vocabulary::numbered(num_words).words();
  }

  // Frequency < limit is dropped, so a limit of 10 keeps words seen exactly 10 times.
  constexpr WordId kDropped = ~WordId{0};
  std::vector<WordId> remap(num_words, kDropped);
  std::vector<std::string> kept;
  for (std::uint64_t w = 0; w < num_words; ++w) {
    if (freq[w] >= rare_word_limit) {
      remap[w] = static_cast<WordId>(kept.size());
      kept.push_back(std::move(words[w]));
    }
  }
  if (kept.empty()) {
    throw EmptyVocabularyError("rare word limit " + std::to_string(rare_word_limit) +
                               " removes every word type");
  }

  std::vector<std::vector<WordId>> docs(num_docs);
  for (const Triple& t : triples) {
    const WordId v = remap[t.word];
    if (v == kDropped) continue;
    docs[t.doc].insert(docs[t.doc].end(), t.count, v);
  }
  return Corpus(Vocabulary(std::move(kept)), std::move(docs));
}

Corpus read_uci_bow_files(const std::string& docword_path, const std::string& vocab_path,
                          std::uint64_t rare_word_limit) {
  std::ifstream docword(docword_path);
  if (!docword) throw IoError("cannot open " + docword_path);
  if (vocab_path.empty()) return read_uci_bow(docword, nullptr, rare_word_limit);
  std::ifstream vocab(vocab_path);
  if (!vocab) throw IoError("cannot open " + vocab_path);
  return read_uci_bow(docword, &vocab, rare_word_limit);
}

void write_uci_bow(const Corpus& corpus, std::ostream& docword, std::ostream& vocab) {
  std::vector<std::vector<std::pair<WordId, std::uint64_t>>> rows(corpus.num_docs());
  std::size_t nnz = 0;
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    std::map<WordId, std::uint64_t> counts;
    for (WordId v : corpus.doc(d)) ++counts[v];
    rows[d].assign(counts.begin(), counts.end());
    nnz += rows[d].size();
  }
  docword << corpus.num_docs() << '\n' << corpus.vocab_size() << '\n' << nnz << '\n';
  for (DocId d = 0; d < corpus.num_docs(); ++d) {
    for (const auto& [v, c] : rows[d]) docword << d + 1 << ' ' << v + 1 << ' ' << c << '\n';
  }
  for (const auto& w : corpus.vocab().words()) vocab << w << '\n';
}

SyntheticCorpus synth_corpus(std::size_t num_topics, std::size_t vocab_size, std::size_t num_docs,
                             std::size_t doc_length, double alpha, double beta,
                             std::uint64_t seed) {
  if (num_topics == 0 || vocab_size == 0 || num_docs == 0 || doc_length == 0) {
    throw std::invalid_argument("synth_corpus: counts must be positive");
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("synth_corpus: alpha and beta must be positive");
  }
  SyntheticCorpus out;
  Rng rng(seed, stream_id(StreamTag::synth, 0, 0));

  const std::vector<double> beta_vec(vocab_size, beta);
  std::vector<AliasTable> word_tables;
  word_tables.reserve(num_topics);
  for (std::size_t k = 0; k < num_topics; ++k) {
    out.phi.push_back(dirichlet_sample(beta_vec, rng));
    word_tables.emplace_back(out.phi.back());
  }

  const std::vector<double> alpha_vec(num_topics, alpha);
  std::vector<std::vector<WordId>> docs(num_docs);
  out.topics.reserve(num_docs * doc_length);
  for (std::size_t d = 0; d < num_docs; ++d) {
    out.theta.push_back(num_topics == 1 ? std::vector<double>{1.0} : dirichlet_sample(alpha_vec, rng));
    const AliasTable topic_table(out.theta.back());
    docs[d].reserve(doc_length);
    for (std::size_t i = 0; i < doc_length; ++i) {
      const auto k = static_cast<TopicId>(topic_table.sample(rng));
      docs[d].push_back(static_cast<WordId>(word_tables[k].sample(rng)));
      out.topics.push_back(k);
    }
  }
  out.corpus = Corpus(Vocabulary::numbered(vocab_size), std::move(docs));
  return out;
}

}  // namespace urnlda
