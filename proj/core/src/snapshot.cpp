#include "urnlda/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "urnlda/error.hpp"

namespace urnlda {

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out.precision(17);
  return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot read " + p.string());
  return in;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Fn>
void read_triplets(const std::filesystem::path& p, Fn&& fn) {
  auto in = open_in(p);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream ss(line);
    long long a = -1;
    long long b = -1;
    long long c = -1;
    std::string rest;
    if (!(ss >> a >> b >> c) || (ss >> rest) || a < 0 || b < 0 || c <= 0) {
      throw ParseError(p.filename().string() + ": malformed triplet '" + line + "'", line_no);
    }
    fn(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), c, line_no);
  }
}

}  // namespace

void write_snapshot(const Snapshot& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "manifest.txt");
    out << "K = " << s.num_topics << '\n'
        << "V = " << s.vocab_size << '\n'
        << "D = " << s.num_docs << '\n'
        << "alpha = " << s.alpha << '\n'
        << "beta = " << s.beta << '\n'
        << "iteration = " << s.iteration << '\n'
        << "seed = " << s.seed << '\n';
  }
  {
    auto out = open_out(dir / "n.txt");
    for (TopicId k = 0; k < s.n.num_topics(); ++k) {
      std::vector<std::pair<WordId, std::uint32_t>> row(s.n.row(k).begin(), s.n.row(k).end());
      std::sort(row.begin(), row.end());
      for (const auto& [v, c] : row) out << k << ' ' << v << ' ' << c << '\n';
    }
  }
  {
    auto out = open_out(dir / "m.txt");
    for (DocId d = 0; d < s.m.num_docs(); ++d) {
      for (TopicId k = 0; k < s.m.num_topics(); ++k) {
        if (const auto c = s.m.count(d, k); c > 0) out << d << ' ' << k << ' ' << c << '\n';
      }
    }
  }
}

Snapshot read_snapshot(const std::filesystem::path& dir) {
  Snapshot s;
  std::map<std::string, std::string> kv;
  {
    auto in = open_in(dir / "manifest.txt");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("manifest: expected key = value", line_no);
      kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(std::string("manifest: missing key ") + key, 0);
    return it->second;
  };
  try {
    s.num_topics = std::stoull(get("K"));
    s.vocab_size = std::stoull(get("V"));
    s.num_docs = std::stoull(get("D"));
    s.alpha = std::stod(get("alpha"));
    s.beta = std::stod(get("beta"));
    s.iteration = std::stoull(get("iteration"));
    s.seed = std::stoull(get("seed"));
  } catch (const std::logic_error&) {
    throw ParseError("manifest: non-numeric value", 0);
  }

  s.n = TopicWordCounts(s.num_topics, s.vocab_size);
  read_triplets(dir / "n.txt", [&](std::uint64_t k, std::uint64_t v, long long c, std::size_t line) {
    if (k >= s.num_topics || v >= s.vocab_size) {
      throw RangeError("n.txt line " + std::to_string(line) + ": id out of range");
    }
    s.n.add(static_cast<TopicId>(k), static_cast<WordId>(v), c);
  });
  s.m = DocTopicCounts(s.num_docs, s.num_topics);
  read_triplets(dir / "m.txt", [&](std::uint64_t d, std::uint64_t k, long long c, std::size_t line) {
    if (d >= s.num_docs || k >= s.num_topics) {
      throw RangeError("m.txt line " + std::to_string(line) + ": id out of range");
    }
    s.m.add(static_cast<DocId>(d), static_cast<TopicId>(k), c);
  });
  return s;
}

}  // namespace urnlda
