#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "urnlda/corpus.hpp"
#include "urnlda/error.hpp"
#include "urnlda/eval.hpp"
#include "urnlda/metrics_io.hpp"
#include "urnlda/ppu_check.hpp"
#include "urnlda/sampler.hpp"
#include "urnlda/snapshot.hpp"
#include "urnlda/tdemo.hpp"

namespace urnlda::cli {

namespace fs = std::filesystem;

namespace {

// Boolean flags take no value on the command line; in a config file they
// are written as `key = true` or `key = false`.
const std::set<std::string> kFlagKeys{"deterministic"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw IoError("cannot write " + p.string());
  return f;
}

// Flat `key = value` file, keys in insertion order.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  void write(const fs::path& p) const {
    auto f = open_out(p);
    for (const auto& [k, v] : entries_) f << k << " = " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct CorpusArgs {
  std::string corpus;
  std::string vocab;
  std::uint64_t rare_limit = 10;

  void add_to(CLI::App& app, bool required) {
    auto* c = app.add_option("--corpus", corpus, "UCI docword file");
    if (required) c->required();
    app.add_option("--vocab", vocab, "UCI vocabulary file (one word per line)");
    app.add_option("--rare-limit", rare_limit, "drop words with corpus frequency below this")
        ->capture_default_str();
  }
  Corpus load() const { return read_uci_bow_files(corpus, vocab, rare_limit); }
};

struct TrainArgs {
  CorpusArgs input;
  std::size_t topics = 10;
  double alpha = 0.1;
  double beta = 0.01;
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string sampler = "pu";
  std::size_t cache_limit = PoissonAliasCache::kDefaultLimit;
  std::size_t top = 10;
  bool deterministic = false;
  std::string out;
};

int train(const TrainArgs& a, std::ostream& out) {
  SamplerConfig cfg;
  cfg.variant = *parse_variant(a.sampler);
  cfg.num_topics = a.topics;
  cfg.alpha = {a.alpha};
  cfg.beta = a.beta;
  cfg.iterations = a.iters;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  cfg.cache_limit = a.cache_limit;
  cfg.validate();

  const std::string start = utc_timestamp();
  const Corpus corpus = a.input.load();
  const fs::path dir(a.out);
  fs::create_directories(dir);

  auto metrics = open_out(dir / "metrics.csv");
  auto events = open_out(dir / "events.jsonl");
  metrics << kMetricsCsvHeader << '\n';
  events << nlohmann::json{{"event", "start"},
                           {"time", start},
                           {"sampler", a.sampler},
                           {"topics", a.topics},
                           {"seed", a.seed},
                           {"num_docs", corpus.num_docs()},
                           {"vocab_size", corpus.vocab_size()},
                           {"num_tokens", corpus.num_tokens()}}
                .dump()
         << '\n';

  Sampler sampler(corpus, cfg);
  for (std::size_t it = 0; it < a.iters; ++it) {
    const auto m = sampler.step();
    metrics << metrics_csv_row(m, !a.deterministic) << '\n';
    events << metrics_json(m) << '\n';
  }
  metrics.close();

  Snapshot snap;
  snap.num_topics = a.topics;
  snap.vocab_size = corpus.vocab_size();
  snap.num_docs = corpus.num_docs();
  snap.alpha = a.alpha;
  snap.beta = a.beta;
  snap.iteration = sampler.iteration();
  snap.seed = a.seed;
  snap.n = sampler.state().n;
  snap.m = sampler.state().m;
  write_snapshot(snap, dir / "snapshot");

  {
    auto f = open_out(dir / "topwords.txt");
    const auto top = top_words(sampler.state().n, a.top);
    for (std::size_t k = 0; k < top.size(); ++k) {
      f << k << ':';
      for (WordId v : top[k]) f << ' ' << corpus.vocab().word(v);
      f << '\n';
    }
  }

  const std::string end = utc_timestamp();
  events << nlohmann::json{{"event", "end"}, {"time", end}, {"iterations", sampler.iteration()}}.dump()
         << '\n';

  Manifest manifest;
  manifest.set("corpus", a.input.corpus);
  manifest.set("vocab", a.input.vocab);
  manifest.set("rare-limit", std::to_string(a.input.rare_limit));
  manifest.set("sampler", a.sampler);
  manifest.set("topics", std::to_string(a.topics));
  manifest.set("alpha", real(a.alpha));
  manifest.set("beta", real(a.beta));
  manifest.set("iters", std::to_string(a.iters));
  manifest.set("seed", std::to_string(a.seed));
  manifest.set("workers", std::to_string(a.workers));
  manifest.set("cache-limit", std::to_string(a.cache_limit));
  manifest.set("top", std::to_string(a.top));
  manifest.set("deterministic", a.deterministic ? "true" : "false");
  manifest.set("run.num_docs", std::to_string(corpus.num_docs()));
  manifest.set("run.vocab_size", std::to_string(corpus.vocab_size()));
  manifest.set("run.num_tokens", std::to_string(corpus.num_tokens()));
  manifest.set("run.content_hash", std::to_string(corpus.content_hash()));
  manifest.set("run.start", start);
  manifest.set("run.end", end);
  manifest.set("run.metrics", (dir / "metrics.csv").string());
  manifest.set("run.events", (dir / "events.jsonl").string());
  manifest.set("run.snapshot", (dir / "snapshot").string());
  manifest.set("run.topwords", (dir / "topwords.txt").string());
  manifest.write(dir / "manifest.txt");

  out << "trained " << sampler.iteration() << " iterations, final log_joint "
      << real(log_joint(corpus, sampler.state(), a.alpha, a.beta)) << '\n';
  return kExitOk;
}

struct SynthArgs {
  std::size_t topics = 20;
  std::size_t vocab_size = 500;
  std::size_t docs = 200;
  std::size_t doc_length = 100;
  double alpha = 0.1;
  double beta = 0.01;
  std::uint64_t seed = 0;
  std::string out;
};

int synth(const SynthArgs& a, std::ostream& out) {
  const auto s = synth_corpus(a.topics, a.vocab_size, a.docs, a.doc_length, a.alpha, a.beta, a.seed);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  {
    auto docword = open_out(dir / "docword.txt");
    auto vocab = open_out(dir / "vocab.txt");
    write_uci_bow(s.corpus, docword, vocab);
  }
  {
    // Ground-truth assignments as `d v k count`, 0-based.
    auto f = open_out(dir / "truth.txt");
    for (DocId d = 0; d < s.corpus.num_docs(); ++d) {
      std::map<std::pair<WordId, TopicId>, std::uint64_t> counts;
      const auto doc = s.corpus.doc(d);
      for (std::size_t i = 0; i < doc.size(); ++i) {
        ++counts[{doc[i], s.topics[s.corpus.doc_begin(d) + i]}];
      }
      for (const auto& [key, c] : counts) f << d << ' ' << key.first << ' ' << key.second << ' ' << c << '\n';
    }
  }
  Manifest manifest;
  manifest.set("topics", std::to_string(a.topics));
  manifest.set("vocab-size", std::to_string(a.vocab_size));
  manifest.set("docs", std::to_string(a.docs));
  manifest.set("doc-length", std::to_string(a.doc_length));
  manifest.set("alpha", real(a.alpha));
  manifest.set("beta", real(a.beta));
  manifest.set("seed", std::to_string(a.seed));
  manifest.set("run.content_hash", std::to_string(s.corpus.content_hash()));
  manifest.set("run.time", utc_timestamp());
  manifest.write(dir / "manifest.txt");
  out << "wrote " << s.corpus.num_docs() << " documents, " << s.corpus.num_tokens() << " tokens to "
      << dir.string() << '\n';
  return kExitOk;
}

struct PPUCheckArgs {
  std::uint64_t seed = 1;
  std::string out;
};

int ppu_check(const PPUCheckArgs& a, std::ostream& out) {
  PPUCheckConfig cfg;
  cfg.seed = a.seed;
  const auto report = run_ppu_check(cfg);
  print_ppu_report(report, out);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    auto f = open_out(fs::path(a.out) / "ppu_check.txt");
    print_ppu_report(report, f);
  }
  const bool ok = report.all_passed();
  out << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

struct TDemoArgs {
  std::string rhos = "0.9,0.99,0.999";
  std::size_t iters = 10000;
  std::uint64_t seed = 0;
  std::size_t chains = 5;
  std::string out;
};

std::vector<double> parse_reals(const std::string& list) {
  std::vector<double> values;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || trim(item.substr(used)).size() != 0) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    values.push_back(x);
  }
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

int tdemo(const TDemoArgs& a, std::ostream& out) {
  const auto rhos = parse_reals(a.rhos);
  for (double rho : rhos) TDemoConfig{rho, a.iters, a.seed}.validate();
  if (a.chains == 0) throw std::invalid_argument("--chains must be positive");
  if (a.iters < 10) throw std::invalid_argument("--iters must be at least 10");
  const auto rows = run_t_comparison(rhos, a.iters, a.seed, a.chains);
  fs::create_directories(a.out);
  auto f = open_out(fs::path(a.out) / "tdemo.csv");
  write_t_report(rows, f);
  write_t_report(rows, out);
  return kExitOk;
}

struct CoherenceArgs {
  CorpusArgs input;
  std::string snapshot;
  std::size_t top = 10;
  std::string out;
};

int eval_coherence(const CoherenceArgs& a, std::ostream& out) {
  const auto snap = read_snapshot(a.snapshot);
  const Corpus corpus = a.input.load();
  if (snap.vocab_size != corpus.vocab_size() || snap.num_docs != corpus.num_docs()) {
    throw RangeError("snapshot has D=" + std::to_string(snap.num_docs) + ", V=" + std::to_string(snap.vocab_size) +
                     " but the corpus has D=" + std::to_string(corpus.num_docs()) +
                     ", V=" + std::to_string(corpus.vocab_size()));
  }
  const auto scores = topic_coherence(snap.n, corpus, a.top);
  std::ostringstream csv;
  csv << "topic,coherence\n";
  for (std::size_t k = 0; k < scores.size(); ++k) csv << k << ',' << real(scores[k]) << '\n';
  out << csv.str();
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    open_out(fs::path(a.out) / "coherence.csv") << csv.str();
  }
  return kExitOk;
}

// Inserts the arguments from `--config FILE` right after the subcommand so
// that flags given on the command line, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::vector<std::string> expanded{args[0], args[1]};
  for (auto& a : config_file_args(path)) expanded.push_back(std::move(a));
  expanded.insert(expanded.end(), args.begin() + 2, args.end());
  return expanded;
}

}  // namespace

std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::vector<std::string> args;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("run.", 0) == 0) continue;
    if (kFlagKeys.count(key)) {
      if (value == "true") args.push_back("--" + key);
      continue;
    }
    // An empty value means "not set"; the option keeps its default.
    if (value.empty()) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partially collapsed LDA with Poisson Polya urn Phi draws", "urnlda"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "fit a topic model to a corpus");
  train_args.input.add_to(*train_cmd, true);
  train_cmd->add_option("-K,--topics", train_args.topics, "number of topics")->capture_default_str();
  train_cmd->add_option("--alpha", train_args.alpha, "symmetric document-topic prior")->capture_default_str();
  train_cmd->add_option("--beta", train_args.beta, "symmetric topic-word prior")->capture_default_str();
  train_cmd->add_option("--iters", train_args.iters, "iterations")->capture_default_str();
  train_cmd->add_option("--seed", train_args.seed, "random seed")->capture_default_str();
  train_cmd->add_option("--workers", train_args.workers, "worker threads")->capture_default_str();
  train_cmd->add_option("--sampler", train_args.sampler, "pu, pc or collapsed")
      ->check(CLI::IsMember({"pu", "pc", "collapsed"}))
      ->capture_default_str();
  train_cmd->add_option("-L,--cache-limit", train_args.cache_limit, "largest count with a cached Poisson table")
      ->capture_default_str();
  train_cmd->add_option("--top", train_args.top, "words per topic in topwords.txt")->capture_default_str();
  train_cmd->add_flag("--deterministic", train_args.deterministic,
                      "write zeros in the timing columns so reruns give identical metrics");
  train_cmd->add_option("--out", train_args.out, "output directory")->required();
  train_cmd->add_option("--config", config_path, "file of key = value defaults");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "sample a corpus from the generative model");
  synth_cmd->add_option("-K,--topics", synth_args.topics, "number of topics")->capture_default_str();
  synth_cmd->add_option("--vocab-size", synth_args.vocab_size, "vocabulary size")->capture_default_str();
  synth_cmd->add_option("--docs", synth_args.docs, "number of documents")->capture_default_str();
  synth_cmd->add_option("--doc-length", synth_args.doc_length, "tokens per document")->capture_default_str();
  synth_cmd->add_option("--alpha", synth_args.alpha, "document-topic prior")->capture_default_str();
  synth_cmd->add_option("--beta", synth_args.beta, "topic-word prior")->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed, "random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "output directory")->required();
  synth_cmd->add_option("--config", config_path, "file of key = value defaults");

  PPUCheckArgs ppu_args;
  auto* ppu_cmd = app.add_subcommand("ppu-check", "compare Poisson Polya urn draws with the Dirichlet");
  ppu_cmd->add_option("--seed", ppu_args.seed, "random seed")->capture_default_str();
  ppu_cmd->add_option("--out", ppu_args.out, "optional directory for the report");
  ppu_cmd->add_option("--config", config_path, "file of key = value defaults");

  TDemoArgs tdemo_args;
  auto* tdemo_cmd = app.add_subcommand("tdemo", "collapsed vs uncollapsed Gibbs on a bivariate T");
  tdemo_cmd->add_option("--rho", tdemo_args.rhos, "correlations, comma separated")->capture_default_str();
  tdemo_cmd->add_option("--iters", tdemo_args.iters, "iterations per chain")->capture_default_str();
  tdemo_cmd->add_option("--seed", tdemo_args.seed, "first chain seed")->capture_default_str();
  tdemo_cmd->add_option("--chains", tdemo_args.chains, "chains per (rho, sampler)")->capture_default_str();
  tdemo_cmd->add_option("--out", tdemo_args.out, "output directory")->required();
  tdemo_cmd->add_option("--config", config_path, "file of key = value defaults");

  CoherenceArgs coh_args;
  auto* coh_cmd = app.add_subcommand("eval-coherence", "per-topic coherence of a snapshot");
  coh_args.input.add_to(*coh_cmd, true);
  coh_cmd->add_option("--snapshot", coh_args.snapshot, "snapshot directory")->required();
  coh_cmd->add_option("--top", coh_args.top, "top words per topic")->capture_default_str();
  coh_cmd->add_option("--out", coh_args.out, "optional directory for coherence.csv");
  coh_cmd->add_option("--config", config_path, "file of key = value defaults");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    // CLI11 wants the arguments after the program name in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return train(train_args, out);
    if (synth_cmd->parsed()) return synth(synth_args, out);
    if (ppu_cmd->parsed()) return ppu_check(ppu_args, out);
    if (tdemo_cmd->parsed()) return tdemo(tdemo_args, out);
    if (coh_cmd->parsed()) return eval_coherence(coh_args, out);
  } catch (const ConsistencyError& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const RangeError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const EmptyVocabularyError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace urnlda::cli
