// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// oovfst: command-line front end.
//
// Exit status: 0 success, 1 runtime failure, 2 usage or input format error.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oovfst/arpa.h"
#include "oovfst/corpus.h"
#include "oovfst/errors.h"
#include "oovfst/lexicon.h"
#include "oovfst/ngram-model.h"
#include "oovfst/operations.h"
#include "oovfst/recovery.h"
#include "oovfst/rewrite-rule.h"
#include "oovfst/rule-compiler.h"
#include "oovfst/text-io.h"
#include "oovfst/utf8.h"

namespace fs = std::filesystem;

namespace oovfst {
namespace {

// An error in the user's input files or flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

// Rethrows format errors as usage errors prefixed with the file name.
template <typename F>
auto Parsing(const fs::path &path, F &&f) {
  try {
    return f();
  } catch (const ParseError &e) {
    if (e.Line() == 0) throw UsageError(path.string() + ": " + e.Message());
    throw UsageError(path.string() + ":" + std::to_string(e.Line()) + ": " +
                     e.Message());
  }
}

Wfst ReadMachine(const fs::path &path) {
  for (const auto &p :
       {path, InputSymbolsPath(path), OutputSymbolsPath(path)}) {
    if (!fs::exists(p)) throw UsageError("missing " + p.string());
  }
  return Parsing(path, [&] { return ReadFiles(path); });
}

std::vector<std::string> NonBlankLines(const fs::path &path) {
  std::vector<std::string> out;
  for (auto &line : ReadLines(path)) {
    if (!SplitWhitespace(line).empty()) out.push_back(std::move(line));
  }
  return out;
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Integer options that must be at least 1.
const CLI::Validator kCountValidator(
    [](std::string &value) -> std::string {
      long long n = 0;
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size() || n < 1) {
        return "expected an integer >= 1, got " + value;
      }
      return "";
    },
    "INT>=1");

std::string FormatCost(double cost) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", cost);
  return buf;
}

// compile-rules

struct CompileArgs {
  std::string rules;
  std::string out;
  bool inverse = false;
  bool optional_inverse = false;
};

int CompileRules(const CompileArgs &a) {
  const RuleSet rules =
      Parsing(a.rules, [&] { return ParseRules(ReadFile(a.rules)); });
  CascadeOptions options;
  options.all_optional = a.optional_inverse;
  Wfst t = CompileRuleSet(rules, options);
  if (a.inverse || a.optional_inverse) t = Invert(t);
  WriteFiles(t, a.out);
  std::cerr << "wrote " << a.out << " (" << t.NumStates() << " states, "
            << rules.rules.size() << " rules)\n";
  return 0;
}

// train-ngram

struct TrainArgs {
  std::string corpus;
  int order = 3;
  std::string smoothing = "witten-bell";
  std::string out;
  std::string wfsa;
  bool chars = false;
  std::string vocab;
};

int TrainNgram(const TrainArgs &a) {
  TrainOptions options;
  options.order = a.order;
  options.smoothing = ParseSmoothing(a.smoothing);
  TokenCorpus corpus =
      Parsing(a.corpus, [&] { return ReadTokenCorpus(ReadFile(a.corpus)); });
  if (a.chars) {
    for (auto &seq : corpus) {
      std::vector<std::string> chars;
      for (const auto &word : seq.tokens) {
        for (auto &c : SplitCodePoints(word)) chars.push_back(std::move(c));
      }
      seq.tokens = std::move(chars);
    }
  }
  if (!a.vocab.empty()) {
    const SymbolTable table =
        Parsing(a.vocab, [&] { return ReadSymbolFile(a.vocab); });
    for (const auto &s : table.Symbols()) {
      if (s != kEpsilonSymbol && s != kBosSymbol && s != kEosSymbol) {
        options.extra_vocabulary.push_back(s);
      }
    }
  }
  const NgramModel model = Train(corpus, options);
  WriteFile(a.out, WriteArpa(model));
  if (!a.wfsa.empty()) WriteFiles(ToWfsa(model), a.wfsa);
  return 0;
}

// g2p

struct G2pArgs {
  std::string rules;
  std::string word;
  std::string batch;
};

int RunG2p(const G2pArgs &a) {
  const Wfst rules = ReadMachine(a.rules);
  std::vector<std::string> words;
  if (!a.batch.empty()) {
    for (const auto &line : NonBlankLines(a.batch)) words.push_back(Trim(line));
  } else {
    words.push_back(a.word);
  }
  int status = 0;
  for (const auto &word : words) {
    const auto prons = G2p(word, rules);
    if (prons.empty()) {
      std::cerr << "no pronunciation for \"" << word << "\"\n";
      status = 1;
      continue;
    }
    std::cout << word << '\t' << Join(prons[0].output, " ") << '\n';
  }
  return status;
}

// p2g

struct P2gArgs {
  std::string inv_rules;
  std::string lm;
  std::size_t n = 10;
  double lm_scale = 1.0;
  std::size_t max_length = 40;
  std::string phonemes;
  std::string batch;
  std::string format = "tsv";
};

int RunP2g(const P2gArgs &a) {
  const Wfst inverse = ReadMachine(a.inv_rules);
  const NgramModel lm = Parsing(a.lm, [&] { return ReadArpa(ReadFile(a.lm)); });
  RecoveryConfig config;
  config.n_best = a.n;
  config.lm_scale = a.lm_scale;
  config.max_candidate_length = a.max_length;
  const Recoverer recoverer(inverse, ToWfsa(lm), config);

  std::vector<std::string> inputs;
  if (!a.batch.empty()) {
    for (const auto &line : NonBlankLines(a.batch)) inputs.push_back(line);
  } else {
    inputs.push_back(a.phonemes);
  }
  nlohmann::json json = nlohmann::json::array();
  for (const auto &input : inputs) {
    const auto phonemes = SplitWhitespace(input);
    const std::string key = Join(phonemes, " ");
    const auto candidates = recoverer.Recover(phonemes);
    if (candidates.empty()) {
      std::cerr << "warning: no candidates for \"" << key << "\"\n";
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto &c = candidates[i];
      if (a.format == "json") {
        json.push_back({{"input", key},
                        {"rank", i + 1},
                        {"candidate", c.graphemes},
                        {"cost", c.cost.Value()}});
      } else {
        std::cout << key << '\t' << i + 1 << '\t' << c.graphemes << '\t'
                  << FormatCost(c.cost.Value()) << '\n';
      }
    }
  }
  if (a.format == "json") std::cout << json.dump(2) << '\n';
  return 0;
}

// build-oov-subgraph

struct SubgraphArgs {
  std::string lexicon;
  int order = 3;
  std::string smoothing = "witten-bell";
  std::string out;
  std::string arpa;
};

int BuildOovSubgraph(const SubgraphArgs &a) {
  const Lexicon lexicon =
      Parsing(a.lexicon, [&] { return Lexicon::Parse(ReadFile(a.lexicon)); });
  if (lexicon.Empty()) throw UsageError(a.lexicon + ": empty lexicon");
  if (lexicon.Duplicates() > 0) {
    std::cerr << "warning: " << lexicon.Duplicates()
              << " duplicate lexicon entries ignored\n";
  }
  TrainOptions options;
  options.order = a.order;
  options.smoothing = ParseSmoothing(a.smoothing);
  const NgramModel model = BuildPhonemeLm(lexicon, options);
  WriteFiles(ToWfsa(model), a.out);
  if (!a.arpa.empty()) WriteFile(a.arpa, WriteArpa(model));
  return 0;
}

// sample-corpus

struct SampleArgs {
  std::string manifest;
  std::string dev;
  double target = 0;
  double fmax = 10.0;
  double beta = 0.5;
  std::uint64_t seed = 0;
  std::string outdir;
  int iterations = 100;
  double tol = 1e-6;
};

std::vector<CorpusStats> LoadCorpora(
    const std::vector<ManifestEntry> &manifest,
    std::vector<std::vector<std::string>> *keep) {
  std::vector<CorpusStats> stats;
  for (const auto &e : manifest) {
    if (!fs::exists(e.path))
      throw UsageError("missing corpus " + e.path.string());
    auto lines = ReadLines(e.path);
    stats.push_back(ComputeStats(e.id, lines));
    if (keep) keep->push_back(std::move(lines));
  }
  return stats;
}

std::vector<ManifestEntry> LoadManifest(const std::string &path) {
  return Parsing(path, [&] {
    return ParseManifest(ReadFile(path), fs::path(path).parent_path());
  });
}

int SampleCorpus(const SampleArgs &a) {
  const auto manifest = LoadManifest(a.manifest);
  std::vector<std::vector<std::string>> sentences;
  const auto stats = LoadCorpora(manifest, &sentences);
  std::vector<std::string> dev;
  for (const auto &line : ReadLines(a.dev)) {
    for (auto &t : SplitWhitespace(line)) dev.push_back(std::move(t));
  }
  if (dev.empty()) throw UsageError(a.dev + ": empty development set");
  const EmResult em = EstimateWeights(dev, stats, a.iterations, a.tol);
  const SamplingConfig config{a.target, a.fmax, a.beta};

  fs::create_directories(a.outdir);
  std::vector<std::string> ids;
  std::string report = "corpus\tweight\tsentences\tfactor\tsampled\n";
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto &id = manifest[i].id;
    ids.push_back(id);
    const double f = SamplingFactor(em.weights[i], stats[i].sentences, config);
    const auto sampled = Materialize(sentences[i], f, a.seed, id);
    std::string text;
    for (const auto &s : sampled) text += s + "\n";
    WriteFile(fs::path(a.outdir) / (id + ".txt"), text);
    WriteFile(fs::path(a.outdir) / (id + ".counts"),
              FormatCounts(stats[i].counts));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "\t%.9f\t%llu\t%.9f\t%zu\n", em.weights[i],
                  static_cast<unsigned long long>(stats[i].sentences), f,
                  sampled.size());
    report += id + buf;
  }
  WriteFile(fs::path(a.outdir) / "weights.tsv", FormatWeights(ids, em.weights));
  WriteFile(fs::path(a.outdir) / "report.tsv", report);
  std::cerr << "EM: " << em.iterations << " iterations, log-likelihood "
            << em.log_likelihood.back() << "\n";
  return 0;
}

// select-vocab

struct VocabArgs {
  std::string manifest;
  std::string weights;
  std::size_t k = 200000;
  std::string out;
};

int SelectVocabCmd(const VocabArgs &a) {
  const auto manifest = LoadManifest(a.manifest);
  const auto stats = LoadCorpora(manifest, nullptr);
  const auto parsed =
      Parsing(a.weights, [&] { return ParseWeights(ReadFile(a.weights)); });
  std::vector<double> weights;
  for (const auto &e : manifest) {
    const auto it =
        std::find_if(parsed.begin(), parsed.end(),
                     [&](const auto &p) { return p.first == e.id; });
    if (it == parsed.end())
      throw UsageError(a.weights + ": no weight for " + e.id);
    weights.push_back(it->second);
  }
  std::string text;
  for (const auto &u : SelectVocab(stats, weights, a.k)) text += u + "\n";
  WriteFile(a.out, text);
  return 0;
}

}  // namespace
}  // namespace oovfst

int main(int argc, char **argv) {
  using namespace oovfst;
  CLI::App app{"Weighted FST toolkit for out-of-vocabulary word recovery"};
  app.set_version_flag("--version", std::string("oovfst ") + OOVFST_VERSION);
  app.require_subcommand(1);

  CompileArgs compile;
  auto *c = app.add_subcommand("compile-rules", "Compile a rewrite rule file");
  c->add_option("--rules", compile.rules, "Rule file")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--out", compile.out, "Output FST (symbol tables beside it)")
      ->required();
  c->add_flag("--inverse", compile.inverse, "Write the inverted cascade");
  c->add_flag("--optional-inverse", compile.optional_inverse,
              "Invert the cascade compiled with every rule optional");

  TrainArgs train;
  auto *t = app.add_subcommand("train-ngram", "Train an n-gram model");
  t->add_option("--corpus", train.corpus, "One sequence per line")
      ->required()
      ->check(CLI::ExistingFile);
  t->add_option("--order", train.order, "Model order")
      ->check(kCountValidator)
      ->capture_default_str();
  t->add_option("--smoothing", train.smoothing, "witten-bell or mle")
      ->check(CLI::IsMember({"witten-bell", "mle"}))
      ->capture_default_str();
  t->add_option("--out", train.out, "Output ARPA file")->required();
  t->add_option("--wfsa", train.wfsa, "Also write the model as an acceptor");
  t->add_flag("--chars", train.chars, "Split tokens into characters");
  t->add_option("--vocab", train.vocab, "Symbol file of extra vocabulary")
      ->check(CLI::ExistingFile);

  G2pArgs g2p;
  auto *g = app.add_subcommand("g2p", "Pronounce words with compiled rules");
  g->add_option("--rules", g2p.rules, "Compiled rule FST")->required();
  auto *g_word = g->add_option("--word", g2p.word, "Word");
  auto *g_batch = g->add_option("--batch", g2p.batch, "One word per line")
                      ->check(CLI::ExistingFile);
  g_word->excludes(g_batch);
  g->add_option("WORD", g2p.word, "Word")->excludes(g_batch)->excludes(g_word);

  P2gArgs p2g;
  auto *p = app.add_subcommand("p2g", "Recover spellings of phoneme sequences");
  p->add_option("--inv-rules", p2g.inv_rules, "Inverse rule FST")->required();
  p->add_option("--lm", p2g.lm, "Grapheme ARPA model")
      ->required()
      ->check(CLI::ExistingFile);
  p->add_option("--n", p2g.n, "Candidates per input")
      ->check(kCountValidator)
      ->capture_default_str();
  p->add_option("--lm-scale", p2g.lm_scale, "Grapheme LM scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  p->add_option("--max-length", p2g.max_length, "Longest candidate")
      ->check(kCountValidator)
      ->capture_default_str();
  auto *p_ph =
      p->add_option("--phonemes", p2g.phonemes, "Space-separated phonemes");
  auto *p_batch = p->add_option("--batch", p2g.batch, "One sequence per line")
                      ->check(CLI::ExistingFile);
  p_ph->excludes(p_batch);
  p->add_option("PHONEMES", p2g.phonemes, "Space-separated phonemes")
      ->excludes(p_batch)
      ->excludes(p_ph);
  p->add_option("--format", p2g.format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  SubgraphArgs sub;
  auto *b = app.add_subcommand("build-oov-subgraph",
                               "Phoneme LM acceptor from a lexicon");
  b->add_option("--lexicon", sub.lexicon, "word<TAB>phonemes lines")
      ->required()
      ->check(CLI::ExistingFile);
  b->add_option("--order", sub.order, "Model order")
      ->check(kCountValidator)
      ->capture_default_str();
  b->add_option("--smoothing", sub.smoothing, "witten-bell or mle")
      ->check(CLI::IsMember({"witten-bell", "mle"}))
      ->capture_default_str();
  b->add_option("--out", sub.out, "Output FST")->required();
  b->add_option("--arpa", sub.arpa, "Also write the model as ARPA");

  SampleArgs sample;
  auto *s = app.add_subcommand("sample-corpus", "Balance corpora by sampling");
  s->add_option("--manifest", sample.manifest, "id<TAB>path lines")
      ->required()
      ->check(CLI::ExistingFile);
  s->add_option("--dev", sample.dev, "Development text")
      ->required()
      ->check(CLI::ExistingFile);
  s->add_option("--target", sample.target, "Target sentence count")
      ->required()
      ->check(CLI::Range(1.0, 1e15));
  s->add_option("--fmax", sample.fmax, "Oversampling cap")
      ->check(CLI::Range(1.0, 1e15))
      ->capture_default_str();
  s->add_option("--beta", sample.beta, "Smoothing exponent")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  s->add_option("--seed", sample.seed, "Random seed")->capture_default_str();
  s->add_option("--outdir", sample.outdir, "Output directory")->required();
  s->add_option("--iters", sample.iterations, "EM iterations")
      ->check(kCountValidator)
      ->capture_default_str();
  s->add_option("--tol", sample.tol, "EM convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VocabArgs vocab;
  auto *v =
      app.add_subcommand("select-vocab", "Top units of the corpus mixture");
  v->add_option("--manifest", vocab.manifest, "id<TAB>path lines")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("--weights", vocab.weights, "corpus_id<TAB>weight lines")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("--k", vocab.k, "Vocabulary size")
      ->check(kCountValidator)
      ->capture_default_str();
  v->add_option("--out", vocab.out, "Output unit list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c) return CompileRules(compile);
    if (*t) return TrainNgram(train);
    if (*g) {
      if (g2p.word.empty() && g2p.batch.empty())
        throw UsageError("give --word or --batch");
      return RunG2p(g2p);
    }
    if (*p) {
      if (p2g.phonemes.empty() && p2g.batch.empty()) {
        throw UsageError("give --phonemes or --batch");
      }
      return RunP2g(p2g);
    }
    if (*b) return BuildOovSubgraph(sub);
    if (*s) return SampleCorpus(sample);
    if (*v) return SelectVocabCmd(vocab);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgumentError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
