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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oovfst/corpus.h"
#include "oovfst/lexicon.h"
#include "oovfst/ngram-model.h"
#include "oovfst/operations.h"
#include "oovfst/recovery.h"
#include "oovfst/rule-compiler.h"
#include "oovfst/text-io.h"
#include "oovfst/utf8.h"
#include "testing/ngram-oracle.h"
#include "testing/path-oracle.h"
#include "testing/recovery-oracle.h"
#include "testing/rewrite-oracle.h"

namespace fs = std::filesystem;

namespace oovfst {
namespace {

using Strings = std::vector<std::string>;

const fs::path kCli = OOVFST_CLI;
const fs::path kDemo = fs::path(OOVFST_DATA_DIR) / "demo";

// Accumulates failure messages; the first few are reported.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok) failures_.push_back(what);
  }
  bool Ok() const { return failures_.empty(); }
  std::string Summary() const {
    std::string out = std::to_string(failures_.size()) + " failure(s)";
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
      out += "; " + failures_[i];
    }
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Slurp(const fs::path &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

struct CommandResult {
  int status = -1;
  std::string out;
};

CommandResult Run(const std::vector<std::string> &args) {
  std::string cmd = Quote(kCli.string());
  for (const auto &a : args) cmd += " " + Quote(a);
  cmd += " 2>/dev/null";
  CommandResult r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path ScratchDir() {
  std::random_device rd;
  const fs::path dir =
      fs::temp_directory_path() / ("oovfst-acceptance-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

// 1. g2p on the demo rules.
Outcome ChrisExample(const fs::path &dir) {
  const fs::path g2p = dir / "g2p.fst";
  if (Run({"compile-rules", "--rules", (kDemo / "rules.txt").string(), "--out",
           g2p.string()})
          .status != 0) {
    return {false, "compile-rules failed"};
  }
  const auto start = std::chrono::steady_clock::now();
  const CommandResult r = Run({"g2p", "--rules", g2p.string(), "Chris"});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  char buf[128];
  std::snprintf(buf, sizeof(buf), " (g2p %.3f s)", secs);
  if (r.status != 0) return {false, "g2p exited " + std::to_string(r.status)};
  if (r.out != "Chris\tk r i s\n") return {false, "output: " + r.out};
  if (secs >= 1.0) return {false, std::string("too slow") + buf};
  return {true, "Chris -> k r i s" + std::string(buf)};
}

// 2. p2g ambiguity on the demo inverse rules and a demo grapheme LM.
Outcome P2gAmbiguity(const fs::path &dir) {
  const fs::path inv = dir / "inv.fst";
  const fs::path words = dir / "words.txt";
  const fs::path arpa = dir / "graphemes.arpa";
  if (Run({"compile-rules", "--rules", (kDemo / "rules.txt").string(),
           "--optional-inverse", "--out", inv.string()})
          .status != 0) {
    return {false, "compile-rules --optional-inverse failed"};
  }
  const Lexicon lex = Lexicon::Parse(Slurp(kDemo / "lexicon.tsv"));
  if (lex.NumWords() < 500) return {false, "demo lexicon under 500 words"};
  {
    std::ofstream out(words);
    for (const auto &[w, prons] : lex.Entries()) out << w << '\n';
  }
  if (Run({"train-ngram", "--corpus", words.string(), "--chars", "--order", "5",
           "--vocab", OutputSymbolsPath(inv).string(), "--out", arpa.string()})
          .status != 0) {
    return {false, "train-ngram failed"};
  }
  const std::vector<std::string> args{"p2g",  "--inv-rules", inv.string(),
                                      "--lm", arpa.string(), "--n",
                                      "20",   "k r i s"};
  const auto start = std::chrono::steady_clock::now();
  const CommandResult r = Run(args);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (r.status != 0) return {false, "p2g exited " + std::to_string(r.status)};

  Check check;
  std::vector<std::pair<double, std::string>> ranked;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    const auto f = SplitWhitespace(line);
    // input is "k r i s": four tokens, then rank, candidate, cost.
    if (f.size() != 7) {
      check.Expect(false, "bad line: " + line);
      continue;
    }
    ranked.emplace_back(std::stod(f[6]), f[5]);
  }
  std::set<std::string> distinct;
  for (const auto &[c, w] : ranked) distinct.insert(w);
  check.Expect(distinct.size() == ranked.size(), "duplicate candidates");
  check.Expect(distinct.size() >= 5, "fewer than 5 spellings");
  check.Expect(distinct.contains("kris"), "kris missing");
  check.Expect(std::is_sorted(ranked.begin(), ranked.end()),
               "not sorted by (cost, spelling)");
  check.Expect(Run(args).out == r.out, "output differs between runs");
  check.Expect(secs < 5.0, "p2g took " + std::to_string(secs) + " s");
  if (!check.Ok()) return {false, check.Summary()};

  std::string shown;
  for (std::size_t i = 0; i < ranked.size() && i < 6; ++i) {
    shown += (i ? ", " : "") + ranked[i].second;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu spellings (%s, ...), p2g %.3f s",
                distinct.size(), shown.c_str(), secs);
  return {true, buf};
}

// 3. Composition against brute-force path pairing.
Outcome CompositionOracle() {
  std::mt19937_64 rng(20240611);
  Check check;
  for (int trial = 0; trial < 200; ++trial) {
    const auto syms = testing::LetterTable(1 + trial % 4);
    const Wfst a = testing::RandomAcyclic(rng, syms, syms, 6);
    const Wfst b = testing::RandomAcyclic(rng, syms, syms, 6);
    check.Expect(
        testing::RelationsEqual(testing::EnumerateRelation(Compose(a, b), 64),
                                testing::BruteForceCompose(a, b, 8), 1e-9),
        "pair " + std::to_string(trial));
  }
  if (!check.Ok()) return {false, check.Summary()};
  return {true, "200 random pairs agree"};
}

// 4. Rule compilation against the string-rewriting oracle.
Outcome RewriteOracle() {
  const Strings alphabet{"a", "b", "c"};
  SymbolTable table;
  for (const auto &s : alphabet) table.AddSymbol(s);
  const SymbolTablePtr syms = Share(std::move(table));
  std::mt19937_64 rng(42);
  Check check;
  std::size_t compared = 0;
  for (int r = 0; r < 20; ++r) {
    const testing::RuleText text = testing::RandomRule(rng, alphabet);
    const testing::RewriteOracle oracle(text);
    const Wfst t = CompileRule(ParseRule(text.Line()), syms);
    for (int i = 0; i < 1000; ++i) {
      const Strings s = testing::RandomString(rng, alphabet, 12);
      const auto outs = Apply(t, s);
      ++compared;
      check.Expect(outs.size() == 1 && outs[0].output == oracle.Apply(s),
                   text.Line() + " on \"" + Join(s, " ") + "\"");
    }
  }
  for (int c = 0; c < 5; ++c) {
    std::string text = "!alphabet: a b c\n";
    std::vector<testing::RewriteOracle> oracles;
    for (int r = 0; r < 4; ++r) {
      const testing::RuleText rule = testing::RandomRule(rng, alphabet);
      text += rule.Line() + "\n";
      oracles.emplace_back(rule);
    }
    const Wfst t = CompileRuleSet(ParseRules(text));
    for (int i = 0; i < 1000; ++i) {
      Strings s = testing::RandomString(rng, alphabet, 12);
      const auto outs = Apply(t, s);
      for (const auto &o : oracles) s = o.Apply(s);
      ++compared;
      check.Expect(outs.size() == 1 && outs[0].output == s,
                   "cascade " + std::to_string(c));
    }
  }
  if (!check.Ok()) return {false, check.Summary()};
  return {true, std::to_string(compared) + " applications agree"};
}

TokenCorpus RandomCorpus(std::mt19937_64 &rng, const Strings &alphabet,
                         int sentences) {
  TokenCorpus corpus;
  for (int i = 0; i < sentences; ++i) {
    TokenSequence s;
    s.tokens = testing::RandomString(rng, alphabet, 6);
    corpus.push_back(std::move(s));
  }
  return corpus;
}

// Every history over `alphabet` up to `length` symbols, bare and after <s>.
std::vector<Strings> AllHistories(const Strings &alphabet, int length) {
  std::vector<Strings> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == length) continue;
    for (const auto &a : alphabet) {
      Strings h = out[i];
      h.push_back(a);
      out.push_back(std::move(h));
    }
  }
  const std::size_t bare = out.size();
  for (std::size_t i = 0; i < bare; ++i) {
    if (static_cast<int>(out[i].size()) == length) continue;
    Strings h{std::string(kBosSymbol)};
    h.insert(h.end(), out[i].begin(), out[i].end());
    out.push_back(std::move(h));
  }
  return out;
}

double WfsaCost(const Wfst &fsa, const Strings &seq) {
  const auto paths =
      ShortestPaths(Compose(LinearAcceptor(seq, fsa.InputSymbols()), fsa), 1);
  return paths.empty() ? INFINITY : paths[0].weight.Value();
}

// True when every n-gram of the sequence is read from a stored
// distribution without backing off.
bool NeedsNoBackoff(const NgramModel &m, const Strings &seq) {
  const auto &v = *m.Vocabulary();
  std::vector<Label> h{m.Bos()};
  Strings full = seq;
  full.emplace_back(kEosSymbol);
  for (const auto &tok : full) {
    const Label w = v.Find(tok);
    if (!m.Contexts().at(h).probs.contains(w)) return false;
    h.push_back(w);
    if (static_cast<int>(h.size()) > m.Order() - 1) h.erase(h.begin());
    while (!m.Contexts().contains(h)) h.erase(h.begin());
  }
  return true;
}

// 5. Witten-Bell normalization, scoring and the WFSA bound.
Outcome NgramCorrectness() {
  std::mt19937_64 rng(11);
  const Strings alphabet{"a", "b", "c"};
  Check check;
  std::size_t contexts = 0, scored = 0, exact = 0, bounded = 0;
  for (int order = 1; order <= 4; ++order) {
    for (int trial = 0; trial < 5; ++trial) {
      const NgramModel m = Train(RandomCorpus(rng, alphabet, 10),
                                 {order, Smoothing::kWittenBell, {"d"}});
      const auto &v = *m.Vocabulary();
      for (const auto &h : AllHistories({"a", "b", "c", "d"}, order - 1)) {
        std::vector<Label> labels;
        for (const auto &s : h) labels.push_back(v.Find(s));
        double sum = 0.0;
        for (Label w = 1; w < static_cast<Label>(v.Size()); ++w) {
          if (w != m.Bos()) sum += m.Probability(labels, w);
        }
        ++contexts;
        check.Expect(
            std::abs(sum - 1.0) <= 1e-6,
            "sum " + std::to_string(sum) + " after \"" + Join(h, " ") + "\"");
      }
    }
  }
  for (Smoothing sm : {Smoothing::kWittenBell, Smoothing::kMle}) {
    const NgramModel m = Train(RandomCorpus(rng, alphabet, 30), {3, sm, {}});
    const testing::TableWalk ref(m);
    for (int i = 0; i < 100; ++i) {
      const Strings s = testing::RandomString(rng, alphabet, 8);
      const double got = m.Score(s);
      const double want = ref.Cost(s);
      ++scored;
      check.Expect(
          std::isinf(want) ? std::isinf(got) : std::abs(got - want) <= 1e-9,
          "score of \"" + Join(s, " ") + "\"");
    }
  }
  for (int order = 2; order <= 4; ++order) {
    const NgramModel m = Train(RandomCorpus(rng, alphabet, 15),
                               {order, Smoothing::kWittenBell, {}});
    const Wfst fsa = ToWfsa(m);
    for (int i = 0; i < 200; ++i) {
      const Strings s = testing::RandomString(rng, alphabet, 6);
      const double cost = WfsaCost(fsa, s);
      const double score = m.Score(s);
      if (NeedsNoBackoff(m, s)) {
        ++exact;
        check.Expect(std::abs(cost - score) <= 1e-9,
                     "WFSA cost differs on \"" + Join(s, " ") + "\"");
      } else {
        ++bounded;
        check.Expect(cost <= score + 1e-9,
                     "WFSA cost exceeds score on \"" + Join(s, " ") + "\"");
      }
    }
  }
  check.Expect(exact >= 20, "too few sequences without backoff");
  if (!check.Ok()) return {false, check.Summary()};
  return {true, std::to_string(contexts) + " contexts sum to 1, " +
                    std::to_string(scored) + " table-walk scores, " +
                    std::to_string(exact) + " exact / " +
                    std::to_string(bounded) + " bounded WFSA costs"};
}

// 6. Recovery against exhaustive enumeration.
Outcome RecoveryOracle() {
  const RuleSet rules = ParseRules(testing::kSmallRules);
  const Wfst inverse = Invert(CompileRuleSet(rules, {true}));
  const Strings phonemes{"a", "e", "k", "s"};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, phonemes.size() - 1);
  std::uniform_int_distribution<int> len(1, 6);
  const std::vector<double> scales{0.0, 0.5, 1.0, 2.0};
  const std::vector<std::size_t> ns{1, 3, 5, 10};
  Check check;
  int compared = 0;
  for (int order = 1; order <= 3; ++order) {
    const Wfst lm = ToWfsa(testing::SmallGraphemeLm(order));
    for (int i = 0; i < 100; ++i) {
      Strings p(len(rng));
      for (auto &s : p) s = phonemes[pick(rng)];
      const double scale = scales[i % scales.size()];
      const std::size_t n = ns[(i / 4) % ns.size()];
      const auto want =
          testing::BruteForceRecover(p, inverse, lm, scale, 8, 40);
      const auto got = Recoverer(inverse, lm, {n, scale, 8}).Recover(p);
      const std::string diff = testing::CompareTopN(got, want, n, 1e-6);
      check.Expect(diff.empty(), "\"" + Join(p, " ") + "\": " + diff);
      compared += !want.empty();
    }
  }
  check.Expect(compared >= 100, "too few recoverable inputs");
  if (!check.Ok()) return {false, check.Summary()};
  return {true, std::to_string(compared) + " non-empty queries agree"};
}

// 7. Every demo word is among the top 10 spellings of its pronunciation.
Outcome RoundTrip() {
  const RuleSet rules = ParseRules(Slurp(kDemo / "rules.txt"));
  const Wfst g2p = CompileRuleSet(rules);
  const Wfst inverse = Invert(CompileRuleSet(rules, {true}));
  const Lexicon lex = Lexicon::Parse(Slurp(kDemo / "lexicon.tsv"));
  const auto &symbols = rules.alphabet->Symbols();
  const NgramModel lm = BuildGraphemeLm(
      lex,
      {5, Smoothing::kWittenBell, Strings(symbols.begin() + 1, symbols.end())});
  const Recoverer recoverer(inverse, ToWfsa(lm), {10, 1.0, 40});
  std::size_t total = 0, found = 0;
  std::vector<std::string> missed;
  for (const auto &[w, prons] : lex.Entries()) {
    ++total;
    const auto pron = G2p(w, g2p);
    if (pron.empty()) {
      missed.push_back(w);
      continue;
    }
    const auto got = recoverer.Recover(pron[0].output);
    if (std::any_of(got.begin(), got.end(),
                    [&](const CandidateWord &c) { return c.graphemes == w; })) {
      ++found;
    } else {
      missed.push_back(w);
    }
  }
  const std::string counts =
      std::to_string(found) + "/" + std::to_string(total) + " words";
  if (total < 200) return {false, "lexicon has only " + counts};
  if (found != total) return {false, counts + ", first miss " + missed[0]};
  return {true, counts};
}

// 8. Sampling factors and materialization.
Outcome Sampling() {
  Check check;
  const SamplingConfig cfg{3'000'000, 10.0, 0.5};
  check.Expect(SamplingFactor(0.1, 300'000, cfg) == 1.0, "ratio 1");
  check.Expect(SamplingFactor(0.5, 3'000'000, cfg) == std::sqrt(0.5),
               "ratio 0.5");
  check.Expect(SamplingFactor(0.4, 3'000, cfg) == 10.0, "ratio 400");
  Strings sentences;
  for (int i = 0; i < 10'000; ++i) {
    sentences.push_back("sentence " + std::to_string(i));
  }
  const Strings a = Materialize(sentences, 0.5, 1234, "news");
  const double sigma = std::sqrt(10'000 * 0.25);
  check.Expect(std::abs(static_cast<double>(a.size()) - 5000.0) <= 3 * sigma,
               "size " + std::to_string(a.size()));
  check.Expect(Materialize(sentences, 0.5, 1234, "news") == a,
               "same seed differs");
  if (!check.Ok()) return {false, check.Summary()};
  return {true, "factors exact, f=0.5 kept " + std::to_string(a.size()) +
                    " of 10000, deterministic"};
}

// 9. EM recovers known mixture weights.
Outcome EmConsistency() {
  std::mt19937_64 rng(2024);
  std::vector<CorpusStats> stats;
  std::vector<std::discrete_distribution<int>> sources;
  for (int i = 0; i < 3; ++i) {
    CorpusStats s;
    s.id = "c" + std::to_string(i);
    s.sentences = 1;
    std::vector<double> probs;
    std::gamma_distribution<double> g(0.5, 1.0);
    for (int u = 0; u < 50; ++u) {
      const double c = std::floor(1000 * g(rng)) + 1;
      s.counts["u" + std::to_string(u)] = c;
      probs.push_back(c);
    }
    stats.push_back(std::move(s));
    sources.emplace_back(probs.begin(), probs.end());
  }
  const std::vector<double> truth{0.6, 0.3, 0.1};
  std::discrete_distribution<int> pick(truth.begin(), truth.end());
  Strings dev;
  for (int t = 0; t < 10'000; ++t) {
    dev.push_back("u" + std::to_string(sources[pick(rng)](rng)));
  }
  const EmResult r = EstimateWeights(dev, stats, 500, 1e-7);
  Check check;
  for (int i = 0; i < 3; ++i) {
    check.Expect(
        std::abs(r.weights[i] - truth[i]) <= 0.05,
        "weight " + std::to_string(i) + " = " + std::to_string(r.weights[i]));
  }
  const auto &ll = r.log_likelihood;
  for (std::size_t i = 1; i < ll.size(); ++i) {
    check.Expect(ll[i] >= ll[i - 1] - 1e-9 * std::abs(ll[i - 1]),
                 "log-likelihood fell at iteration " + std::to_string(i));
  }
  if (!check.Ok()) return {false, check.Summary()};
  char buf[160];
  std::snprintf(buf, sizeof(buf), "weights %.3f %.3f %.3f after %d iterations",
                r.weights[0], r.weights[1], r.weights[2], r.iterations);
  return {true, buf};
}

struct Criterion {
  int number;
  const char *name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

int Main() {
  const fs::path dir = ScratchDir();
  const std::vector<Criterion> criteria{
      {1, "chris example", 1.0, [&] { return ChrisExample(dir); }},
      {2, "p2g ambiguity", 0.0, [&] { return P2gAmbiguity(dir); }},
      {3, "composition oracle", 30.0, CompositionOracle},
      {4, "rewrite oracle", 60.0, RewriteOracle},
      {5, "n-gram correctness", 0.0, NgramCorrectness},
      {6, "recovery oracle", 60.0, RecoveryOracle},
      {7, "round-trip containment", 0.0, RoundTrip},
      {8, "sampling formula", 0.0, Sampling},
      {9, "EM consistency", 0.0, EmConsistency},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (o.pass && c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o = {false,
           "over time limit of " + std::to_string(c.limit_seconds) + " s"};
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL",
                c.number, c.name, o.detail.c_str(), secs);
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace oovfst

int main() { return oovfst::Main(); }
