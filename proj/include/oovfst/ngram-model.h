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

// Backoff n-gram models over token sequences (graphemes or phonemes).
//
// Every sequence is modeled as <s> t1 ... tk </s>. A model stores, per
// context h (a token sequence shorter than the order), the probabilities of
// the continuations seen after h and a backoff weight. P(w|h) is the stored
// value when present, otherwise backoff(h) * P(w|h minus its first token).
// Contexts that are not stored have backoff 1.

#ifndef OOVFST_NGRAM_MODEL_H_
#define OOVFST_NGRAM_MODEL_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oovfst/symbol-table.h"
#include "oovfst/wfst.h"

namespace oovfst {

inline constexpr std::string_view kBosSymbol = "<s>";
inline constexpr std::string_view kEosSymbol = "</s>";

struct TokenSequence {
  std::vector<std::string> tokens;
  double count = 1.0;
};

using TokenCorpus = std::vector<TokenSequence>;

// One sequence per non-blank line, whitespace-tokenized. A line may start
// with `count<TAB>`. Throws ParseError.
TokenCorpus ReadTokenCorpus(std::string_view text);

enum class Smoothing { kWittenBell, kMle };

// Parses "witten-bell" or "mle"; throws InvalidArgumentError otherwise.
Smoothing ParseSmoothing(std::string_view name);

class NgramModel {
 public:
  struct Context {
    std::map<Label, double> probs;
    // Absent: unseen continuations get no mass from this context.
    std::optional<double> backoff;
  };
  using ContextMap = std::map<std::vector<Label>, Context>;

  // `vocabulary` must contain <s> and </s>. Missing suffixes of stored
  // contexts are added with backoff 1. Throws InvalidArgumentError when
  // probabilities or backoffs are out of (0, 1], a context overflows the
  // order, or a context's probabilities sum above 1.
  NgramModel(int order, SymbolTablePtr vocabulary, ContextMap contexts);

  int Order() const { return order_; }
  const SymbolTablePtr &Vocabulary() const { return vocabulary_; }
  const ContextMap &Contexts() const { return contexts_; }
  Label Bos() const { return bos_; }
  Label Eos() const { return eos_; }

  const Context *FindContext(std::span<const Label> h) const;

  // P(w | history) with backoff. Only the last Order()-1 labels of
  // `history` are used. May be 0 for MLE models.
  double Probability(std::span<const Label> history, Label w) const;

  // -ln P(<s> seq </s>); +inf when the model gives the sequence no mass.
  // Throws UnknownSymbolError for tokens outside the vocabulary.
  double Score(std::span<const std::string> seq) const;
  double Score(std::span<const Label> seq) const;

  // The vocabulary without <s> and </s>: the label set of ToWfsa().
  SymbolTablePtr TokenSymbols() const;

 private:
  int order_;
  SymbolTablePtr vocabulary_;
  ContextMap contexts_;
  Label bos_;
  Label eos_;
};

struct TrainOptions {
  int order = 3;
  Smoothing smoothing = Smoothing::kWittenBell;
  // Tokens added to the vocabulary even if unseen. With Witten-Bell they
  // receive backoff mass.
  std::vector<std::string> extra_vocabulary;
};

// Witten-Bell is interpolated: P(w|h) = (c(hw) + T(h) P(w|h')) / (c(h) +
// T(h)) with T(h) the number of distinct continuations, and the empty
// context interpolating with the uniform distribution over the vocabulary
// plus </s>. Throws InvalidArgumentError on an empty corpus or order < 1.
NgramModel Train(const TokenCorpus &corpus, const TrainOptions &options);

// Acceptor over TokenSymbols() with one state per stored context. Seen
// continuations go to the longest stored suffix of the extended history;
// backoff is an epsilon arc to the context without its first token. The
// start state is the <s> context (the empty context for unigram models);
// final weights are -ln P(</s>|h). Shortest-path costs are therefore a
// lower bound on Score(), exact when no backoff is taken.
Wfst ToWfsa(const NgramModel &model);

}  // namespace oovfst

#endif  // OOVFST_NGRAM_MODEL_H_
