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

#include "oovfst/ngram-model.h"

#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "oovfst/errors.h"
#include "oovfst/utf8.h"

namespace oovfst {
namespace {

constexpr double kSumTolerance = 1e-6;

using Counts = std::map<std::vector<Label>, std::map<Label, double>>;

// Witten-Bell estimates from raw counts.
class WittenBell {
 public:
  WittenBell(const Counts &counts, std::size_t vocabulary_size)
      : counts_(counts), uniform_(1.0 / static_cast<double>(vocabulary_size)) {
    for (const auto &[h, next] : counts) {
      double total = 0.0;
      for (const auto &[w, c] : next) total += c;
      totals_[h] = {total, static_cast<double>(next.size())};
    }
  }

  double Prob(std::span<const Label> h, Label w) const {
    const double lower = h.empty() ? uniform_ : Prob(h.subspan(1), w);
    const std::vector<Label> key(h.begin(), h.end());
    const auto &[total, types] = totals_.at(key);
    const auto &next = counts_.at(key);
    const auto it = next.find(w);
    const double c = it == next.end() ? 0.0 : it->second;
    return (c + types * lower) / (total + types);
  }

  double Backoff(const std::vector<Label> &h) const {
    const auto &[total, types] = totals_.at(h);
    return types / (total + types);
  }

 private:
  const Counts &counts_;
  double uniform_;
  std::map<std::vector<Label>, std::pair<double, double>> totals_;
};

}  // namespace

TokenCorpus ReadTokenCorpus(std::string_view text) {
  TokenCorpus corpus;
  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++lineno;
    TokenSequence seq;
    if (const auto tab = line.find('\t'); tab != std::string_view::npos) {
      const std::string_view prefix = line.substr(0, tab);
      double count = 0.0;
      auto [ptr, ec] =
          std::from_chars(prefix.data(), prefix.data() + prefix.size(), count);
      if (ec == std::errc() && ptr == prefix.data() + prefix.size()) {
        if (!(count > 0.0) || std::isinf(count)) {
          throw ParseError(lineno, "count must be positive");
        }
        seq.count = count;
        line = line.substr(tab + 1);
      }
    }
    seq.tokens = SplitWhitespace(line);
    if (seq.tokens.empty()) continue;
    corpus.push_back(std::move(seq));
  }
  return corpus;
}

Smoothing ParseSmoothing(std::string_view name) {
  if (name == "witten-bell") return Smoothing::kWittenBell;
  if (name == "mle") return Smoothing::kMle;
  throw InvalidArgumentError("unknown smoothing \"" + std::string(name) +
                             "\" (expected witten-bell or mle)");
}

NgramModel::NgramModel(int order, SymbolTablePtr vocabulary,
                       ContextMap contexts)
    : order_(order),
      vocabulary_(std::move(vocabulary)),
      contexts_(std::move(contexts)) {
  if (order_ < 1) throw InvalidArgumentError("n-gram order must be >= 1");
  if (!vocabulary_)
    throw InvalidArgumentError("n-gram model has no vocabulary");
  bos_ = vocabulary_->Find(kBosSymbol);
  eos_ = vocabulary_->Find(kEosSymbol);

  contexts_.try_emplace({});
  if (order_ >= 2) contexts_.try_emplace({bos_}, Context{{}, 1.0});
  std::vector<std::vector<Label>> keys;
  for (const auto &[h, ctx] : contexts_) keys.push_back(h);
  for (const auto &h : keys) {
    if (static_cast<int>(h.size()) >= order_) {
      throw InvalidArgumentError("context longer than order - 1");
    }
    for (std::size_t i = 1; i < h.size(); ++i) {
      contexts_.try_emplace(std::vector<Label>(h.begin() + i, h.end()),
                            Context{{}, 1.0});
    }
  }
  for (const auto &[h, ctx] : contexts_) {
    for (Label l : h) {
      if (l <= 0 || !vocabulary_->Contains(l)) {
        throw InvalidArgumentError("context label outside vocabulary");
      }
    }
    double sum = 0.0;
    for (const auto &[w, p] : ctx.probs) {
      if (w <= 0 || !vocabulary_->Contains(w)) {
        throw InvalidArgumentError("n-gram label outside vocabulary");
      }
      if (!(p > 0.0 && p <= 1.0)) {
        throw InvalidArgumentError("n-gram probability outside (0, 1]");
      }
      sum += p;
    }
    if (sum > 1.0 + kSumTolerance) {
      throw InvalidArgumentError("context probabilities sum above 1");
    }
    if (ctx.backoff && !(*ctx.backoff > 0.0 && *ctx.backoff <= 1.0)) {
      throw InvalidArgumentError("backoff weight outside (0, 1]");
    }
  }
}

const NgramModel::Context *NgramModel::FindContext(
    std::span<const Label> h) const {
  const auto it = contexts_.find(std::vector<Label>(h.begin(), h.end()));
  return it == contexts_.end() ? nullptr : &it->second;
}

double NgramModel::Probability(std::span<const Label> history, Label w) const {
  const std::size_t keep = static_cast<std::size_t>(order_ - 1);
  if (history.size() > keep) history = history.subspan(history.size() - keep);
  double scale = 1.0;
  for (std::size_t i = 0; i <= history.size(); ++i) {
    const Context *ctx = FindContext(history.subspan(i));
    if (ctx == nullptr) continue;
    if (const auto it = ctx->probs.find(w); it != ctx->probs.end()) {
      return scale * it->second;
    }
    if (!ctx->backoff) return 0.0;
    scale *= *ctx->backoff;
  }
  return 0.0;
}

double NgramModel::Score(std::span<const Label> seq) const {
  std::vector<Label> history{bos_};
  double cost = 0.0;
  auto step = [&](Label w) {
    const double p = Probability(history, w);
    cost += p > 0.0 ? -std::log(p) : INFINITY;
    history.push_back(w);
  };
  for (Label w : seq) {
    if (!vocabulary_->Contains(w) || w == kEpsilon) {
      throw UnknownSymbolError("label " + std::to_string(w));
    }
    step(w);
  }
  step(eos_);
  return cost;
}

double NgramModel::Score(std::span<const std::string> seq) const {
  std::vector<Label> labels;
  labels.reserve(seq.size());
  for (const auto &t : seq) labels.push_back(vocabulary_->Find(t));
  return Score(labels);
}

SymbolTablePtr NgramModel::TokenSymbols() const {
  SymbolTable table;
  for (const auto &s : vocabulary_->Symbols()) {
    if (s != kEpsilonSymbol && s != kBosSymbol && s != kEosSymbol) {
      table.AddSymbol(s);
    }
  }
  return Share(std::move(table));
}

NgramModel Train(const TokenCorpus &corpus, const TrainOptions &options) {
  if (options.order < 1)
    throw InvalidArgumentError("n-gram order must be >= 1");
  if (corpus.empty()) throw InvalidArgumentError("empty training corpus");

  std::set<std::string> tokens(options.extra_vocabulary.begin(),
                               options.extra_vocabulary.end());
  for (const auto &seq : corpus) {
    if (!(seq.count > 0.0)) {
      throw InvalidArgumentError("sequence count must be positive");
    }
    tokens.insert(seq.tokens.begin(), seq.tokens.end());
  }
  SymbolTable vocabulary;
  const Label bos = vocabulary.AddSymbol(kBosSymbol);
  const Label eos = vocabulary.AddSymbol(kEosSymbol);
  for (const auto &t : tokens) {
    if (t == kBosSymbol || t == kEosSymbol || t == kEpsilonSymbol) {
      throw InvalidArgumentError("reserved token \"" + t + "\" in corpus");
    }
    vocabulary.AddSymbol(t);
  }

  Counts counts;
  const std::size_t max_history = static_cast<std::size_t>(options.order - 1);
  for (const auto &seq : corpus) {
    std::vector<Label> labels{bos};
    for (const auto &t : seq.tokens) labels.push_back(vocabulary.Find(t));
    labels.push_back(eos);
    for (std::size_t i = 1; i < labels.size(); ++i) {
      for (std::size_t k = 0; k <= std::min(max_history, i); ++k) {
        std::vector<Label> h(labels.begin() + (i - k), labels.begin() + i);
        counts[std::move(h)][labels[i]] += seq.count;
      }
    }
  }

  NgramModel::ContextMap contexts;
  if (options.smoothing == Smoothing::kMle) {
    for (const auto &[h, next] : counts) {
      double total = 0.0;
      for (const auto &[w, c] : next) total += c;
      auto &ctx = contexts[h];
      for (const auto &[w, c] : next) ctx.probs[w] = c / total;
    }
  } else {
    // Predicted tokens: everything except <s>.
    const std::size_t predicted = vocabulary.Size() - 2;
    const WittenBell wb(counts, predicted);
    for (const auto &[h, next] : counts) {
      auto &ctx = contexts[h];
      if (h.empty()) {
        for (Label w = 1; w < static_cast<Label>(vocabulary.Size()); ++w) {
          if (w != bos) ctx.probs[w] = wb.Prob(h, w);
        }
      } else {
        for (const auto &[w, c] : next) ctx.probs[w] = wb.Prob(h, w);
        ctx.backoff = wb.Backoff(h);
      }
    }
  }
  return NgramModel(options.order, Share(std::move(vocabulary)),
                    std::move(contexts));
}

}  // namespace oovfst
