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

#include "oovfst/recovery.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "oovfst/errors.h"
#include "oovfst/operations.h"
#include "oovfst/utf8.h"

namespace oovfst {

std::vector<Rewrite> G2p(std::string_view word, const Wfst &rules,
                         const ApplyOptions &options) {
  return ApplyString(rules, ToLower(word), options);
}

Recoverer::Recoverer(Wfst inverse_rules, const Wfst &grapheme_lm,
                     const RecoveryConfig &config)
    : inverse_(std::move(inverse_rules)), config_(config) {
  if (config.n_best < 1) throw InvalidArgumentError("n_best must be >= 1");
  if (!(config.lm_scale >= 0.0)) {
    throw InvalidArgumentError("lm_scale must be non-negative");
  }
  const SymbolTablePtr graphemes = inverse_.OutputSymbols();
  lm_ = ScaleWeights(
      Relabel(grapheme_lm, graphemes, graphemes, MissingSymbol::kDropArc),
      config.lm_scale);
}

std::vector<CandidateWord> Recoverer::Recover(
    std::span<const std::string> phonemes) const {
  if (phonemes.empty()) throw InvalidArgumentError("empty phoneme sequence");
  const Wfst spellings = Project(
      Compose(LinearAcceptor(phonemes, inverse_.InputSymbols()), inverse_),
      ProjectSide::kOutput);
  const Wfst scored = Compose(spellings, lm_);
  const auto &syms = *scored.OutputSymbols();

  std::vector<CandidateWord> out;
  for (const auto &o : ShortestDistinctOutputs(scored, config_.n_best,
                                               config_.max_candidate_length)) {
    CandidateWord c;
    for (Label l : o.labels) c.graphemes += syms.Find(l);
    c.cost = o.weight;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateWord &a, const CandidateWord &b) {
              return std::tie(a.cost, a.graphemes) <
                     std::tie(b.cost, b.graphemes);
            });
  // Distinct label strings can spell the same word when symbols span
  // several characters.
  std::set<std::string> seen;
  std::erase_if(out, [&](const CandidateWord &c) {
    return !seen.insert(c.graphemes).second;
  });
  if (out.size() > config_.n_best) out.resize(config_.n_best);
  return out;
}

std::vector<CandidateWord> Recover(std::span<const std::string> phonemes,
                                   const Wfst &inverse_rules,
                                   const Wfst &grapheme_lm,
                                   const RecoveryConfig &config) {
  return Recoverer(inverse_rules, grapheme_lm, config).Recover(phonemes);
}

}  // namespace oovfst
