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

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oovfst/ngram-model.h"

namespace oovfst {

namespace {
constexpr Label kNone = -1;
}  // namespace

Wfst ToWfsa(const NgramModel &model) {
  const SymbolTablePtr tokens = model.TokenSymbols();
  const SymbolTable &vocabulary = *model.Vocabulary();
  std::vector<Label> token_label(vocabulary.Size(), kNone);
  for (Label l = 1; l < static_cast<Label>(vocabulary.Size()); ++l) {
    const auto &s = vocabulary.Find(l);
    if (tokens->Contains(s)) token_label[l] = tokens->Find(s);
  }

  WfstBuilder builder(tokens, tokens);
  std::map<std::vector<Label>, StateId> states;
  const std::vector<Label> start = model.Order() >= 2
                                       ? std::vector<Label>{model.Bos()}
                                       : std::vector<Label>{};
  states[start] = builder.AddState();
  for (const auto &[h, ctx] : model.Contexts()) {
    if (!states.contains(h)) states[h] = builder.AddState();
  }
  builder.SetStart(states[start]);

  const std::size_t keep = static_cast<std::size_t>(model.Order() - 1);
  auto longest_stored = [&](std::vector<Label> h) {
    if (h.size() > keep) h.erase(h.begin(), h.end() - keep);
    while (!states.contains(h)) h.erase(h.begin());
    return states.at(h);
  };

  for (const auto &[h, ctx] : model.Contexts()) {
    const StateId s = states.at(h);
    for (const auto &[w, p] : ctx.probs) {
      const double cost = std::max(0.0, -std::log(p));
      if (w == model.Eos()) {
        builder.SetFinal(s, TropicalWeight(cost));
        continue;
      }
      if (token_label[w] == kNone) continue;
      std::vector<Label> next = h;
      next.push_back(w);
      builder.AddArc(s, token_label[w], token_label[w], TropicalWeight(cost),
                     longest_stored(std::move(next)));
    }
    if (!h.empty() && ctx.backoff) {
      const std::vector<Label> lower(h.begin() + 1, h.end());
      builder.AddArc(s, kEpsilon, kEpsilon,
                     TropicalWeight(std::max(0.0, -std::log(*ctx.backoff))),
                     states.at(lower));
    }
  }
  return std::move(builder).Build();
}

}  // namespace oovfst
