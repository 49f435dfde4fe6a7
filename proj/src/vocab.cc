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
#include <sstream>

#include "oovfst/corpus.h"
#include "oovfst/errors.h"

namespace oovfst {

double CorpusStats::Total() const {
  double total = 0.0;
  for (const auto &[unit, c] : counts) total += c;
  return total;
}

CorpusStats ComputeStats(std::string id,
                         std::span<const std::string> sentences) {
  CorpusStats stats;
  stats.id = std::move(id);
  stats.sentences = sentences.size();
  for (const auto &s : sentences) {
    std::istringstream is(s);
    std::string unit;
    while (is >> unit) stats.counts[unit] += 1.0;
  }
  return stats;
}

std::map<std::string, double> MixtureProbabilities(
    std::span<const CorpusStats> stats, std::span<const double> weights) {
  if (stats.size() != weights.size()) {
    throw InvalidArgumentError("one weight per corpus expected");
  }
  std::map<std::string, double> p;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const double total = stats[i].Total();
    if (!(total > 0.0)) {
      throw InvalidArgumentError("corpus \"" + stats[i].id + "\" has no units");
    }
    for (const auto &[unit, c] : stats[i].counts) {
      p[unit] += weights[i] * c / total;
    }
  }
  return p;
}

std::vector<std::string> SelectVocab(std::span<const CorpusStats> stats,
                                     std::span<const double> weights,
                                     std::size_t k) {
  const auto p = MixtureProbabilities(stats, weights);
  std::vector<std::pair<std::string, double>> ranked(p.begin(), p.end());
  // Stable sort on probability keeps the byte order of equal entries.
  std::stable_sort(
      ranked.begin(), ranked.end(),
      [](const auto &a, const auto &b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto &[unit, prob] : ranked) out.push_back(std::move(unit));
  return out;
}

}  // namespace oovfst
