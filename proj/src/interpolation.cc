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

#include <cmath>
#include <map>

#include "oovfst/corpus.h"
#include "oovfst/errors.h"

namespace oovfst {

EmResult EstimateWeights(std::span<const std::string> dev,
                         std::span<const CorpusStats> stats, int max_iterations,
                         double tol) {
  if (dev.empty()) throw InvalidArgumentError("empty development set");
  if (stats.empty()) throw InvalidArgumentError("no corpora");
  const std::size_t k = stats.size();

  std::map<std::string, double> dev_counts;
  for (const auto &t : dev) dev_counts[t] += 1.0;
  // Per distinct dev unit: its count and the probability under each corpus.
  std::vector<double> counts;
  std::vector<std::vector<double>> probs;
  std::vector<double> totals(k);
  for (std::size_t i = 0; i < k; ++i) {
    totals[i] = stats[i].Total();
    if (!(totals[i] > 0.0)) {
      throw InvalidArgumentError("corpus \"" + stats[i].id + "\" has no units");
    }
  }
  for (const auto &[unit, c] : dev_counts) {
    counts.push_back(c);
    std::vector<double> p(k, kUnitFloor);
    for (std::size_t i = 0; i < k; ++i) {
      if (const auto it = stats[i].counts.find(unit);
          it != stats[i].counts.end() && it->second > 0.0) {
        p[i] = it->second / totals[i];
      }
    }
    probs.push_back(std::move(p));
  }

  EmResult result;
  result.weights.assign(k, 1.0 / static_cast<double>(k));
  std::vector<double> next(k);
  auto pass = [&](bool update) {
    double ll = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t t = 0; t < counts.size(); ++t) {
      double mix = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        mix += result.weights[i] * probs[t][i];
      ll += counts[t] * std::log(mix);
      if (update) {
        for (std::size_t i = 0; i < k; ++i) {
          next[i] += counts[t] * result.weights[i] * probs[t][i] / mix;
        }
      }
    }
    return ll;
  };

  result.log_likelihood.push_back(pass(false));
  const double n = static_cast<double>(dev.size());
  for (int it = 0; it < max_iterations; ++it) {
    pass(true);
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      next[i] /= n;
      change = std::max(change, std::abs(next[i] - result.weights[i]));
    }
    result.weights = next;
    ++result.iterations;
    result.log_likelihood.push_back(pass(false));
    if (change < tol) break;
  }
  return result;
}

}  // namespace oovfst
