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

// Corpus balancing for language-model training data: sampling factors,
// deterministic sub/oversampling, unigram-mixture vocabulary selection and
// EM estimation of mixture weights.

#ifndef OOVFST_CORPUS_H_
#define OOVFST_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oovfst {

struct SamplingConfig {
  double n_rnnlm = 1.0;  // target sentence count
  double f_max = 10.0;
  double beta = 0.5;
};

// min(f_max, (w * n_rnnlm / n)^beta). Throws InvalidArgumentError for
// n == 0, w < 0 or a config outside n_rnnlm >= 1, f_max >= 1,
// 0 < beta <= 1.
double SamplingFactor(double w, std::uint64_t n, const SamplingConfig &config);

// splitmix64: advances `state` and returns the next output.
std::uint64_t SplitMix64(std::uint64_t &state);

// FNV-1a, 64-bit.
std::uint64_t Fnv1a64(std::string_view text);

// Emits each sentence floor(f) times, plus once more when the draw for
// (seed, corpus_id, index) falls below frac(f). The draw is the first
// splitmix64 output for state seed ^ Fnv1a64(corpus_id) ^ index, scaled to
// [0, 1) by its top 53 bits. Copies of a sentence are adjacent.
std::vector<std::string> Materialize(std::span<const std::string> sentences,
                                     double f, std::uint64_t seed,
                                     std::string_view corpus_id);

struct CorpusStats {
  std::string id;
  std::uint64_t sentences = 0;
  std::map<std::string, double> counts;

  double Total() const;
};

// Whitespace-separated units of every sentence.
CorpusStats ComputeStats(std::string id,
                         std::span<const std::string> sentences);

// p(u) = sum_i w_i count_i(u) / total_i. Throws InvalidArgumentError when
// the weights do not align with `stats` or a corpus has no units.
std::map<std::string, double> MixtureProbabilities(
    std::span<const CorpusStats> stats, std::span<const double> weights);

// The k most probable units under the mixture, ties in byte order.
std::vector<std::string> SelectVocab(std::span<const CorpusStats> stats,
                                     std::span<const double> weights,
                                     std::size_t k);

inline constexpr double kUnitFloor = 1e-10;

struct EmResult {
  std::vector<double> weights;
  // Dev-set log-likelihood (natural log) before the first update and after
  // each one.
  std::vector<double> log_likelihood;
  int iterations = 0;
};

// EM for the weights of a unigram mixture on `dev` tokens, starting from
// uniform weights. A unit a corpus has never seen gets probability
// kUnitFloor from it. Stops when no weight moves by tol or more, or after
// max_iterations. Throws InvalidArgumentError on an empty dev set.
EmResult EstimateWeights(std::span<const std::string> dev,
                         std::span<const CorpusStats> stats, int max_iterations,
                         double tol);

// File formats.

struct ManifestEntry {
  std::string id;
  std::filesystem::path path;
};

// `id<TAB>path` lines; blank lines and lines starting with # are skipped.
// Relative paths are resolved against `base`. Throws ParseError.
std::vector<ManifestEntry> ParseManifest(std::string_view text,
                                         const std::filesystem::path &base);

// Lines of a UTF-8 text file without line terminators. Throws
// std::runtime_error when the file cannot be read.
std::vector<std::string> ReadLines(const std::filesystem::path &path);

// `unit<TAB>count`, units in byte order.
std::string FormatCounts(const std::map<std::string, double> &counts);
std::map<std::string, double> ParseCounts(std::string_view text);

// `corpus_id<TAB>weight` with 9 decimals.
std::string FormatWeights(std::span<const std::string> ids,
                          std::span<const double> weights);
std::vector<std::pair<std::string, double>> ParseWeights(std::string_view text);

}  // namespace oovfst

#endif  // OOVFST_CORPUS_H_
