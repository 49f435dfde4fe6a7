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

#include "oovfst/corpus.h"
#include "oovfst/errors.h"

namespace oovfst {

double SamplingFactor(double w, std::uint64_t n, const SamplingConfig &config) {
  if (n == 0) throw InvalidArgumentError("corpus has no sentences");
  if (!(w >= 0.0)) throw InvalidArgumentError("negative corpus weight");
  if (!(config.n_rnnlm >= 1.0))
    throw InvalidArgumentError("target must be >= 1");
  if (!(config.f_max >= 1.0)) throw InvalidArgumentError("f_max must be >= 1");
  if (!(config.beta > 0.0 && config.beta <= 1.0)) {
    throw InvalidArgumentError("beta must be in (0, 1]");
  }
  const double ratio = w * config.n_rnnlm / static_cast<double>(n);
  return std::min(config.f_max, std::pow(ratio, config.beta));
}

std::uint64_t SplitMix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> Materialize(std::span<const std::string> sentences,
                                     double f, std::uint64_t seed,
                                     std::string_view corpus_id) {
  if (!(f >= 0.0) || std::isinf(f)) {
    throw InvalidArgumentError("sampling factor must be finite and >= 0");
  }
  const double whole = std::floor(f);
  const double frac = f - whole;
  const auto copies = static_cast<std::size_t>(whole);
  const std::uint64_t base = seed ^ Fnv1a64(corpus_id);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(std::ceil(f * sentences.size())));
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::size_t n = copies;
    if (frac > 0.0) {
      std::uint64_t state = base ^ static_cast<std::uint64_t>(i);
      const double u = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
      if (u < frac) ++n;
    }
    for (std::size_t k = 0; k < n; ++k) out.push_back(sentences[i]);
  }
  return out;
}

}  // namespace oovfst
