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

// Grapheme-to-phoneme conversion and recovery of spellings for phoneme
// sequences.

#ifndef OOVFST_RECOVERY_H_
#define OOVFST_RECOVERY_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oovfst/rule-compiler.h"
#include "oovfst/weight.h"
#include "oovfst/wfst.h"

namespace oovfst {

// Applies the compiled rule cascade to the lowercased word. Throws
// UnknownSymbolError naming a grapheme outside the rule alphabet.
std::vector<Rewrite> G2p(std::string_view word, const Wfst &rules,
                         const ApplyOptions &options = {});

struct RecoveryConfig {
  std::size_t n_best = 10;
  double lm_scale = 1.0;
  std::size_t max_candidate_length = 40;
};

struct CandidateWord {
  std::string graphemes;
  TropicalWeight cost;

  friend bool operator==(const CandidateWord &,
                         const CandidateWord &) = default;
};

// Ranks spellings of phoneme sequences: the output projection of
// phonemes o inverse_rules, composed with the grapheme LM acceptor scaled by
// lm_scale. The LM is given unscaled, over any table; its labels are mapped
// onto the inverse rules' output symbols by string and arcs with other
// symbols are dropped.
class Recoverer {
 public:
  Recoverer(Wfst inverse_rules, const Wfst &grapheme_lm,
            const RecoveryConfig &config);

  // Candidates ascending by cost, ties in byte order of the spelling,
  // unique by spelling, at most n_best. Empty when nothing is recoverable.
  // Throws UnknownSymbolError for phonemes outside the inverse rules' input
  // table and InvalidArgumentError for an empty sequence.
  std::vector<CandidateWord> Recover(
      std::span<const std::string> phonemes) const;

  const RecoveryConfig &Config() const { return config_; }

 private:
  Wfst inverse_;
  Wfst lm_;
  RecoveryConfig config_;
};

std::vector<CandidateWord> Recover(std::span<const std::string> phonemes,
                                   const Wfst &inverse_rules,
                                   const Wfst &grapheme_lm,
                                   const RecoveryConfig &config);

}  // namespace oovfst

#endif  // OOVFST_RECOVERY_H_
