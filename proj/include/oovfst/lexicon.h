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

// Pronunciation lexicon: `word<TAB>phoneme phoneme ...` per line.

#ifndef OOVFST_LEXICON_H_
#define OOVFST_LEXICON_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oovfst/ngram-model.h"

namespace oovfst {

using Pronunciation = std::vector<std::string>;

class Lexicon {
 public:
  // Returns false (and counts a duplicate) if the pair is already present.
  // Throws InvalidArgumentError for an empty word or pronunciation.
  bool Add(const std::string &word, const Pronunciation &pronunciation);

  // Words in byte order; pronunciations in insertion order.
  const std::map<std::string, std::vector<Pronunciation>> &Entries() const {
    return entries_;
  }
  std::size_t NumWords() const { return entries_.size(); }
  std::size_t NumPronunciations() const { return num_pronunciations_; }
  std::size_t Duplicates() const { return duplicates_; }
  bool Empty() const { return entries_.empty(); }

  // Throws ParseError on a missing TAB, blank word or blank pronunciation.
  static Lexicon Parse(std::string_view text);

 private:
  std::map<std::string, std::vector<Pronunciation>> entries_;
  std::size_t num_pronunciations_ = 0;
  std::size_t duplicates_ = 0;
};

// Phoneme LM over all pronunciations, one sequence each.
NgramModel BuildPhonemeLm(const Lexicon &lexicon, const TrainOptions &options);

// Grapheme LM over all words split into code points. Pass the rule
// alphabet as options.extra_vocabulary so every spelling the inverse rules
// can produce has a path.
NgramModel BuildGraphemeLm(const Lexicon &lexicon, const TrainOptions &options);

}  // namespace oovfst

#endif  // OOVFST_LEXICON_H_
