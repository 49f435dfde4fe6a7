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

#include "oovfst/lexicon.h"

#include <algorithm>

#include "oovfst/errors.h"
#include "oovfst/utf8.h"

namespace oovfst {

bool Lexicon::Add(const std::string &word, const Pronunciation &pronunciation) {
  if (word.empty()) throw InvalidArgumentError("empty word");
  if (pronunciation.empty()) {
    throw InvalidArgumentError("empty pronunciation for \"" + word + "\"");
  }
  auto &prons = entries_[word];
  if (std::find(prons.begin(), prons.end(), pronunciation) != prons.end()) {
    ++duplicates_;
    return false;
  }
  prons.push_back(pronunciation);
  ++num_pronunciations_;
  return true;
}

Lexicon Lexicon::Parse(std::string_view text) {
  Lexicon lexicon;
  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(lineno, "missing TAB");
    const auto word_tokens = SplitWhitespace(line.substr(0, tab));
    if (word_tokens.size() != 1) {
      throw ParseError(
          lineno, word_tokens.empty() ? "blank word" : "word contains spaces");
    }
    const auto pron = SplitWhitespace(line.substr(tab + 1));
    if (pron.empty()) throw ParseError(lineno, "blank pronunciation");
    lexicon.Add(word_tokens[0], pron);
  }
  return lexicon;
}

NgramModel BuildPhonemeLm(const Lexicon &lexicon, const TrainOptions &options) {
  TokenCorpus corpus;
  for (const auto &[word, prons] : lexicon.Entries()) {
    for (const auto &p : prons) corpus.push_back({p, 1.0});
  }
  return Train(corpus, options);
}

NgramModel BuildGraphemeLm(const Lexicon &lexicon,
                           const TrainOptions &options) {
  TokenCorpus corpus;
  for (const auto &[word, prons] : lexicon.Entries()) {
    corpus.push_back({SplitCodePoints(word), 1.0});
  }
  return Train(corpus, options);
}

}  // namespace oovfst
