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

// ARPA text format for NgramModel.
//
// Probabilities and backoffs are log10. An absent backoff is written as
// -99; on reading, -99 means absent and a missing backoff field means 1.
// The <s> unigram carries only a backoff and is written with probability
// -99.

#ifndef OOVFST_ARPA_H_
#define OOVFST_ARPA_H_

#include <string>
#include <string_view>

#include "oovfst/ngram-model.h"

namespace oovfst {

std::string WriteArpa(const NgramModel &model);

// Throws ParseError with the offending line.
NgramModel ReadArpa(std::string_view text);

}  // namespace oovfst

#endif  // OOVFST_ARPA_H_
