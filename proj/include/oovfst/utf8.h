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

// Minimal UTF-8 helpers for splitting words into graphemes.

#ifndef OOVFST_UTF8_H_
#define OOVFST_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace oovfst {

// Splits `text` into code points, each returned as its UTF-8 bytes.
// Throws InvalidArgumentError on malformed input.
std::vector<std::string> SplitCodePoints(std::string_view text);

// Lowercases ASCII, Latin-1 and Latin Extended-A letters; everything else is
// returned unchanged.
std::string ToLower(std::string_view text);

// Splits on runs of spaces and tabs.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string> &tokens,
                 std::string_view separator);

}  // namespace oovfst

#endif  // OOVFST_UTF8_H_
