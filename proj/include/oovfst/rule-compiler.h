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

// Compilation of rewrite rules into transducers, and string application.

#ifndef OOVFST_RULE_COMPILER_H_
#define OOVFST_RULE_COMPILER_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oovfst/rewrite-rule.h"
#include "oovfst/wfst.h"

namespace oovfst {

// Transducer over `symbols` (input and output) implementing `rule`.
//
// Obligatory rules rewrite left to right with leftmost-longest matching:
// scanning from the left, at each position the longest phi match whose left
// context (the input before it) ends in lambda and whose right context (the
// input after it) starts with rho is replaced by psi, and scanning resumes
// after the match. Positions with no such match are copied. Optional rules
// may apply any such match, of any length, at any position, or copy.
//
// Contexts are evaluated on the rule's input string. The machine is built
// directly as a product of the context automata; no markers are inserted.
Wfst CompileRule(const RewriteRule &rule, const SymbolTablePtr &symbols);

struct CascadeOptions {
  // Compile every rule as optional regardless of its flag.
  bool all_optional = false;
};

// The rules composed in file order, restricted to alphabet symbols on the
// input and phoneme symbols on the output, epsilon-removed. Input table is
// rules.alphabet, output table is rules.phonemes.
Wfst CompileRuleSet(const RuleSet &rules, const CascadeOptions &options = {});

struct Rewrite {
  std::vector<std::string> output;
  TropicalWeight weight;

  friend bool operator==(const Rewrite &, const Rewrite &) = default;
};

struct ApplyOptions {
  std::size_t max_outputs = 1000;
  std::size_t max_output_length = 256;
};

// Distinct outputs of `t` for the input token sequence, ascending by weight
// then output. Throws UnknownSymbolError for tokens outside t's input table.
std::vector<Rewrite> Apply(const Wfst &t, std::span<const std::string> tokens,
                           const ApplyOptions &options = {});

// As above, with `text` split into code points.
std::vector<Rewrite> ApplyString(const Wfst &t, std::string_view text,
                                 const ApplyOptions &options = {});

}  // namespace oovfst

#endif  // OOVFST_RULE_COMPILER_H_
