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

// Context-dependent rewrite rules (phi -> psi / lambda _ rho) and the rule
// file parser.
//
// Rule file syntax, one rule per line:
//
//   !alphabet: a b c ...          input symbols (may repeat, accumulates)
//   !phonemes: p1 p2 ...          output symbols (may repeat, accumulates)
//   PHI -> PSI / LAMBDA _ RHO [<weight>] [optional] [;]
//   # comment
//
// PHI, LAMBDA and RHO are space-separated symbols combined with `|`, `(`,
// `)` and `?`. `0` is the empty string. LAMBDA may start with [BOS] and RHO
// may end with [EOS]. PSI is a plain symbol sequence, `0` for deletion. The
// `/ LAMBDA _ RHO` part may be omitted. A weight is written in angle
// brackets, e.g. `<1.5>`.

#ifndef OOVFST_REWRITE_RULE_H_
#define OOVFST_REWRITE_RULE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oovfst/symbol-table.h"
#include "oovfst/weight.h"

namespace oovfst {

// Unweighted regular expression over symbols.
struct Regex {
  enum class Kind { kEmpty, kSymbol, kConcat, kUnion, kOptional };

  Kind kind = Kind::kEmpty;
  std::string symbol;  // kSymbol only
  std::vector<Regex> children;

  static Regex Empty() { return Regex{}; }
  static Regex Symbol(std::string s) {
    return Regex{Kind::kSymbol, std::move(s), {}};
  }

  bool AcceptsEmpty() const;
  // Every symbol mentioned, in order of appearance.
  void CollectSymbols(std::vector<std::string> &out) const;
};

struct RewriteRule {
  Regex phi;
  std::vector<std::string> psi;
  Regex lambda;
  Regex rho;
  bool bos = false;  // lambda anchored at the start of the string
  bool eos = false;  // rho anchored at the end of the string
  TropicalWeight weight = TropicalWeight::One();
  bool optional = false;
  std::size_t line = 0;
};

struct RuleSet {
  std::vector<RewriteRule> rules;
  SymbolTablePtr alphabet;  // input (grapheme) symbols
  SymbolTablePtr phonemes;  // output symbols

  // Alphabet followed by the phonemes not already in it. Intermediate
  // strings of a cascade range over this table.
  SymbolTablePtr CascadeSymbols() const;
};

// Throws ParseError naming the offending line.
RuleSet ParseRules(std::string_view text);

// Parses a single rule line; symbols are not checked against any alphabet.
RewriteRule ParseRule(std::string_view line, std::size_t lineno = 0);

}  // namespace oovfst

#endif  // OOVFST_REWRITE_RULE_H_
