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

// Rational and search operations over Wfst. Every function is pure: inputs
// are never modified and results are fresh machines.

#ifndef OOVFST_OPERATIONS_H_
#define OOVFST_OPERATIONS_H_

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "oovfst/wfst.h"

namespace oovfst {

// Chain acceptor of exactly `tokens`, all weights One().
Wfst LinearAcceptor(std::span<const std::string> tokens, SymbolTablePtr syms);
Wfst LinearAcceptor(std::span<const Label> labels, SymbolTablePtr syms);

// Identity transducer accepting every string over the non-epsilon labels of
// `syms`, or only over `labels` when given.
Wfst Identity(SymbolTablePtr syms);
Wfst Identity(SymbolTablePtr syms, std::span<const Label> labels);

// Weighted composition with the three-state epsilon-matching filter.
// Requires Compatible(a.OutputSymbols(), b.InputSymbols()).
Wfst Compose(const Wfst &a, const Wfst &b);

// Swaps input and output labels and tables.
Wfst Invert(const Wfst &t);

enum class ProjectSide { kInput, kOutput };
Wfst Project(const Wfst &t, ProjectSide side);

// Rational operations; tables of both operands must agree.
Wfst Union(const Wfst &a, const Wfst &b);
Wfst Concat(const Wfst &a, const Wfst &b);
Wfst Closure(const Wfst &a);

// Removes every epsilon:epsilon arc, folding its weight into the arcs and
// final weights reached through it.
Wfst RemoveEpsilon(const Wfst &t);

// Drops states that are not both reachable and co-reachable. The start
// becomes state 0; other survivors keep their relative order.
Wfst Connect(const Wfst &t);

// Multiplies every arc and final cost by `scale` (>= 0).
Wfst ScaleWeights(const Wfst &t, double scale);

enum class MissingSymbol { kError, kDropArc };

// Re-expresses `t` over new tables by symbol string.
Wfst Relabel(const Wfst &t, SymbolTablePtr isyms, SymbolTablePtr osyms,
             MissingSymbol policy = MissingSymbol::kError);

// Shortest distance from every state to a final state (Zero() when none).
std::vector<TropicalWeight> ShortestDistanceToFinal(const Wfst &t);

struct Path {
  std::vector<std::string> input;   // epsilons removed
  std::vector<std::string> output;  // epsilons removed
  TropicalWeight weight;

  friend bool operator==(const Path &, const Path &) = default;
};

// Total order used to rank paths: weight, then output, then input.
bool PathLess(const Path &a, const Path &b);

// The `n` best accepting paths, ascending by PathLess. Paths are distinct
// as arc sequences. Each state is expanded at most `n` times, plus up to `n`
// further expansions whose prefix cost ties the n-th one.
std::vector<Path> ShortestPaths(const Wfst &t, std::size_t n);

struct OutputString {
  std::vector<Label> labels;
  TropicalWeight weight;
};

// The `n` cheapest distinct output strings (epsilons removed), each with the
// minimum cost over all of its paths, ascending by cost. Strings longer than
// `max_output_length` are not explored. Ties at the n-th cost are all kept in
// the returned list, so it may exceed `n`; callers order and truncate.
std::vector<OutputString> ShortestDistinctOutputs(
    const Wfst &t, std::size_t n,
    std::size_t max_output_length = std::numeric_limits<std::size_t>::max());

}  // namespace oovfst

#endif  // OOVFST_OPERATIONS_H_
