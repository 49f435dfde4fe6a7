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

// Unweighted epsilon-NFAs used internally by the rule compiler.

#ifndef OOVFST_SRC_NFA_H_
#define OOVFST_SRC_NFA_H_

#include <utility>
#include <vector>

#include "oovfst/rewrite-rule.h"
#include "oovfst/symbol-table.h"

namespace oovfst::internal {

// Matches any non-epsilon symbol.
inline constexpr Label kAnyLabel = -2;

// Sorted, duplicate-free set of NFA states.
using StateSet = std::vector<int>;

class Nfa {
 public:
  int AddState();
  int NumStates() const { return static_cast<int>(states_.size()); }
  void AddEpsilon(int from, int to) { states_[from].epsilons.push_back(to); }
  void AddArc(int from, Label label, int to) {
    states_[from].arcs.emplace_back(label, to);
  }
  void SetFinal(int s, bool final = true) { states_[s].final = final; }
  bool IsFinal(int s) const { return states_[s].final; }
  int Start() const { return start_; }
  void SetStart(int s) { start_ = s; }

  // Appends all states of `other`; returns the id offset.
  int Append(const Nfa &other);

  // Marks states that can reach a final state, and final states that loop on
  // every symbol (once entered, acceptance is certain). Call after the
  // automaton is complete.
  void Analyze();
  bool Live(int s) const { return live_[s]; }
  bool Universal(int s) const { return universal_[s]; }

  // Epsilon closure, restricted to live states.
  StateSet Closure(StateSet set) const;
  // Symbol transitions only (no closure).
  StateSet Step(const StateSet &set, Label label) const;
  bool AnyFinal(const StateSet &set) const;
  bool AnyUniversal(const StateSet &set) const;

 private:
  struct State {
    std::vector<std::pair<Label, int>> arcs;
    std::vector<int> epsilons;
    bool final = false;
  };
  std::vector<State> states_;
  int start_ = 0;
  std::vector<bool> live_;
  std::vector<bool> universal_;
};

// Thompson construction over labels from `symbols`. The result has a single
// start and a single final state.
Nfa RegexToNfa(const Regex &regex, const SymbolTable &symbols);

// Language `prefix` followed by any string: a `Sigma*` sink is appended
// after the final state.
Nfa FollowedByAnything(Nfa nfa);

// Any string followed by the language of `nfa`.
Nfa PrecededByAnything(const Nfa &nfa);

// L(a) L(b). Returns the automaton and the offset of b's states.
std::pair<Nfa, int> ConcatNfa(const Nfa &a, const Nfa &b);

}  // namespace oovfst::internal

#endif  // OOVFST_SRC_NFA_H_
