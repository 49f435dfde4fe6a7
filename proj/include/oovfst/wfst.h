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

// Immutable weighted finite-state transducers and their builder.

#ifndef OOVFST_WFST_H_
#define OOVFST_WFST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "oovfst/symbol-table.h"
#include "oovfst/weight.h"

namespace oovfst {

using StateId = std::int32_t;

inline constexpr StateId kNoStateId = -1;

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight = TropicalWeight::One();
  StateId nextstate = kNoStateId;

  friend bool operator==(const Arc &, const Arc &) = default;
};

class WfstBuilder;

// A frozen transducer. Construct through WfstBuilder; all operations return
// new machines. Copies share nothing mutable, so instances can be read from
// any number of threads.
class Wfst {
 public:
  // The empty machine: no states, no start, both tables epsilon-only.
  Wfst();

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  std::span<const Arc> Arcs(StateId s) const { return states_[s].arcs; }
  std::size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  TropicalWeight Final(StateId s) const { return states_[s].final; }
  bool IsFinal(StateId s) const { return !states_[s].final.IsZero(); }

  const SymbolTablePtr &InputSymbols() const { return isyms_; }
  const SymbolTablePtr &OutputSymbols() const { return osyms_; }

  bool IsAcceptor() const;
  bool Empty() const { return start_ == kNoStateId; }

  // Same topology, labels, weights and tables.
  friend bool operator==(const Wfst &a, const Wfst &b);

 private:
  friend class WfstBuilder;

  struct State {
    std::vector<Arc> arcs;
    TropicalWeight final = TropicalWeight::Zero();

    friend bool operator==(const State &, const State &) = default;
  };

  std::vector<State> states_;
  StateId start_ = kNoStateId;
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
};

// Single-owner mutable construction. Build() validates every invariant of
// Wfst (valid start, arc targets, registered labels, non-negative weights)
// and throws InvalidArgumentError on violation.
class WfstBuilder {
 public:
  WfstBuilder(SymbolTablePtr isyms, SymbolTablePtr osyms);

  StateId AddState();
  void ReserveStates(StateId n);
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  void SetStart(StateId s) { start_ = s; }
  void SetFinal(StateId s, TropicalWeight w = TropicalWeight::One());
  void AddArc(StateId s, const Arc &arc);
  void AddArc(StateId s, Label ilabel, Label olabel, TropicalWeight w,
              StateId nextstate) {
    AddArc(s, Arc{ilabel, olabel, w, nextstate});
  }

  TropicalWeight Final(StateId s) const { return states_[s].final; }
  std::span<const Arc> Arcs(StateId s) const { return states_[s].arcs; }

  Wfst Build() &&;

 private:
  std::vector<Wfst::State> states_;
  StateId start_ = kNoStateId;
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
};

}  // namespace oovfst

#endif  // OOVFST_WFST_H_
