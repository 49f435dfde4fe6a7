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

#include "oovfst/wfst.h"

#include <string>
#include <utility>

#include "oovfst/errors.h"

namespace oovfst {

Wfst::Wfst() : isyms_(std::make_shared<const SymbolTable>()), osyms_(isyms_) {}

bool Wfst::IsAcceptor() const {
  for (const auto &state : states_) {
    for (const auto &arc : state.arcs) {
      if (arc.ilabel != arc.olabel) return false;
    }
  }
  return true;
}

bool operator==(const Wfst &a, const Wfst &b) {
  return a.start_ == b.start_ && a.states_ == b.states_ &&
         Compatible(a.isyms_, b.isyms_) && Compatible(a.osyms_, b.osyms_);
}

WfstBuilder::WfstBuilder(SymbolTablePtr isyms, SymbolTablePtr osyms)
    : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {
  if (!isyms_ || !osyms_) {
    throw InvalidArgumentError("transducer needs both symbol tables");
  }
}

StateId WfstBuilder::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void WfstBuilder::ReserveStates(StateId n) { states_.reserve(n); }

void WfstBuilder::SetFinal(StateId s, TropicalWeight w) {
  states_.at(s).final = w;
}

void WfstBuilder::AddArc(StateId s, const Arc &arc) {
  states_.at(s).arcs.push_back(arc);
}

Wfst WfstBuilder::Build() && {
  const auto n = static_cast<StateId>(states_.size());
  if (n == 0) {
    if (start_ != kNoStateId)
      throw InvalidArgumentError("start without states");
  } else if (start_ < 0 || start_ >= n) {
    throw InvalidArgumentError("start state out of range");
  }
  for (StateId s = 0; s < n; ++s) {
    const auto &state = states_[s];
    if (!state.final.IsValid()) {
      throw InvalidArgumentError("negative final weight at state " +
                                 std::to_string(s));
    }
    for (const auto &arc : state.arcs) {
      if (arc.nextstate < 0 || arc.nextstate >= n) {
        throw InvalidArgumentError("arc target out of range at state " +
                                   std::to_string(s));
      }
      if (!isyms_->Contains(arc.ilabel) || !osyms_->Contains(arc.olabel)) {
        throw InvalidArgumentError("unregistered arc label at state " +
                                   std::to_string(s));
      }
      if (!arc.weight.IsValid() || arc.weight.IsZero()) {
        throw InvalidArgumentError("arc weight must be finite and >= 0");
      }
    }
  }
  Wfst t;
  t.states_ = std::move(states_);
  t.start_ = start_;
  t.isyms_ = std::move(isyms_);
  t.osyms_ = std::move(osyms_);
  return t;
}

}  // namespace oovfst
