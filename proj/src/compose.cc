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

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "oovfst/errors.h"
#include "oovfst/operations.h"

namespace oovfst {
namespace {

// Epsilon-matching filter states. After `a` takes an output-epsilon move
// alone only `a` may continue alone; symmetrically for `b`. A joint
// epsilon:epsilon move is taken only from the neutral state. This keeps
// exactly one interleaving of epsilon moves between consecutive matches.
enum FilterState : std::uint8_t { kNeutral = 0, kAMoved = 1, kBMoved = 2 };

class Composer {
 public:
  Composer(const Wfst &a, const Wfst &b)
      : a_(a),
        b_(b),
        builder_(a.InputSymbols(), b.OutputSymbols()),
        sorted_b_(b.NumStates()),
        sorted_ready_(b.NumStates(), false) {}

  Wfst Run() && {
    if (a_.Empty() || b_.Empty()) return std::move(builder_).Build();
    builder_.SetStart(FindState(a_.Start(), b_.Start(), kNeutral));
    while (!queue_.empty()) {
      const Triple t = queue_.front();
      queue_.pop_front();
      Expand(t);
    }
    return Connect(std::move(builder_).Build());
  }

 private:
  struct Triple {
    StateId a;
    StateId b;
    FilterState filter;
    StateId id;
  };

  StateId FindState(StateId sa, StateId sb, FilterState f) {
    const std::uint64_t key = (static_cast<std::uint64_t>(sa) *
                                   static_cast<std::uint64_t>(b_.NumStates()) +
                               static_cast<std::uint64_t>(sb)) *
                                  3 +
                              f;
    auto [it, inserted] = ids_.try_emplace(key, builder_.NumStates());
    if (inserted) {
      builder_.AddState();
      queue_.push_back(Triple{sa, sb, f, it->second});
    }
    return it->second;
  }

  // Arcs of b at `s` sorted by input label.
  const std::vector<Arc> &SortedArcs(StateId s) {
    if (!sorted_ready_[s]) {
      auto arcs = b_.Arcs(s);
      sorted_b_[s].assign(arcs.begin(), arcs.end());
      std::stable_sort(
          sorted_b_[s].begin(), sorted_b_[s].end(),
          [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
      sorted_ready_[s] = true;
    }
    return sorted_b_[s];
  }

  void Expand(const Triple &t) {
    builder_.SetFinal(t.id, Times(a_.Final(t.a), b_.Final(t.b)));
    const auto &barcs = SortedArcs(t.b);
    for (const Arc &ea : a_.Arcs(t.a)) {
      auto [lo, hi] = std::equal_range(
          barcs.begin(), barcs.end(), Arc{ea.olabel, 0, {}, 0},
          [](const Arc &x, const Arc &y) { return x.ilabel < y.ilabel; });
      if (ea.olabel == kEpsilon) {
        if (t.filter != kBMoved) {
          const StateId next = FindState(ea.nextstate, t.b, kAMoved);
          builder_.AddArc(t.id, ea.ilabel, kEpsilon, ea.weight, next);
        }
        if (t.filter != kNeutral) continue;
      }
      for (auto it = lo; it != hi; ++it) {
        const StateId next = FindState(ea.nextstate, it->nextstate, kNeutral);
        builder_.AddArc(t.id, ea.ilabel, it->olabel,
                        Times(ea.weight, it->weight), next);
      }
    }
    if (t.filter == kAMoved) return;
    for (const Arc &eb : barcs) {
      if (eb.ilabel != kEpsilon) break;
      const StateId next = FindState(t.a, eb.nextstate, kBMoved);
      builder_.AddArc(t.id, kEpsilon, eb.olabel, eb.weight, next);
    }
  }

  const Wfst &a_;
  const Wfst &b_;
  WfstBuilder builder_;
  std::unordered_map<std::uint64_t, StateId> ids_;
  std::deque<Triple> queue_;
  std::vector<std::vector<Arc>> sorted_b_;
  std::vector<bool> sorted_ready_;
};

}  // namespace

Wfst Compose(const Wfst &a, const Wfst &b) {
  if (!Compatible(a.OutputSymbols(), b.InputSymbols())) {
    throw TableMismatchError(
        "compose: output symbols of the left machine differ from input "
        "symbols of the right machine");
  }
  return Composer(a, b).Run();
}

}  // namespace oovfst
