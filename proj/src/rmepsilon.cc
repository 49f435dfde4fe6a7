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

#include <functional>
#include <map>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "oovfst/operations.h"

namespace oovfst {
namespace {

bool IsEpsilonArc(const Arc &arc) {
  return arc.ilabel == kEpsilon && arc.olabel == kEpsilon;
}

// Tropical shortest distances from `source` over epsilon:epsilon arcs only.
// Weights are non-negative, so Dijkstra is exact.
std::vector<std::pair<StateId, TropicalWeight>> EpsilonClosure(
    const Wfst &t, StateId source, std::vector<double> &dist,
    std::vector<StateId> &touched) {
  using Entry = std::pair<double, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0.0;
  touched.push_back(source);
  heap.emplace(0.0, source);
  std::vector<std::pair<StateId, TropicalWeight>> closure;
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    closure.emplace_back(s, TropicalWeight(d));
    for (const Arc &arc : t.Arcs(s)) {
      if (!IsEpsilonArc(arc)) continue;
      const double nd = d + arc.weight.Value();
      if (nd < dist[arc.nextstate]) {
        if (dist[arc.nextstate] == TropicalWeight::Zero().Value()) {
          touched.push_back(arc.nextstate);
        }
        dist[arc.nextstate] = nd;
        heap.emplace(nd, arc.nextstate);
      }
    }
  }
  return closure;
}

}  // namespace

Wfst RemoveEpsilon(const Wfst &t) {
  if (t.Empty()) return t;
  const StateId n = t.NumStates();
  WfstBuilder builder(t.InputSymbols(), t.OutputSymbols());
  for (StateId s = 0; s < n; ++s) builder.AddState();
  builder.SetStart(t.Start());
  std::vector<double> dist(n, TropicalWeight::Zero().Value());
  std::vector<StateId> touched;
  for (StateId s = 0; s < n; ++s) {
    const auto closure = EpsilonClosure(t, s, dist, touched);
    for (StateId q : touched) dist[q] = TropicalWeight::Zero().Value();
    touched.clear();
    // Parallel arcs with identical labels and target collapse to their min.
    std::map<std::tuple<Label, Label, StateId>, TropicalWeight> arcs;
    TropicalWeight final = TropicalWeight::Zero();
    for (const auto &[q, d] : closure) {
      final = Plus(final, Times(d, t.Final(q)));
      for (const Arc &arc : t.Arcs(q)) {
        if (IsEpsilonArc(arc)) continue;
        const auto key = std::make_tuple(arc.ilabel, arc.olabel, arc.nextstate);
        const TropicalWeight w = Times(d, arc.weight);
        auto [it, inserted] = arcs.try_emplace(key, w);
        if (!inserted) it->second = Plus(it->second, w);
      }
    }
    for (const auto &[key, w] : arcs) {
      const auto &[il, ol, next] = key;
      builder.AddArc(s, il, ol, w, next);
    }
    builder.SetFinal(s, final);
  }
  return Connect(std::move(builder).Build());
}

}  // namespace oovfst
