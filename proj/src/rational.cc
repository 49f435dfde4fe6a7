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

#include <string>
#include <vector>

#include "oovfst/errors.h"
#include "oovfst/operations.h"

namespace oovfst {
namespace {

void RequireSameTables(const Wfst &a, const Wfst &b, const char *op) {
  if (!Compatible(a.InputSymbols(), b.InputSymbols()) ||
      !Compatible(a.OutputSymbols(), b.OutputSymbols())) {
    throw TableMismatchError(std::string(op) + ": symbol tables differ");
  }
}

// Copies all states of `t` into `builder`, returning the id offset.
StateId Append(WfstBuilder &builder, const Wfst &t) {
  const StateId offset = builder.NumStates();
  for (StateId s = 0; s < t.NumStates(); ++s) builder.AddState();
  for (StateId s = 0; s < t.NumStates(); ++s) {
    for (Arc arc : t.Arcs(s)) {
      arc.nextstate += offset;
      builder.AddArc(s + offset, arc);
    }
    builder.SetFinal(s + offset, t.Final(s));
  }
  return offset;
}

template <typename Fn>
Wfst MapArcs(const Wfst &t, SymbolTablePtr isyms, SymbolTablePtr osyms, Fn fn) {
  WfstBuilder builder(std::move(isyms), std::move(osyms));
  for (StateId s = 0; s < t.NumStates(); ++s) builder.AddState();
  for (StateId s = 0; s < t.NumStates(); ++s) {
    for (const Arc &arc : t.Arcs(s)) builder.AddArc(s, fn(arc));
    builder.SetFinal(s, t.Final(s));
  }
  builder.SetStart(t.Start());
  return std::move(builder).Build();
}

}  // namespace

Wfst LinearAcceptor(std::span<const std::string> tokens, SymbolTablePtr syms) {
  std::vector<Label> labels;
  labels.reserve(tokens.size());
  for (const auto &token : tokens) labels.push_back(syms->Find(token));
  return LinearAcceptor(labels, std::move(syms));
}

Wfst LinearAcceptor(std::span<const Label> labels, SymbolTablePtr syms) {
  WfstBuilder builder(syms, syms);
  StateId s = builder.AddState();
  builder.SetStart(s);
  for (Label label : labels) {
    if (!syms->Contains(label)) {
      throw UnknownSymbolError("#" + std::to_string(label));
    }
    const StateId next = builder.AddState();
    builder.AddArc(s, label, label, TropicalWeight::One(), next);
    s = next;
  }
  builder.SetFinal(s);
  return std::move(builder).Build();
}

Wfst Identity(SymbolTablePtr syms) {
  std::vector<Label> labels;
  for (Label l = 1; l < static_cast<Label>(syms->Size()); ++l) {
    labels.push_back(l);
  }
  return Identity(std::move(syms), labels);
}

Wfst Identity(SymbolTablePtr syms, std::span<const Label> labels) {
  WfstBuilder builder(syms, syms);
  const StateId s = builder.AddState();
  builder.SetStart(s);
  builder.SetFinal(s);
  for (Label label : labels) {
    if (label == kEpsilon) continue;
    builder.AddArc(s, label, label, TropicalWeight::One(), s);
  }
  return std::move(builder).Build();
}

Wfst Invert(const Wfst &t) {
  return MapArcs(t, t.OutputSymbols(), t.InputSymbols(), [](Arc arc) {
    std::swap(arc.ilabel, arc.olabel);
    return arc;
  });
}

Wfst Project(const Wfst &t, ProjectSide side) {
  const bool input = side == ProjectSide::kInput;
  const auto &syms = input ? t.InputSymbols() : t.OutputSymbols();
  return MapArcs(t, syms, syms, [input](Arc arc) {
    if (input) {
      arc.olabel = arc.ilabel;
    } else {
      arc.ilabel = arc.olabel;
    }
    return arc;
  });
}

Wfst Union(const Wfst &a, const Wfst &b) {
  RequireSameTables(a, b, "union");
  if (a.Empty()) return b;
  if (b.Empty()) return a;
  WfstBuilder builder(a.InputSymbols(), a.OutputSymbols());
  const StateId start = builder.AddState();
  builder.SetStart(start);
  const StateId oa = Append(builder, a);
  const StateId ob = Append(builder, b);
  builder.AddArc(start, kEpsilon, kEpsilon, TropicalWeight::One(),
                 a.Start() + oa);
  builder.AddArc(start, kEpsilon, kEpsilon, TropicalWeight::One(),
                 b.Start() + ob);
  return std::move(builder).Build();
}

Wfst Concat(const Wfst &a, const Wfst &b) {
  RequireSameTables(a, b, "concat");
  if (a.Empty()) return a;
  if (b.Empty()) return b;
  WfstBuilder builder(a.InputSymbols(), a.OutputSymbols());
  const StateId oa = Append(builder, a);
  const StateId ob = Append(builder, b);
  builder.SetStart(a.Start() + oa);
  for (StateId s = 0; s < a.NumStates(); ++s) {
    if (!a.IsFinal(s)) continue;
    builder.AddArc(s + oa, kEpsilon, kEpsilon, a.Final(s), b.Start() + ob);
    builder.SetFinal(s + oa, TropicalWeight::Zero());
  }
  return std::move(builder).Build();
}

Wfst Closure(const Wfst &a) {
  WfstBuilder builder(a.InputSymbols(), a.OutputSymbols());
  const StateId start = builder.AddState();
  builder.SetStart(start);
  builder.SetFinal(start);
  if (a.Empty()) return std::move(builder).Build();
  const StateId oa = Append(builder, a);
  builder.AddArc(start, kEpsilon, kEpsilon, TropicalWeight::One(),
                 a.Start() + oa);
  for (StateId s = 0; s < a.NumStates(); ++s) {
    if (!a.IsFinal(s)) continue;
    builder.AddArc(s + oa, kEpsilon, kEpsilon, a.Final(s), a.Start() + oa);
  }
  return std::move(builder).Build();
}

Wfst Connect(const Wfst &t) {
  const StateId n = t.NumStates();
  if (t.Empty()) return t;
  std::vector<bool> accessible(n, false);
  std::vector<StateId> order;
  std::vector<StateId> stack{t.Start()};
  accessible[t.Start()] = true;
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    order.push_back(s);
    for (const Arc &arc : t.Arcs(s)) {
      reverse[arc.nextstate].push_back(s);
      if (!accessible[arc.nextstate]) {
        accessible[arc.nextstate] = true;
        stack.push_back(arc.nextstate);
      }
    }
  }
  std::vector<bool> coaccessible(n, false);
  for (StateId s : order) {
    if (t.IsFinal(s)) {
      coaccessible[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!coaccessible[p]) {
        coaccessible[p] = true;
        stack.push_back(p);
      }
    }
  }
  WfstBuilder builder(t.InputSymbols(), t.OutputSymbols());
  if (!coaccessible[t.Start()]) return std::move(builder).Build();
  // Keep the visit order stable: start first, then ascending original id.
  std::vector<StateId> remap(n, kNoStateId);
  remap[t.Start()] = builder.AddState();
  for (StateId s = 0; s < n; ++s) {
    if (s != t.Start() && accessible[s] && coaccessible[s]) {
      remap[s] = builder.AddState();
    }
  }
  builder.SetStart(remap[t.Start()]);
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoStateId) continue;
    builder.SetFinal(remap[s], t.Final(s));
    for (Arc arc : t.Arcs(s)) {
      if (remap[arc.nextstate] == kNoStateId) continue;
      arc.nextstate = remap[arc.nextstate];
      builder.AddArc(remap[s], arc);
    }
  }
  return std::move(builder).Build();
}

Wfst ScaleWeights(const Wfst &t, double scale) {
  if (!(scale >= 0.0)) throw InvalidArgumentError("weight scale must be >= 0");
  auto scaled = [scale](TropicalWeight w) {
    if (w.IsZero()) return w;
    return TropicalWeight(w.Value() * scale);
  };
  WfstBuilder builder(t.InputSymbols(), t.OutputSymbols());
  for (StateId s = 0; s < t.NumStates(); ++s) builder.AddState();
  for (StateId s = 0; s < t.NumStates(); ++s) {
    for (Arc arc : t.Arcs(s)) {
      arc.weight = scaled(arc.weight);
      builder.AddArc(s, arc);
    }
    builder.SetFinal(s, scaled(t.Final(s)));
  }
  builder.SetStart(t.Start());
  return std::move(builder).Build();
}

Wfst Relabel(const Wfst &t, SymbolTablePtr isyms, SymbolTablePtr osyms,
             MissingSymbol policy) {
  auto map_labels = [](const SymbolTable &from, const SymbolTable &to) {
    std::vector<Label> map(from.Size(), kNoStateId);
    for (Label l = 0; l < static_cast<Label>(from.Size()); ++l) {
      const auto &symbol = from.Find(l);
      if (to.Contains(symbol)) map[l] = to.Find(symbol);
    }
    return map;
  };
  const auto imap = map_labels(*t.InputSymbols(), *isyms);
  const auto omap = map_labels(*t.OutputSymbols(), *osyms);
  WfstBuilder builder(isyms, osyms);
  for (StateId s = 0; s < t.NumStates(); ++s) builder.AddState();
  for (StateId s = 0; s < t.NumStates(); ++s) {
    for (Arc arc : t.Arcs(s)) {
      const Label il = imap[arc.ilabel];
      const Label ol = omap[arc.olabel];
      if (il == kNoStateId || ol == kNoStateId) {
        if (policy == MissingSymbol::kDropArc) continue;
        throw UnknownSymbolError(il == kNoStateId
                                     ? t.InputSymbols()->Find(arc.ilabel)
                                     : t.OutputSymbols()->Find(arc.olabel));
      }
      arc.ilabel = il;
      arc.olabel = ol;
      builder.AddArc(s, arc);
    }
    builder.SetFinal(s, t.Final(s));
  }
  builder.SetStart(t.Start());
  return std::move(builder).Build();
}

}  // namespace oovfst
