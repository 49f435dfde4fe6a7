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

#include "nfa.h"

#include <algorithm>

namespace oovfst::internal {
namespace {

// Returns (start, final) of a fragment built inside `nfa`.
std::pair<int, int> Build(const Regex &regex, const SymbolTable &symbols,
                          Nfa &nfa) {
  const int start = nfa.AddState();
  const int final = nfa.AddState();
  switch (regex.kind) {
    case Regex::Kind::kEmpty:
      nfa.AddEpsilon(start, final);
      break;
    case Regex::Kind::kSymbol:
      nfa.AddArc(start, symbols.Find(regex.symbol), final);
      break;
    case Regex::Kind::kConcat: {
      int current = start;
      for (const auto &child : regex.children) {
        auto [s, f] = Build(child, symbols, nfa);
        nfa.AddEpsilon(current, s);
        current = f;
      }
      nfa.AddEpsilon(current, final);
      break;
    }
    case Regex::Kind::kUnion:
      for (const auto &child : regex.children) {
        auto [s, f] = Build(child, symbols, nfa);
        nfa.AddEpsilon(start, s);
        nfa.AddEpsilon(f, final);
      }
      break;
    case Regex::Kind::kOptional: {
      auto [s, f] = Build(regex.children.at(0), symbols, nfa);
      nfa.AddEpsilon(start, s);
      nfa.AddEpsilon(f, final);
      nfa.AddEpsilon(start, final);
      break;
    }
  }
  return {start, final};
}

}  // namespace

int Nfa::AddState() {
  states_.emplace_back();
  return NumStates() - 1;
}

int Nfa::Append(const Nfa &other) {
  const int offset = NumStates();
  for (State s : other.states_) {
    for (auto &arc : s.arcs) arc.second += offset;
    for (auto &e : s.epsilons) e += offset;
    states_.push_back(std::move(s));
  }
  return offset;
}

void Nfa::Analyze() {
  const int n = NumStates();
  std::vector<std::vector<int>> reverse(n);
  for (int s = 0; s < n; ++s) {
    for (const auto &[label, to] : states_[s].arcs) reverse[to].push_back(s);
    for (int to : states_[s].epsilons) reverse[to].push_back(s);
  }
  live_.assign(n, false);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (states_[s].final) {
      live_[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int p : reverse[s]) {
      if (!live_[p]) {
        live_[p] = true;
        stack.push_back(p);
      }
    }
  }
  universal_.assign(n, false);
  for (int s = 0; s < n; ++s) {
    if (!states_[s].final) continue;
    for (const auto &[label, to] : states_[s].arcs) {
      if (label == kAnyLabel && to == s) universal_[s] = true;
    }
  }
}

StateSet Nfa::Closure(StateSet set) const {
  std::vector<bool> seen(NumStates(), false);
  std::vector<int> stack;
  StateSet out;
  for (int s : set) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    if (live_[s]) out.push_back(s);
    for (int to : states_[s].epsilons) {
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StateSet Nfa::Step(const StateSet &set, Label label) const {
  StateSet out;
  for (int s : set) {
    for (const auto &[l, to] : states_[s].arcs) {
      if ((l == label || l == kAnyLabel) && live_[to]) out.push_back(to);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Nfa::AnyFinal(const StateSet &set) const {
  return std::any_of(set.begin(), set.end(),
                     [this](int s) { return states_[s].final; });
}

bool Nfa::AnyUniversal(const StateSet &set) const {
  return std::any_of(set.begin(), set.end(),
                     [this](int s) { return universal_[s]; });
}

Nfa RegexToNfa(const Regex &regex, const SymbolTable &symbols) {
  Nfa nfa;
  auto [start, final] = Build(regex, symbols, nfa);
  nfa.SetStart(start);
  nfa.SetFinal(final);
  return nfa;
}

Nfa FollowedByAnything(Nfa nfa) {
  const int sink = nfa.AddState();
  nfa.AddArc(sink, kAnyLabel, sink);
  for (int s = 0; s < sink; ++s) {
    if (nfa.IsFinal(s)) {
      nfa.AddEpsilon(s, sink);
      nfa.SetFinal(s, false);
    }
  }
  nfa.SetFinal(sink);
  return nfa;
}

Nfa PrecededByAnything(const Nfa &nfa) {
  Nfa out;
  const int loop = out.AddState();
  out.AddArc(loop, kAnyLabel, loop);
  const int offset = out.Append(nfa);
  out.AddEpsilon(loop, nfa.Start() + offset);
  out.SetStart(loop);
  return out;
}

std::pair<Nfa, int> ConcatNfa(const Nfa &a, const Nfa &b) {
  Nfa out;
  out.Append(a);
  out.SetStart(a.Start());
  const int offset = out.Append(b);
  for (int s = 0; s < a.NumStates(); ++s) {
    if (a.IsFinal(s)) {
      out.AddEpsilon(s, b.Start() + offset);
      out.SetFinal(s, false);
    }
  }
  return {std::move(out), offset};
}

}  // namespace oovfst::internal
