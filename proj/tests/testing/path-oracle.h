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

// Brute-force path enumeration used as an independent oracle in tests.

#ifndef OOVFST_TESTS_TESTING_PATH_ORACLE_H_
#define OOVFST_TESTS_TESTING_PATH_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oovfst/operations.h"
#include "oovfst/wfst.h"

namespace oovfst::testing {

// Every accepting path of at most `max_arcs` arcs, in DFS order. Weights are
// summed left to right along the path, final weight last.
inline std::vector<Path> EnumeratePaths(const Wfst &t, std::size_t max_arcs) {
  std::vector<Path> paths;
  if (t.Empty()) return paths;
  Path current;
  current.weight = TropicalWeight::One();
  auto dfs = [&](auto &&self, StateId s, std::size_t depth) -> void {
    if (t.IsFinal(s)) {
      Path done = current;
      done.weight = Times(current.weight, t.Final(s));
      paths.push_back(std::move(done));
    }
    if (depth == max_arcs) return;
    for (const Arc &arc : t.Arcs(s)) {
      const Path saved = current;
      if (arc.ilabel != kEpsilon) {
        current.input.push_back(t.InputSymbols()->Find(arc.ilabel));
      }
      if (arc.olabel != kEpsilon) {
        current.output.push_back(t.OutputSymbols()->Find(arc.olabel));
      }
      current.weight = Times(current.weight, arc.weight);
      self(self, arc.nextstate, depth + 1);
      current = saved;
    }
  };
  dfs(dfs, t.Start(), 0);
  return paths;
}

using StringPair =
    std::pair<std::vector<std::string>, std::vector<std::string>>;
using Relation = std::map<StringPair, double>;

// Minimum weight per (input, output) pair over paths of at most `max_arcs`
// arcs, restricted to pairs whose strings are no longer than `max_length`.
inline Relation EnumerateRelation(const Wfst &t, std::size_t max_arcs,
                                  std::size_t max_length = 1000) {
  Relation relation;
  for (const auto &p : EnumeratePaths(t, max_arcs)) {
    if (p.input.size() > max_length || p.output.size() > max_length) continue;
    auto key = std::make_pair(p.input, p.output);
    auto it = relation.find(key);
    if (it == relation.end()) {
      relation.emplace(std::move(key), p.weight.Value());
    } else {
      it->second = std::min(it->second, p.weight.Value());
    }
  }
  return relation;
}

inline bool RelationsEqual(const Relation &a, const Relation &b,
                           double tolerance = 1e-9) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (std::abs(ia->second - ib->second) > tolerance) return false;
  }
  return true;
}

// Composition by pairing every path of `a` with every path of `b` whose
// input equals the first path's output.
inline Relation BruteForceCompose(const Wfst &a, const Wfst &b,
                                  std::size_t arcs) {
  Relation result;
  const auto pa = EnumeratePaths(a, arcs);
  const auto pb = EnumeratePaths(b, arcs);
  for (const auto &x : pa) {
    for (const auto &y : pb) {
      if (x.output != y.input) continue;
      const double w = x.weight.Value() + y.weight.Value();
      auto key = std::make_pair(x.input, y.output);
      auto it = result.find(key);
      if (it == result.end()) {
        result.emplace(key, w);
      } else {
        it->second = std::min(it->second, w);
      }
    }
  }
  return result;
}

// Random acyclic machine: arcs only go from lower to higher state ids.
// Weights are multiples of 0.25 so sums are exact in binary floating point.
inline Wfst RandomAcyclic(std::mt19937_64 &rng, const SymbolTablePtr &isyms,
                          const SymbolTablePtr &osyms, int max_states,
                          double epsilon_probability = 0.2,
                          int max_arcs_per_state = 3) {
  std::uniform_int_distribution<int> nstates_dist(1, max_states);
  const int n = nstates_dist(rng);
  WfstBuilder builder(isyms, osyms);
  for (int i = 0; i < n; ++i) builder.AddState();
  builder.SetStart(0);
  std::bernoulli_distribution eps(epsilon_probability);
  std::uniform_int_distribution<int> quarter(0, 8);
  std::uniform_int_distribution<Label> ilabel(1, isyms->Size() - 1);
  std::uniform_int_distribution<Label> olabel(1, osyms->Size() - 1);
  std::uniform_int_distribution<int> narcs(0, max_arcs_per_state);
  std::bernoulli_distribution final(0.4);
  for (int s = 0; s < n; ++s) {
    if (s == n - 1 || final(rng)) {
      builder.SetFinal(s, TropicalWeight(0.25 * quarter(rng)));
    }
    if (s == n - 1) break;
    const int k = narcs(rng);
    std::uniform_int_distribution<int> target(s + 1, n - 1);
    for (int a = 0; a < k; ++a) {
      builder.AddArc(s, eps(rng) ? kEpsilon : ilabel(rng),
                     eps(rng) ? kEpsilon : olabel(rng),
                     TropicalWeight(0.25 * quarter(rng)), target(rng));
    }
  }
  return std::move(builder).Build();
}

inline SymbolTablePtr LetterTable(int size, char first = 'a') {
  SymbolTable syms;
  for (int i = 0; i < size; ++i) syms.AddSymbol(std::string(1, first + i));
  return Share(std::move(syms));
}

}  // namespace oovfst::testing

#endif  // OOVFST_TESTS_TESTING_PATH_ORACLE_H_
